/* Exact scalar arithmetic: arbitrary-precision integers, rationals, and
   runtime-tagged field elements (characteristic 0 rationals or residues mod
   a prime).  No floating point anywhere. */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "buildings/errors.hpp"

namespace buildings {

using BigInt = boost::multiprecision::cpp_int;

/* Reduced fraction with positive denominator. */
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT implicit by design
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw DivisionByZero("rational with zero denominator");
    normalize();
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return Rational(-num_, den_, tag{}); }
  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rational operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw DivisionByZero("rational division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return num_ * o.den_ < o.num_ * den_;
  }

  std::string str() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
  }

 private:
  struct tag {};
  Rational(BigInt n, BigInt d, tag) : num_(std::move(n)), den_(std::move(d)) {}
  void normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }
  BigInt num_, den_;
};

/* Element of Q (characteristic 0) or F_p (p prime), tagged at runtime.
   Characteristic-p values are kept as canonical residues in [0, p). */
class FieldScalar {
 public:
  FieldScalar() : char_(0), value_(0) {}
  static FieldScalar rational(Rational r) {
    FieldScalar s; s.char_ = 0; s.value_ = std::move(r); return s;
  }
  static FieldScalar residue(long long p, BigInt v) {
    FieldScalar s;
    s.char_ = p;
    BigInt r = v % p;
    if (r < 0) r += p;
    s.value_ = Rational(r);
    return s;
  }
  /* Image of an exact rational in the field of characteristic c.  In
     characteristic p the denominator must be prime to p. */
  static FieldScalar from_rational(long long c, const Rational& r) {
    if (c == 0) return rational(r);
    BigInt d = r.den() % c;
    if (d == 0)
      throw VanishingMeasure("denominator " + r.den().str() +
                             " not invertible mod " + std::to_string(c));
    return residue(c, r.num() * mod_inverse(d, c));
  }
  static FieldScalar zero(long long c) { return from_rational(c, Rational(0)); }
  static FieldScalar one(long long c) { return from_rational(c, Rational(1)); }

  long long characteristic() const { return char_; }
  const Rational& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_one() const { return value_ == Rational(1); }

  FieldScalar operator+(const FieldScalar& o) const {
    check(o);
    return make(char_, value_ + o.value_);
  }
  FieldScalar operator-(const FieldScalar& o) const {
    check(o);
    return make(char_, value_ - o.value_);
  }
  FieldScalar operator-() const { return make(char_, -value_); }
  FieldScalar operator*(const FieldScalar& o) const {
    check(o);
    return make(char_, value_ * o.value_);
  }
  FieldScalar operator/(const FieldScalar& o) const {
    check(o);
    return *this * o.inverse();
  }
  FieldScalar& operator+=(const FieldScalar& o) { return *this = *this + o; }
  FieldScalar& operator-=(const FieldScalar& o) { return *this = *this - o; }
  FieldScalar& operator*=(const FieldScalar& o) { return *this = *this * o; }

  FieldScalar inverse() const {
    if (value_.is_zero()) throw DivisionByZero("inverse of zero");
    if (char_ == 0) return rational(Rational(1) / value_);
    return residue(char_, mod_inverse(value_.num(), char_));
  }

  bool operator==(const FieldScalar& o) const {
    check(o);
    return value_ == o.value_;
  }
  bool operator!=(const FieldScalar& o) const { return !(*this == o); }

  std::string str() const { return value_.str(); }

 private:
  static FieldScalar make(long long c, Rational v) {
    if (c == 0) return rational(std::move(v));
    // arithmetic on canonical residues stays integral
    return residue(c, v.num());
  }
  static BigInt mod_inverse(BigInt a, long long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw DivisionByZero("inverse of zero mod " + std::to_string(p));
    // extended Euclid
    BigInt t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
      BigInt q = r / newr;
      BigInt tmp = t - q * newt; t = newt; newt = tmp;
      tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (t < 0) t += p;
    return t;
  }
  void check(const FieldScalar& o) const {
    if (char_ != o.char_)
      throw FieldMismatch("mixing characteristics " + std::to_string(char_) +
                          " and " + std::to_string(o.char_));
  }
  long long char_;
  Rational value_;
};

}  // namespace buildings
