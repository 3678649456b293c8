/* Multiparameter Iwahori-Hecke algebra of a Coxeter system over integer
   Laurent polynomials (one parameter per conjugacy class of generators),
   its antipode and Iwahori-Matsumoto (anti)involutions, specialization
   into a field, and the spherical convolution algebra of a finite BN-pair
   group together with the structure-constant comparison. */

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "buildings/coxeter.hpp"
#include "buildings/errors.hpp"
#include "buildings/fingroup.hpp"
#include "buildings/measure.hpp"
#include "buildings/numeric.hpp"

namespace buildings::hecke {

/* Parameters q_s and q_t coincide exactly when s and t are conjugate in
   W: the connected components of the graph on generators whose edges are
   the odd bonds m_st. */
struct ParameterClasses {
  std::vector<int> class_of;              // generator -> class index
  std::vector<std::vector<int>> classes;  // class -> sorted generators
  int count() const { return static_cast<int>(classes.size()); }
};
ParameterClasses parameter_classes(const coxeter::CoxeterSystem& sys);

/* Integer Laurent polynomial in one variable per parameter class; keys
   are exponent vectors indexed by class, values nonzero integers. */
class LaurentPoly {
 public:
  LaurentPoly() : nvars_(0) {}
  explicit LaurentPoly(int nvars) : nvars_(nvars) {}
  static LaurentPoly constant(int nvars, const BigInt& c);
  static LaurentPoly monomial(int nvars, const std::vector<int>& exps,
                              const BigInt& c);

  int nvars() const { return nvars_; }
  const std::map<std::vector<int>, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  /* Variables print as q with one class and q0, q1, ... otherwise;
     terms in descending exponent order, e.g. "q^2 - q + 1". */
  std::string str() const;

  /* Value at q_i = assignment[i]; every assigned value must be invertible
     since exponents may be negative (NonInvertibleParameter otherwise,
     FieldMismatch on mixed characteristics). */
  FieldScalar evaluate(const std::vector<FieldScalar>& assignment) const;

 private:
  int nvars_;
  std::map<std::vector<int>, BigInt> terms_;
  void add_term(const std::vector<int>& e, const BigInt& c);
  friend LaurentPoly poly_sum(const LaurentPoly& a, const LaurentPoly& b, int sign);
};

struct WordLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    return coxeter::word_less(a, b);
  }
};

/* Finite sum of basis symbols T_w with Laurent-polynomial coefficients,
   keyed by the canonical reduced word of w. */
struct HeckeElement {
  std::uint64_t sys_tag = 0;
  int nvars = 0;
  std::map<std::vector<int>, LaurentPoly, WordLess> terms;  // no zero terms

  bool operator==(const HeckeElement& o) const {
    return sys_tag == o.sys_tag && terms == o.terms;
  }
  bool operator!=(const HeckeElement& o) const { return !(*this == o); }
};

HeckeElement zero_element(const coxeter::CoxeterSystem& sys);
HeckeElement unit_element(const coxeter::CoxeterSystem& sys);  // T_e
/* T_w for the element the word spells (the word need not be reduced). */
HeckeElement basis_element(const coxeter::CoxeterSystem& sys,
                           const std::vector<int>& word);

HeckeElement hecke_add(const coxeter::CoxeterSystem& sys, const HeckeElement& a,
                       const HeckeElement& b);
HeckeElement hecke_scale(const coxeter::CoxeterSystem& sys, const LaurentPoly& c,
                         const HeckeElement& a);
/* Bilinear product with T_s T_w = T_{sw} when the length goes up and
   q_s T_{sw} + (q_s - 1) T_w when it goes down. */
HeckeElement hecke_multiply(const coxeter::CoxeterSystem& sys,
                            const HeckeElement& a, const HeckeElement& b);

/* T_s^{-1} = q_s^{-1} T_s + (q_s^{-1} - 1) T_e. */
HeckeElement t_inverse(const coxeter::CoxeterSystem& sys, int s);

/* Anti-homomorphism fixing every T_s: T_w -> T_{w^{-1}}. */
HeckeElement antipode(const coxeter::CoxeterSystem& sys, const HeckeElement& a);
/* Homomorphism with T_s -> -q_s T_s^{-1} = (q_s - 1) T_e - T_s. */
HeckeElement iota_im(const coxeter::CoxeterSystem& sys, const HeckeElement& a);
/* Anti-homomorphism with the same images of the generators. */
HeckeElement sigma_im(const coxeter::CoxeterSystem& sys, const HeckeElement& a);

/* Terms joined by signs, coefficients in class-variable form:
   "(q - 1)*T_[0] + q*T_[]". */
std::string hecke_str(const coxeter::CoxeterSystem& sys, const HeckeElement& a);

/* Field-coefficient shadow of a HeckeElement under an evaluation of the
   parameters. */
struct SpecializedElement {
  std::uint64_t sys_tag = 0;
  long long characteristic = 0;
  std::map<std::vector<int>, FieldScalar, WordLess> terms;  // no zero terms

  bool operator==(const SpecializedElement& o) const {
    return sys_tag == o.sys_tag && characteristic == o.characteristic &&
           terms == o.terms;
  }
  bool operator!=(const SpecializedElement& o) const { return !(*this == o); }
};

/* assignment[c] is the value of the class-c parameter; all values must be
   invertible (NonInvertibleParameter). */
SpecializedElement specialize(const coxeter::CoxeterSystem& sys,
                              const HeckeElement& a,
                              const std::vector<FieldScalar>& assignment);

/* Spherical convolution algebra of a finite BN-pair group: basis Theta_w
   is the indicator of the Bruhat cell B w B, the product is convolution
   over K = B, and every product is verified to land back in the span. */
struct SphericalHecke {
  long long characteristic = 0;
  std::vector<long long> q;  // per generator: |B : B cap s B s^{-1}|
  std::vector<coxeter::WeylElement> weyl_elements;  // basis order
  std::vector<measure::GroupFunction> theta;
  /* constants[u][v][w] = coefficient of Theta_w in Theta_u * Theta_v. */
  std::vector<std::vector<std::vector<FieldScalar>>> constants;
};
SphericalHecke spherical_hecke(const fingroup::BNPairData& bn,
                               const measure::MeasureContext& ctx);

/* One disagreeing structure constant, by canonical words. */
struct IsoMismatch {
  std::vector<int> u, v, w;
  std::string detail;
};

/* Comparison of the abstract algebra at q_s = |B : B cap s B s^{-1}|
   against the convolution algebra, over every pair of basis elements. */
struct IsoReport {
  long long characteristic = 0;
  std::vector<long long> q;
  int basis_size = 0;
  int pairs_checked = 0;
  std::vector<IsoMismatch> mismatches;
  bool isomorphism() const { return mismatches.empty(); }
};
IsoReport iso_check(const fingroup::BNPairData& bn,
                    const measure::MeasureContext& ctx);

}  // namespace buildings::hecke
