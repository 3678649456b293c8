/* Iwahori-Hecke algebra arithmetic.

   Products are computed by the left-multiplication rule along the
   canonical reduced word of the left factor:

     T_s T_w = T_{sw}                        when l(sw) > l(w),
     T_s T_w = q_s T_{sw} + (q_s - 1) T_w    when l(sw) < l(w).

   Independence of the chosen reduced word is not assumed; the test suite
   verifies that the implemented product satisfies the braid and quadratic
   relations, which pins the algebra down. */

#include "buildings/hecke.hpp"

#include <algorithm>
#include <sstream>

namespace buildings::hecke {

namespace {

void require_same_system(const coxeter::CoxeterSystem& sys,
                         const HeckeElement& a) {
  if (a.sys_tag != sys.tag())
    throw SystemMismatch("the element belongs to a different Coxeter system");
}

/* Number of parameters and the class of each generator, recomputed on
   demand (rank is tiny). */
int nvars_of(const coxeter::CoxeterSystem& sys) {
  return parameter_classes(sys).count();
}

LaurentPoly q_poly(const ParameterClasses& pc, int s, int power) {
  std::vector<int> e(static_cast<std::size_t>(pc.count()), 0);
  e[static_cast<std::size_t>(pc.class_of[static_cast<std::size_t>(s)])] = power;
  return LaurentPoly::monomial(pc.count(), e, BigInt(1));
}

void add_into(HeckeElement& acc, const std::vector<int>& word,
              const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto it = acc.terms.find(word);
  if (it == acc.terms.end()) {
    acc.terms.emplace(word, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) acc.terms.erase(it);
}

/* T_s times a sum, one application of the defining relation per term. */
HeckeElement left_mul_generator(const coxeter::CoxeterSystem& sys,
                                const ParameterClasses& pc, int s,
                                const HeckeElement& x) {
  HeckeElement out;
  out.sys_tag = x.sys_tag;
  out.nvars = x.nvars;
  const auto gen = coxeter::generator_element(sys, s);
  for (const auto& [word, c] : x.terms) {
    const auto w = coxeter::element_of_word(sys, word);
    const auto sw = coxeter::multiply(sys, gen, w);
    if (!coxeter::is_left_descent(sys, w, s)) {
      add_into(out, sw.word, c);
    } else {
      add_into(out, sw.word, q_poly(pc, s, 1) * c);
      add_into(out, word, (q_poly(pc, s, 1) - LaurentPoly::constant(pc.count(), BigInt(1))) * c);
    }
  }
  return out;
}

std::string word_bracket(const std::vector<int>& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(w[i]);
  }
  return out + "]";
}

/* Monomial without its sign: coefficient magnitude (omitted when 1 unless
   constant) joined with the powered variables. */
std::string monomial_str(int nvars, const std::vector<int>& exps,
                         const BigInt& coeff) {
  const BigInt mag = coeff < 0 ? BigInt(-coeff) : coeff;
  std::vector<std::string> factors;
  for (int v = 0; v < nvars; ++v) {
    const int e = exps[static_cast<std::size_t>(v)];
    if (e == 0) continue;
    std::string name = nvars == 1 ? "q" : "q" + std::to_string(v);
    if (e != 1) name += "^" + std::to_string(e);
    factors.push_back(name);
  }
  std::ostringstream out;
  if (factors.empty()) {
    out << mag;
    return out.str();
  }
  if (mag != 1) out << mag << "*";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out << "*";
    out << factors[i];
  }
  return out.str();
}

}  // namespace

ParameterClasses parameter_classes(const coxeter::CoxeterSystem& sys) {
  const int n = sys.rank();
  const auto& cm = sys.coxeter();
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int start = 0; start < n; ++start) {
    if (cls[static_cast<std::size_t>(start)] >= 0) continue;
    // flood fill along odd bonds
    std::vector<int> stack = {start};
    cls[static_cast<std::size_t>(start)] = next;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        const int m = cm.at(i, j);
        if (i == j || m == cartan::INFINITE_BOND || m % 2 == 0) continue;
        if (cls[static_cast<std::size_t>(j)] >= 0) continue;
        cls[static_cast<std::size_t>(j)] = next;
        stack.push_back(j);
      }
    }
    ++next;
  }
  ParameterClasses pc;
  pc.class_of = cls;
  pc.classes.resize(static_cast<std::size_t>(next));
  for (int i = 0; i < n; ++i)
    pc.classes[static_cast<std::size_t>(cls[static_cast<std::size_t>(i)])].push_back(i);
  return pc;
}

LaurentPoly LaurentPoly::constant(int nvars, const BigInt& c) {
  return monomial(nvars, std::vector<int>(static_cast<std::size_t>(nvars), 0), c);
}

LaurentPoly LaurentPoly::monomial(int nvars, const std::vector<int>& exps,
                                  const BigInt& c) {
  if (static_cast<int>(exps.size()) != nvars)
    throw InputError("exponent vector length does not match the variable count");
  LaurentPoly p(nvars);
  p.add_term(exps, c);
  return p;
}

void LaurentPoly::add_term(const std::vector<int>& e, const BigInt& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

LaurentPoly poly_sum(const LaurentPoly& a, const LaurentPoly& b, int sign) {
  if (a.nvars_ != b.nvars_)
    throw InputError("Laurent polynomials over different variable sets");
  LaurentPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, sign * c);
  return out;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  return poly_sum(*this, o, 1);
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  return poly_sum(*this, o, -1);
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(nvars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (nvars_ != o.nvars_)
    throw InputError("Laurent polynomials over different variable sets");
  LaurentPoly out(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      std::vector<int> e(static_cast<std::size_t>(nvars_));
      for (int v = 0; v < nvars_; ++v)
        e[static_cast<std::size_t>(v)] =
            e1[static_cast<std::size_t>(v)] + e2[static_cast<std::size_t>(v)];
      out.add_term(e, c1 * c2);
    }
  return out;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  // descending exponent order reads like a polynomial
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const bool neg = it->second < 0;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += monomial_str(nvars_, it->first, it->second);
  }
  return out;
}

FieldScalar LaurentPoly::evaluate(const std::vector<FieldScalar>& assignment) const {
  if (static_cast<int>(assignment.size()) != nvars_)
    throw InputError("assignment length does not match the variable count");
  long long ch = assignment.empty() ? 0 : assignment.front().characteristic();
  for (const auto& v : assignment) {
    if (v.characteristic() != ch)
      throw FieldMismatch("assignment values live in different fields");
    if (v.is_zero())
      throw NonInvertibleParameter("the parameters must be invertible");
  }
  FieldScalar acc = FieldScalar::zero(ch);
  for (const auto& [e, c] : terms_) {
    FieldScalar term = FieldScalar::from_rational(ch, Rational(c));
    for (int v = 0; v < nvars_; ++v) {
      const int ev = e[static_cast<std::size_t>(v)];
      const FieldScalar base =
          ev >= 0 ? assignment[static_cast<std::size_t>(v)]
                  : assignment[static_cast<std::size_t>(v)].inverse();
      for (int k = 0; k < (ev >= 0 ? ev : -ev); ++k) term = term * base;
    }
    acc = acc + term;
  }
  return acc;
}

HeckeElement zero_element(const coxeter::CoxeterSystem& sys) {
  HeckeElement out;
  out.sys_tag = sys.tag();
  out.nvars = nvars_of(sys);
  return out;
}

HeckeElement unit_element(const coxeter::CoxeterSystem& sys) {
  return basis_element(sys, {});
}

HeckeElement basis_element(const coxeter::CoxeterSystem& sys,
                           const std::vector<int>& word) {
  HeckeElement out = zero_element(sys);
  const auto w = coxeter::element_of_word(sys, word);
  out.terms.emplace(w.word, LaurentPoly::constant(out.nvars, BigInt(1)));
  return out;
}

HeckeElement hecke_add(const coxeter::CoxeterSystem& sys, const HeckeElement& a,
                       const HeckeElement& b) {
  require_same_system(sys, a);
  require_same_system(sys, b);
  HeckeElement out = a;
  for (const auto& [w, c] : b.terms) add_into(out, w, c);
  return out;
}

HeckeElement hecke_scale(const coxeter::CoxeterSystem& sys, const LaurentPoly& c,
                         const HeckeElement& a) {
  require_same_system(sys, a);
  HeckeElement out = zero_element(sys);
  for (const auto& [w, cw] : a.terms) add_into(out, w, c * cw);
  return out;
}

HeckeElement hecke_multiply(const coxeter::CoxeterSystem& sys,
                            const HeckeElement& a, const HeckeElement& b) {
  require_same_system(sys, a);
  require_same_system(sys, b);
  const auto pc = parameter_classes(sys);
  HeckeElement out = zero_element(sys);
  for (const auto& [u, cu] : a.terms) {
    // T_u b by feeding u's letters in from the right end
    HeckeElement cur = b;
    for (auto it = u.rbegin(); it != u.rend(); ++it)
      cur = left_mul_generator(sys, pc, *it, cur);
    for (const auto& [w, cw] : cur.terms) add_into(out, w, cu * cw);
  }
  return out;
}

HeckeElement t_inverse(const coxeter::CoxeterSystem& sys, int s) {
  if (s < 0 || s >= sys.rank())
    throw IndexOutOfRange("generator index out of range");
  const auto pc = parameter_classes(sys);
  const auto qinv = q_poly(pc, s, -1);
  HeckeElement out = zero_element(sys);
  add_into(out, {s}, qinv);
  add_into(out, {}, qinv - LaurentPoly::constant(pc.count(), BigInt(1)));
  return out;
}

HeckeElement antipode(const coxeter::CoxeterSystem& sys, const HeckeElement& a) {
  require_same_system(sys, a);
  HeckeElement out = zero_element(sys);
  for (const auto& [w, c] : a.terms) {
    const auto el = coxeter::element_of_word(sys, w);
    add_into(out, coxeter::invert(sys, el).word, c);
  }
  return out;
}

HeckeElement iota_im(const coxeter::CoxeterSystem& sys, const HeckeElement& a) {
  require_same_system(sys, a);
  const auto pc = parameter_classes(sys);
  // image of each generator: (q_s - 1) T_e - T_s
  std::vector<HeckeElement> img;
  for (int s = 0; s < sys.rank(); ++s) {
    HeckeElement e = zero_element(sys);
    add_into(e, {}, q_poly(pc, s, 1) - LaurentPoly::constant(pc.count(), BigInt(1)));
    add_into(e, {s}, LaurentPoly::constant(pc.count(), BigInt(-1)));
    img.push_back(e);
  }
  HeckeElement out = zero_element(sys);
  for (const auto& [w, c] : a.terms) {
    HeckeElement prod = unit_element(sys);
    for (int s : w) prod = hecke_multiply(sys, prod, img[static_cast<std::size_t>(s)]);
    out = hecke_add(sys, out, hecke_scale(sys, c, prod));
  }
  return out;
}

HeckeElement sigma_im(const coxeter::CoxeterSystem& sys, const HeckeElement& a) {
  // anti-multiplicative extension of the same generator images
  return iota_im(sys, antipode(sys, a));
}

std::string hecke_str(const coxeter::CoxeterSystem& sys, const HeckeElement& a) {
  require_same_system(sys, a);
  if (a.terms.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : a.terms) {
    std::string body;
    int sign = 1;
    if (c.terms().size() == 1) {
      const auto& [e, coeff] = *c.terms().begin();
      sign = coeff < 0 ? -1 : 1;
      body = monomial_str(c.nvars(), e, coeff);
      // a bare 1 contributes only its sign
      if (body == "1") body.clear();
    } else {
      body = "(" + c.str() + ")";
    }
    if (!body.empty()) body += "*";
    body += "T_" + word_bracket(w);
    if (out.empty())
      out += (sign < 0 ? "-" : "") + body;
    else
      out += (sign < 0 ? " - " : " + ") + body;
  }
  return out;
}

SpecializedElement specialize(const coxeter::CoxeterSystem& sys,
                              const HeckeElement& a,
                              const std::vector<FieldScalar>& assignment) {
  require_same_system(sys, a);
  if (static_cast<int>(assignment.size()) != a.nvars)
    throw InputError("one parameter value per class is required");
  long long ch = assignment.empty() ? 0 : assignment.front().characteristic();
  for (const auto& v : assignment)
    if (v.is_zero())
      throw NonInvertibleParameter("the parameters must be invertible");
  SpecializedElement out;
  out.sys_tag = a.sys_tag;
  out.characteristic = ch;
  for (const auto& [w, c] : a.terms) {
    const FieldScalar v = c.evaluate(assignment);
    if (!v.is_zero()) out.terms.emplace(w, v);
  }
  return out;
}

SphericalHecke spherical_hecke(const fingroup::BNPairData& bn,
                               const measure::MeasureContext& ctx) {
  if (ctx.group()->tag() != bn.group->tag())
    throw ContextMismatch("the measure context is over a different group");
  if (ctx.characteristic() != 0 && bn.b.order() % ctx.characteristic() == 0)
    throw OrdinaryViolation("the characteristic divides the Borel subgroup order");
  if (ctx.k().elements() != bn.b.elements())
    throw InputError("the context must normalize on the Borel subgroup");

  SphericalHecke sph;
  sph.characteristic = ctx.characteristic();
  sph.weyl_elements = bn.weyl_elements;
  const int nw = static_cast<int>(bn.weyl_elements.size());

  for (std::size_t s = 0; s < bn.simple_lifts.size(); ++s) {
    const auto conj =
        fingroup::conjugate_subgroup(bn.b, bn.simple_lifts[s]);
    const Rational idx =
        fingroup::subgroup_index(bn.b, fingroup::intersect(bn.b, conj));
    sph.q.push_back(static_cast<long long>(idx.num()));
  }

  std::vector<std::vector<int>> cells(static_cast<std::size_t>(nw));
  for (int g = 0; g < bn.group->order(); ++g) {
    const int w = bn.cell_of_element[static_cast<std::size_t>(g)];
    if (w < 0)
      throw Error("element " + std::to_string(g) + " lies in no Bruhat cell");
    cells[static_cast<std::size_t>(w)].push_back(g);
  }
  for (int w = 0; w < nw; ++w) {
    if (cells[static_cast<std::size_t>(w)].empty())
      throw Error("the Bruhat cell of w" + std::to_string(w) + " is empty");
    sph.theta.push_back(measure::indicator(ctx, cells[static_cast<std::size_t>(w)]));
  }

  sph.constants.assign(
      static_cast<std::size_t>(nw),
      std::vector<std::vector<FieldScalar>>(
          static_cast<std::size_t>(nw),
          std::vector<FieldScalar>(static_cast<std::size_t>(nw),
                                   FieldScalar::zero(sph.characteristic))));
  for (int u = 0; u < nw; ++u)
    for (int v = 0; v < nw; ++v) {
      const auto conv = measure::convolve(ctx, sph.theta[static_cast<std::size_t>(u)],
                                          sph.theta[static_cast<std::size_t>(v)]);
      // the product must be constant on every cell: that is the closure
      // of the double-coset span
      for (int w = 0; w < nw; ++w) {
        const auto& cell = cells[static_cast<std::size_t>(w)];
        const FieldScalar c0 = conv.values[static_cast<std::size_t>(cell.front())];
        for (int g : cell)
          if (conv.values[static_cast<std::size_t>(g)] != c0)
            throw Error("Theta_" + std::to_string(u) + " * Theta_" +
                        std::to_string(v) +
                        " is not constant on the cell of w" + std::to_string(w));
        sph.constants[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]
                     [static_cast<std::size_t>(w)] = c0;
      }
    }
  return sph;
}

IsoReport iso_check(const fingroup::BNPairData& bn,
                    const measure::MeasureContext& ctx) {
  const auto sph = spherical_hecke(bn, ctx);
  const auto& sys = *bn.weyl;
  const auto pc = parameter_classes(sys);

  // one field value per class; the indices within a class must agree
  std::vector<FieldScalar> assignment;
  for (const auto& cls : pc.classes) {
    const long long q0 = sph.q[static_cast<std::size_t>(cls.front())];
    for (int s : cls)
      if (sph.q[static_cast<std::size_t>(s)] != q0)
        throw Error("conjugate generators " + std::to_string(cls.front()) +
                    " and " + std::to_string(s) + " have different indices");
    assignment.push_back(
        FieldScalar::from_rational(ctx.characteristic(), Rational(q0)));
  }

  IsoReport rep;
  rep.characteristic = ctx.characteristic();
  rep.q = sph.q;
  rep.basis_size = static_cast<int>(sph.weyl_elements.size());
  const int nw = rep.basis_size;
  for (int u = 0; u < nw; ++u)
    for (int v = 0; v < nw; ++v) {
      const auto prod = hecke_multiply(
          sys, basis_element(sys, sph.weyl_elements[static_cast<std::size_t>(u)].word),
          basis_element(sys, sph.weyl_elements[static_cast<std::size_t>(v)].word));
      const auto spec = specialize(sys, prod, assignment);
      ++rep.pairs_checked;
      for (int w = 0; w < nw; ++w) {
        const auto& word = sph.weyl_elements[static_cast<std::size_t>(w)].word;
        const auto it = spec.terms.find(word);
        const FieldScalar abstract =
            it == spec.terms.end() ? FieldScalar::zero(rep.characteristic)
                                   : it->second;
        const FieldScalar concrete =
            sph.constants[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]
                         [static_cast<std::size_t>(w)];
        if (abstract != concrete) {
          IsoMismatch mm;
          mm.u = sph.weyl_elements[static_cast<std::size_t>(u)].word;
          mm.v = sph.weyl_elements[static_cast<std::size_t>(v)].word;
          mm.w = word;
          mm.detail = "specialized coefficient " + abstract.value().str() +
                      " differs from the convolution coefficient " +
                      concrete.value().str();
          rep.mismatches.push_back(mm);
        }
      }
    }
  return rep;
}

}  // namespace buildings::hecke
