/* F-valued Haar measure on a finite group, normalised on a reference
   subgroup K (mu(K) = 1), the convolution algebra of F-valued functions,
   the idempotents Lambda_U, the antipode, and the modular-function
   criterion. */

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "buildings/errors.hpp"
#include "buildings/fingroup.hpp"
#include "buildings/numeric.hpp"

namespace buildings::measure {

/* Finite group with a normalising subgroup K and a field characteristic
   (0 = rationals, otherwise a prime).  Construction enforces the
   K-ordinary condition: the characteristic does not divide |K|, so every
   measure value |X|/|K| lands in the field. */
class MeasureContext {
 public:
  MeasureContext(fingroup::GroupPtr group, fingroup::Subgroup k,
                 long long characteristic);

  const fingroup::GroupPtr& group() const { return group_; }
  const fingroup::Subgroup& k() const { return k_; }
  long long characteristic() const { return characteristic_; }
  /* Distinguishes contexts over different groups, subgroups K, or fields;
     functions remember it so mixed-context arithmetic is rejected. */
  std::uint64_t tag() const { return tag_; }

 private:
  fingroup::GroupPtr group_;
  fingroup::Subgroup k_;
  long long characteristic_;
  std::uint64_t tag_;
};

/* mu_K(X) = |X|/|K| mapped into F.  The rational pre-image always has
   denominator dividing |K|, so the K-ordinary condition keeps it finite. */
FieldScalar haar_measure(const MeasureContext& ctx, const std::vector<int>& x);

/* F-valued function on the group, stored densely (element index -> value). */
struct GroupFunction {
  std::uint64_t ctx_tag = 0;
  long long characteristic = 0;
  std::vector<FieldScalar> values;

  bool operator==(const GroupFunction& o) const {
    return ctx_tag == o.ctx_tag && values == o.values;
  }
  bool operator!=(const GroupFunction& o) const { return !(*this == o); }
};

GroupFunction zero_function(const MeasureContext& ctx);
GroupFunction function_from_support(
    const MeasureContext& ctx,
    const std::vector<std::pair<int, FieldScalar>>& support);
/* Indicator of a set (value 1 on it, 0 elsewhere). */
GroupFunction indicator(const MeasureContext& ctx, const std::vector<int>& x);
/* Sorted support of a function. */
std::vector<int> support(const GroupFunction& f);

/* (Psi * Theta)(x) = (1/|K| in F) sum_y Psi(y) Theta(y^{-1} x). */
GroupFunction convolve(const MeasureContext& ctx, const GroupFunction& psi,
                       const GroupFunction& theta);

/* Lambda_U = (1/mu(U)) 1_U; an idempotent under convolution when U is a
   subgroup.  Throws VanishingMeasure when mu(U) = 0 in F. */
GroupFunction lambda_idempotent(const MeasureContext& ctx,
                                const std::vector<int>& u);

/* sigma(Theta)(x) = Theta(x^{-1}); involutive anti-homomorphism for
   convolution on finite groups. */
GroupFunction antipode(const MeasureContext& ctx, const GroupFunction& f);

/* Modular function at x for the compact open model subgroup H:
   Delta(x) = |H : H cap x H x^{-1}| / |H : H cap x^{-1} H x|, as an exact
   rational.  Finite groups are unimodular, so the checker expects 1. */
struct ModularResult {
  FieldScalar delta;          // characteristic 0
  Rational index_forward;     // |H : H cap x H x^{-1}|
  Rational index_backward;    // |H : H cap x^{-1} H x|
  bool unimodular;
};
ModularResult modular_check(const fingroup::Subgroup& h, int x);

}  // namespace buildings::measure
