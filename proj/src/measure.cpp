#include "buildings/measure.hpp"

#include <algorithm>

namespace buildings::measure {

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void check_element(const fingroup::FiniteGroup& g, int x) {
  if (x < 0 || x >= g.order())
    throw IndexOutOfRange("element index " + std::to_string(x));
}

std::vector<int> sorted_unique(const fingroup::FiniteGroup& g,
                               std::vector<int> xs) {
  for (int x : xs) check_element(g, x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

MeasureContext::MeasureContext(fingroup::GroupPtr group, fingroup::Subgroup k,
                               long long characteristic)
    : group_(std::move(group)), k_(std::move(k)),
      characteristic_(characteristic) {
  if (!group_) throw InputError("measure context over null group");
  if (k_.group()->tag() != group_->tag())
    throw ContextMismatch("K lives in a different group");
  if (characteristic_ != 0 && !is_prime(characteristic_))
    throw InputError("characteristic must be 0 or a prime, got " +
                     std::to_string(characteristic_));
  if (characteristic_ != 0 && k_.order() % characteristic_ == 0)
    throw OrdinaryViolation("characteristic " + std::to_string(characteristic_) +
                            " divides |K| = " + std::to_string(k_.order()));
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  };
  mix(group_->tag());
  mix(static_cast<std::uint64_t>(characteristic_));
  for (int x : k_.elements()) mix(static_cast<std::uint64_t>(x));
  tag_ = h;
}

FieldScalar haar_measure(const MeasureContext& ctx, const std::vector<int>& x) {
  std::vector<int> xs = sorted_unique(*ctx.group(), x);
  return FieldScalar::from_rational(
      ctx.characteristic(),
      Rational(static_cast<long long>(xs.size()), ctx.k().order()));
}

GroupFunction zero_function(const MeasureContext& ctx) {
  GroupFunction f;
  f.ctx_tag = ctx.tag();
  f.characteristic = ctx.characteristic();
  f.values.assign(ctx.group()->order(),
                  FieldScalar::zero(ctx.characteristic()));
  return f;
}

GroupFunction function_from_support(
    const MeasureContext& ctx,
    const std::vector<std::pair<int, FieldScalar>>& support) {
  GroupFunction f = zero_function(ctx);
  for (const auto& [x, v] : support) {
    check_element(*ctx.group(), x);
    if (v.characteristic() != ctx.characteristic())
      throw FieldMismatch("support value in the wrong field");
    f.values[x] = v;
  }
  return f;
}

GroupFunction indicator(const MeasureContext& ctx, const std::vector<int>& x) {
  GroupFunction f = zero_function(ctx);
  const FieldScalar one = FieldScalar::one(ctx.characteristic());
  for (int e : sorted_unique(*ctx.group(), x)) f.values[e] = one;
  return f;
}

std::vector<int> support(const GroupFunction& f) {
  std::vector<int> out;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (!f.values[i].is_zero()) out.push_back(static_cast<int>(i));
  return out;
}

GroupFunction convolve(const MeasureContext& ctx, const GroupFunction& psi,
                       const GroupFunction& theta) {
  if (psi.ctx_tag != ctx.tag() || theta.ctx_tag != ctx.tag())
    throw ContextMismatch("convolution of functions from another context");
  const fingroup::FiniteGroup& g = *ctx.group();
  GroupFunction out = zero_function(ctx);
  for (int y = 0; y < g.order(); ++y) {
    if (psi.values[y].is_zero()) continue;
    for (int z = 0; z < g.order(); ++z) {
      if (theta.values[z].is_zero()) continue;
      out.values[g.mul(y, z)] += psi.values[y] * theta.values[z];
    }
  }
  const FieldScalar scale = FieldScalar::from_rational(
      ctx.characteristic(), Rational(1, ctx.k().order()));
  for (FieldScalar& v : out.values) v *= scale;
  return out;
}

GroupFunction lambda_idempotent(const MeasureContext& ctx,
                                const std::vector<int>& u) {
  std::vector<int> us = sorted_unique(*ctx.group(), u);
  if (us.empty()) throw InputError("Lambda of the empty set");
  FieldScalar mu = haar_measure(ctx, us);
  if (mu.is_zero())
    throw VanishingMeasure("mu(U) = " + std::to_string(us.size()) + "/" +
                           std::to_string(ctx.k().order()) + " vanishes mod " +
                           std::to_string(ctx.characteristic()));
  GroupFunction f = zero_function(ctx);
  const FieldScalar height = mu.inverse();
  for (int x : us) f.values[x] = height;
  return f;
}

GroupFunction antipode(const MeasureContext& ctx, const GroupFunction& f) {
  if (f.ctx_tag != ctx.tag())
    throw ContextMismatch("antipode of a function from another context");
  const fingroup::FiniteGroup& g = *ctx.group();
  GroupFunction out = zero_function(ctx);
  for (int x = 0; x < g.order(); ++x) out.values[g.inv(x)] = f.values[x];
  return out;
}

ModularResult modular_check(const fingroup::Subgroup& h, int x) {
  const fingroup::FiniteGroup& g = *h.group();
  check_element(g, x);
  fingroup::Subgroup forward =
      fingroup::intersect(h, fingroup::conjugate_subgroup(h, x));
  fingroup::Subgroup backward =
      fingroup::intersect(h, fingroup::conjugate_subgroup(h, g.inv(x)));
  ModularResult r;
  r.index_forward = fingroup::subgroup_index(h, forward);
  r.index_backward = fingroup::subgroup_index(h, backward);
  r.delta = FieldScalar::rational(r.index_forward / r.index_backward);
  r.unimodular = r.delta.is_one();
  return r;
}

}  // namespace buildings::measure
