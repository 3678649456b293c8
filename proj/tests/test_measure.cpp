#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "buildings/measure.hpp"

using namespace buildings;
using fingroup::BNPairData;
using fingroup::GroupPtr;
using fingroup::Subgroup;
using measure::GroupFunction;
using measure::MeasureContext;

namespace {

/* Oracle: convolution straight from the definition
   (Psi*Theta)(x) = (1/|K|) sum over all y of Psi(y) Theta(y^{-1} x),
   computed with plain rationals over the full group (no support skipping,
   different index arithmetic than the implementation). */
GroupFunction convolve_oracle(const MeasureContext& ctx, const GroupFunction& a,
                              const GroupFunction& b) {
  const fingroup::FiniteGroup& g = *ctx.group();
  GroupFunction out = measure::zero_function(ctx);
  for (int x = 0; x < g.order(); ++x) {
    Rational acc(0);
    for (int y = 0; y < g.order(); ++y)
      acc += a.values[y].value() * b.values[g.mul(g.inv(y), x)].value();
    out.values[x] =
        FieldScalar::rational(acc * Rational(1, ctx.k().order()));
  }
  return out;
}

GroupPtr s3() {
  return fingroup::group_from_permutations(3, {{1, 0, 2}, {0, 2, 1}});
}

GroupFunction random_function(const MeasureContext& ctx, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::vector<std::pair<int, FieldScalar>> supp;
  for (int x = 0; x < ctx.group()->order(); ++x)
    supp.emplace_back(x, FieldScalar::from_rational(ctx.characteristic(),
                                                    Rational(coeff(rng))));
  return measure::function_from_support(ctx, supp);
}

}  // namespace

TEST_CASE("context construction enforces the K-ordinary condition") {
  BNPairData bn = fingroup::gl_n_fq(2, 2);
  CHECK_NOTHROW(MeasureContext(bn.group, bn.b, 0));
  CHECK_NOTHROW(MeasureContext(bn.group, bn.b, 5));
  // |B| = 2
  CHECK_THROWS_AS(MeasureContext(bn.group, bn.b, 2), OrdinaryViolation);
  CHECK_THROWS_AS(MeasureContext(bn.group, bn.b, 4), InputError);
  CHECK_THROWS_AS(MeasureContext(bn.group, bn.b, -3), InputError);

  GroupPtr other = s3();
  CHECK_THROWS_AS(MeasureContext(other, bn.b, 0), ContextMismatch);
}

TEST_CASE("haar measure normalises K to 1") {
  BNPairData bn = fingroup::gl_n_fq(2, 2);
  MeasureContext ctx(bn.group, bn.b, 0);
  CHECK(measure::haar_measure(ctx, bn.b.elements()).is_one());
  // mu(G) = |G|/|K| = 6/2
  CHECK(measure::haar_measure(ctx, fingroup::full_subgroup(bn.group).elements())
            .value() == Rational(3));
  CHECK(measure::haar_measure(ctx, {}).is_zero());
  // duplicate indices count once
  CHECK(measure::haar_measure(ctx, {0, 0, 0}).value() == Rational(1, 2));
  CHECK_THROWS_AS(measure::haar_measure(ctx, {99}), IndexOutOfRange);
}

TEST_CASE("measure values have denominator dividing |K|") {
  BNPairData bn = fingroup::gl_n_fq(2, 3);
  MeasureContext ctx(bn.group, bn.b, 0);
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> pick(0, bn.group->order() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> xs;
    for (int i = 0; i < trial % 17; ++i) xs.push_back(pick(rng));
    Rational mu = measure::haar_measure(ctx, xs).value();
    CHECK(BigInt(bn.b.order()) % mu.den() == 0);
  }
}

TEST_CASE("convolution matches the definitional oracle") {
  BNPairData bn = fingroup::gl_n_fq(2, 2);
  MeasureContext ctx(bn.group, bn.b, 0);
  std::mt19937 rng(412);
  for (int trial = 0; trial < 20; ++trial) {
    GroupFunction a = random_function(ctx, rng);
    GroupFunction b = random_function(ctx, rng);
    CHECK(measure::convolve(ctx, a, b) == convolve_oracle(ctx, a, b));
  }
}

TEST_CASE("double-coset indicators convolve with q = 2 structure constants") {
  BNPairData bn = fingroup::gl_n_fq(2, 2);
  MeasureContext ctx(bn.group, bn.b, 0);
  std::vector<std::vector<int>> cells = fingroup::double_cosets(bn.b, bn.b);
  REQUIRE(cells.size() == 2);
  const bool first_has_id =
      std::find(cells[0].begin(), cells[0].end(), bn.group->identity()) !=
      cells[0].end();
  const std::vector<int>& b_cell = cells[first_has_id ? 0 : 1];
  const std::vector<int>& s_cell = cells[first_has_id ? 1 : 0];
  REQUIRE(b_cell.size() == 2);

  GroupFunction theta_e = measure::indicator(ctx, b_cell);
  GroupFunction theta_s = measure::indicator(ctx, s_cell);

  // Theta_s * Theta_s = Theta_s + 2 Theta_e, the q = 2 quadratic relation
  GroupFunction prod = measure::convolve(ctx, theta_s, theta_s);
  FieldScalar two = FieldScalar::from_rational(0, Rational(2));
  for (int x : b_cell) CHECK(prod.values[x] == two);
  for (int x : s_cell) CHECK(prod.values[x].is_one());

  // Lambda_B is a left unit on B-bi-invariant functions
  GroupFunction lam = measure::lambda_idempotent(ctx, bn.b.elements());
  CHECK(measure::convolve(ctx, lam, theta_s) == theta_s);
  CHECK(measure::convolve(ctx, lam, theta_e) == theta_e);
  CHECK(measure::convolve(ctx, theta_s, lam) == theta_s);
}

TEST_CASE("convolution is associative") {
  // exhaustive over the delta basis of GL_2(F_2)
  BNPairData bn = fingroup::gl_n_fq(2, 2);
  MeasureContext ctx(bn.group, bn.b, 0);
  std::vector<GroupFunction> deltas;
  for (int x = 0; x < bn.group->order(); ++x)
    deltas.push_back(measure::indicator(ctx, {x}));
  for (const auto& a : deltas)
    for (const auto& b : deltas)
      for (const auto& c : deltas)
        CHECK(measure::convolve(ctx, measure::convolve(ctx, a, b), c) ==
              measure::convolve(ctx, a, measure::convolve(ctx, b, c)));

  // randomized on GL_2(F_3), rational and residue coefficients
  BNPairData big = fingroup::gl_n_fq(2, 3);
  for (long long p : {0LL, 7LL}) {
    MeasureContext bctx(big.group, big.b, p);
    std::mt19937 rng(991 + p);
    for (int trial = 0; trial < 6; ++trial) {
      GroupFunction a = random_function(bctx, rng);
      GroupFunction b = random_function(bctx, rng);
      GroupFunction c = random_function(bctx, rng);
      CHECK(measure::convolve(bctx, measure::convolve(bctx, a, b), c) ==
            measure::convolve(bctx, a, measure::convolve(bctx, b, c)));
    }
  }
}

TEST_CASE("lambda idempotents square to themselves") {
  GroupPtr g = s3();
  Subgroup whole = fingroup::full_subgroup(g);
  int t01 = -1, t12 = -1;
  for (int i = 0; i < g->order(); ++i) {
    if (g->label(i) == "(1 0 2)") t01 = i;
    if (g->label(i) == "(0 2 1)") t12 = i;
  }
  REQUIRE(t01 >= 0);
  REQUIRE(t12 >= 0);
  Subgroup a3 = fingroup::subgroup_generated(g, {g->mul(t01, t12)});
  Subgroup flip(g, {g->identity(), t01});

  for (long long p : {0LL, 5LL}) {
    MeasureContext ctx(g, fingroup::trivial_subgroup(g), p);
    for (const Subgroup* u : {&a3, &flip, &whole}) {
      GroupFunction lam = measure::lambda_idempotent(ctx, u->elements());
      CHECK(measure::convolve(ctx, lam, lam) == lam);
    }
    // Lambda_K is constant 1 on K
    GroupFunction lk =
        measure::lambda_idempotent(ctx, ctx.k().elements());
    CHECK(lk.values[g->identity()].is_one());
  }

  // |U| = 3 |K| and char 3: mu(U) vanishes in F_3
  MeasureContext ctx3(g, fingroup::trivial_subgroup(g), 3);
  CHECK_THROWS_AS(measure::lambda_idempotent(ctx3, a3.elements()),
                  VanishingMeasure);
  MeasureContext ctx0(g, fingroup::trivial_subgroup(g), 0);
  CHECK_THROWS_AS(measure::lambda_idempotent(ctx0, {}), InputError);
}

TEST_CASE("antipode is an involutive anti-homomorphism") {
  BNPairData bn = fingroup::gl_n_fq(2, 3);
  MeasureContext ctx(bn.group, bn.b, 0);
  std::mt19937 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    GroupFunction a = random_function(ctx, rng);
    GroupFunction b = random_function(ctx, rng);
    CHECK(measure::antipode(ctx, measure::antipode(ctx, a)) == a);
    CHECK(measure::antipode(ctx, measure::convolve(ctx, a, b)) ==
          measure::convolve(ctx, measure::antipode(ctx, b),
                            measure::antipode(ctx, a)));
  }

  // sigma fixes Lambda_K and the double-coset indicators of involutions
  GroupFunction lam = measure::lambda_idempotent(ctx, bn.b.elements());
  CHECK(measure::antipode(ctx, lam) == lam);
  std::vector<std::vector<int>> cells = fingroup::double_cosets(bn.b, bn.b);
  for (const auto& cell : cells) {
    GroupFunction theta = measure::indicator(ctx, cell);
    CHECK(measure::antipode(ctx, theta) == theta);  // (BsB)^{-1} = BsB
  }
}

TEST_CASE("finite groups are unimodular") {
  BNPairData bn = fingroup::gl_n_fq(2, 2);
  for (int x = 0; x < bn.group->order(); ++x) {
    measure::ModularResult r = measure::modular_check(bn.b, x);
    CHECK(r.unimodular);
    CHECK(r.index_forward == r.index_backward);
    CHECK(r.delta.is_one());
  }
  // frozen: conjugating B by the reflection leaves only the diagonal
  int s = -1;
  for (int i = 0; i < bn.group->order(); ++i)
    if (bn.group->label(i) == "[[0,1],[1,0]]") s = i;
  REQUIRE(s >= 0);
  measure::ModularResult r = measure::modular_check(bn.b, s);
  CHECK(r.index_forward == Rational(2));
  CHECK(r.index_backward == Rational(2));

  measure::ModularResult whole =
      measure::modular_check(fingroup::full_subgroup(bn.group), s);
  CHECK(whole.index_forward == Rational(1));

  BNPairData big = fingroup::gl_n_fq(2, 3);
  for (int x = 0; x < big.group->order(); ++x)
    CHECK(measure::modular_check(big.b, x).unimodular);
}

TEST_CASE("mixed contexts are rejected") {
  BNPairData bn = fingroup::gl_n_fq(2, 2);
  MeasureContext ctx_b(bn.group, bn.b, 0);
  MeasureContext ctx_e(bn.group, fingroup::trivial_subgroup(bn.group), 0);
  GroupFunction f = measure::indicator(ctx_b, {0});
  CHECK_THROWS_AS(measure::convolve(ctx_e, f, f), ContextMismatch);
  CHECK_THROWS_AS(measure::antipode(ctx_e, f), ContextMismatch);
  CHECK_THROWS_AS(
      measure::function_from_support(ctx_b, {{0, FieldScalar::one(5)}}),
      FieldMismatch);
}
