#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "buildings/cartan.hpp"
#include "buildings/cosheaf.hpp"
#include "buildings/coxeter.hpp"
#include "buildings/davis.hpp"

using namespace buildings;
using cosheaf::EquivariantCosheaf;
using cosheaf::GModule;
using cosheaf::SubgroupSystem;

namespace {

/* Oracle: rank by Gauss-Jordan elimination with plain rationals (char 0)
   or long long residues (char p); no Bareiss, no FieldScalar. */
int rank_oracle(std::vector<std::vector<long long>> m, long long p) {
  if (m.empty() || m[0].empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  if (p == 0) {
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = Rational(m[i][j]);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
      std::size_t piv = rank;
      while (piv < rows && a[piv][col] == Rational(0)) ++piv;
      if (piv == rows) continue;
      std::swap(a[piv], a[rank]);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == rank || a[i][col] == Rational(0)) continue;
        Rational f = a[i][col] / a[rank][col];
        for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
      }
      ++rank;
    }
    return static_cast<int>(rank);
  }
  auto norm = [p](long long v) { return ((v % p) + p) % p; };
  for (auto& row : m)
    for (auto& v : row) v = norm(v);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    long long inv = 1;
    while (norm(m[rank][col] * inv) != 1) ++inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][col] == 0) continue;
      long long f = norm(m[i][col] * inv);
      for (std::size_t j = col; j < cols; ++j)
        m[i][j] = norm(m[i][j] - f * m[rank][j]);
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

/* Oracle: left-multiplication permutation matrix of g straight off the
   group table, as plain integers. */
std::vector<std::vector<long long>> left_mult_matrix_oracle(
    const fingroup::FiniteGroup& grp, int g) {
  const std::size_t n = static_cast<std::size_t>(grp.order());
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (int h = 0; h < grp.order(); ++h)
    m[static_cast<std::size_t>(grp.mul(g, h))][static_cast<std::size_t>(h)] = 1;
  return m;
}

/* Oracle: dimension of the joint fixed space of a list of integer
   matrices, iterating over every listed element (no generator shortcut):
   d minus the rank of the stacked differences. */
int fixed_dim_oracle(const std::vector<std::vector<std::vector<long long>>>& mats,
                     long long p) {
  if (mats.empty()) return 0;
  const std::size_t d = mats.front().size();
  std::vector<std::vector<long long>> stacked;
  for (const auto& m : mats)
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<long long> row(d, 0);
      for (std::size_t j = 0; j < d; ++j) row[j] = m[i][j] - (i == j ? 1 : 0);
      stacked.push_back(std::move(row));
    }
  return static_cast<int>(d) - rank_oracle(stacked, p);
}

/* Oracle: convolution values over the trivial reference subgroup by the
   plain double loop sum psi(y) theta(y^-1 x), in exact rationals. */
std::vector<Rational> convolve_oracle(const fingroup::FiniteGroup& grp,
                                      const std::vector<Rational>& psi,
                                      const std::vector<Rational>& theta) {
  std::vector<Rational> out(psi.size(), Rational(0));
  for (int x = 0; x < grp.order(); ++x)
    for (int y = 0; y < grp.order(); ++y)
      out[static_cast<std::size_t>(x)] +=
          psi[static_cast<std::size_t>(y)] *
          theta[static_cast<std::size_t>(grp.mul(grp.inv(y), x))];
  return out;
}

/* Oracle: product set by the plain double loop. */
std::vector<int> product_set_oracle(const fingroup::FiniteGroup& grp,
                                    const std::vector<int>& a,
                                    const std::vector<int>& b) {
  std::vector<int> out;
  for (int x : a)
    for (int y : b) out.push_back(grp.mul(x, y));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

fingroup::GroupPtr s3() {
  return fingroup::group_from_permutations(3, {{1, 0, 2}, {0, 2, 1}});
}

/* Element indices of the standard pieces of s3(): the two generating
   transpositions, one three-cycle, and the third transposition. */
struct S3Elems {
  int t0, t1, c, t2;
};
S3Elems s3_elems(const fingroup::GroupPtr& g) {
  S3Elems e{};
  e.t0 = g->generators()[0];
  e.t1 = g->generators()[1];
  e.c = g->mul(e.t0, e.t1);
  e.t2 = g->mul(e.c, e.t0);
  return e;
}

/* Star tree: center 0, leaves 1..3; leaf 1+p carries point p of the
   permutation action, edges keep the center first so R = id. */
simplicial::SimplicialSet star_tree() {
  return simplicial::SimplicialSet::from_ordered_complex(
      {{{0}, {1}, {2}, {3}}, {{0, 1}, {0, 2}, {0, 3}}});
}

simplicial::CrossedAction star_action(const simplicial::SimplicialSet& star,
                                      const fingroup::GroupPtr& g) {
  std::vector<std::vector<std::vector<int>>> gen_on = {
      {{0, 2, 1, 3}, {1, 0, 2}}, {{0, 1, 3, 2}, {0, 2, 1}}};
  std::vector<std::vector<std::vector<std::vector<int>>>> gen_r(2);
  for (int k = 0; k < 2; ++k) {
    gen_r[static_cast<std::size_t>(k)].resize(2);
    gen_r[static_cast<std::size_t>(k)][0].assign(4, {0});
    gen_r[static_cast<std::size_t>(k)][1].assign(3, {0, 1});
  }
  return simplicial::action_from_generators(star, g, gen_on, gen_r);
}

/* Hexagonal circuit on the six elements with edges {h, h t} for both
   generating transpositions t, acted on by left multiplication. */
struct Hexagon {
  simplicial::SimplicialSet x;
  simplicial::CrossedAction act;
};
Hexagon hexagon(const fingroup::GroupPtr& g) {
  const auto e = s3_elems(g);
  std::vector<std::vector<int>> edges;
  for (int h = 0; h < 6; ++h)
    for (int t : {e.t0, e.t1}) {
      int a = h, b = g->mul(h, t);
      if (a > b) std::swap(a, b);
      edges.push_back({a, b});
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  auto x = simplicial::SimplicialSet::from_ordered_complex(
      {{{0}, {1}, {2}, {3}, {4}, {5}}, edges});
  std::vector<std::vector<std::vector<int>>> gen_on(2);
  std::vector<std::vector<std::vector<std::vector<int>>>> gen_r(2);
  for (int k = 0; k < 2; ++k) {
    const int s = g->generators()[static_cast<std::size_t>(k)];
    std::vector<int> von(6), eon(edges.size());
    std::vector<std::vector<int>> vr(6, std::vector<int>{0}), er(edges.size());
    for (int v = 0; v < 6; ++v) von[static_cast<std::size_t>(v)] = g->mul(s, v);
    for (std::size_t ed = 0; ed < edges.size(); ++ed) {
      int a = g->mul(s, edges[ed][0]), b = g->mul(s, edges[ed][1]);
      const bool flip = a > b;
      if (flip) std::swap(a, b);
      const auto it =
          std::find(edges.begin(), edges.end(), std::vector<int>{a, b});
      eon[ed] = static_cast<int>(it - edges.begin());
      er[ed] = flip ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
    }
    gen_on[static_cast<std::size_t>(k)] = {von, eon};
    gen_r[static_cast<std::size_t>(k)] = {vr, er};
  }
  return {x, simplicial::action_from_generators(x, g, gen_on, gen_r)};
}

/* One vertex, one loop, one triangle with faces (a, s0 v, a): a closed
   surface whose top boundary is twice the loop. */
simplicial::SimplicialSet projective_plane() {
  simplicial::SimplexRef vref{0, 0, {0}};
  simplicial::SimplexRef degedge{0, 0, {0, 0}};
  simplicial::SimplexRef aref{1, 0, {0, 1}};
  return simplicial::SimplicialSet({1, 1, 1},
                                   {{}, {{vref, vref}}, {{aref, degedge, aref}}});
}

GModule sign_module(const fingroup::GroupPtr& g) {
  const FMat minus(1, 1, -FieldScalar::one(0));
  return GModule(g, 0, {minus, minus});
}

/* Vertex subgroups of the leaf-transposition star system: alternating
   subgroup at the center, the point stabilizer transposition at each
   leaf. */
std::vector<fingroup::Subgroup> transposition_vertex_groups(
    const fingroup::GroupPtr& g) {
  const auto e = s3_elems(g);
  return {fingroup::subgroup_generated(g, {e.c}),
          fingroup::subgroup_generated(g, {e.t1}),
          fingroup::subgroup_generated(g, {e.t2}),
          fingroup::subgroup_generated(g, {e.t0})};
}

}  // namespace

TEST_CASE("modules extend generator matrices along the table and reject non-homomorphisms") {
  auto g = s3();
  const auto e = s3_elems(g);

  const GModule reg = cosheaf::regular_module(g, 0);
  CHECK(reg.dimension() == 6);
  // oracle: every element matrix is the left-multiplication permutation
  for (int x = 0; x < 6; ++x) {
    const auto want = left_mult_matrix_oracle(*g, x);
    const FMat& got = reg.matrix(x);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        CHECK(got.at(i, j).value() == Rational(want[i][j]));
  }

  const GModule triv = cosheaf::trivial_module(g, 0);
  CHECK(triv.dimension() == 1);
  for (int x = 0; x < 6; ++x) CHECK(triv.matrix(x).at(0, 0).is_one());

  const GModule sgn = sign_module(g);
  CHECK(sgn.matrix(e.c).at(0, 0).is_one());
  CHECK(sgn.matrix(e.t2).at(0, 0).value() == Rational(-1));
  CHECK(sgn.matrix(g->identity()).at(0, 0).is_one());

  const GModule ts = cosheaf::direct_sum(triv, sgn);
  CHECK(ts.dimension() == 2);
  CHECK(ts.matrix(e.t0).at(0, 0).is_one());
  CHECK(ts.matrix(e.t0).at(1, 1).value() == Rational(-1));
  CHECK(ts.matrix(e.t0).at(0, 1).is_zero());

  // the two generators are conjugate, so sending one to 1 and the other
  // to -1 contradicts the table
  const FMat plus(1, 1, FieldScalar::one(0));
  const FMat minus(1, 1, -FieldScalar::one(0));
  CHECK_THROWS_AS(GModule(g, 0, {plus, minus}), NotAModule);
  CHECK_THROWS_AS(GModule(g, 0, {plus}), NotAModule);
  CHECK_THROWS_AS(GModule(g, 0, {plus, FMat(2, 1, FieldScalar::zero(0))}),
                  NotAModule);
  CHECK_THROWS_AS(GModule(g, 4, {plus, plus}), InputError);
  CHECK_THROWS_AS(cosheaf::direct_sum(triv, cosheaf::trivial_module(g, 2)),
                  FieldMismatch);
  CHECK_THROWS_AS(reg.matrix(6), IndexOutOfRange);
}

TEST_CASE("subgroup systems check equivariance and record variance flags") {
  auto g = s3();
  const auto e = s3_elems(g);
  const auto star = star_tree();
  const auto act = star_action(star, g);
  REQUIRE(simplicial::check_crossed(star, act).violations.empty());

  const auto a3 = fingroup::subgroup_generated(g, {e.c});
  const auto one = fingroup::trivial_subgroup(g);

  const auto constant = cosheaf::make_system(
      star, act, {{a3, a3, a3, a3}, {a3, a3, a3}});
  CHECK(constant.contravariant);
  CHECK(constant.covariant);
  CHECK_FALSE(constant.exquisite);

  // subgroups grow toward faces: covariant only
  const auto growing = cosheaf::make_system(
      star, act, {{a3, a3, a3, a3}, {one, one, one}});
  CHECK_FALSE(growing.contravariant);
  CHECK(growing.covariant);

  // subgroups shrink toward faces: contravariant only
  const auto shrinking = cosheaf::make_system(
      star, act, {{one, one, one, one}, {a3, a3, a3}});
  CHECK(shrinking.contravariant);
  CHECK_FALSE(shrinking.covariant);

  CHECK_THROWS_AS(
      cosheaf::make_system(star, act, {{a3, a3, a3, a3}, {a3, a3, one}}),
      NotEquivariant);
  CHECK_THROWS_AS(cosheaf::make_system(star, act, {{a3, a3, a3, a3}}),
                  InputError);
}

TEST_CASE("vertex products extend to systems exactly when edge products commute") {
  auto g = s3();
  const auto e = s3_elems(g);
  const auto star = star_tree();
  const auto act = star_action(star, g);
  const auto a3 = fingroup::subgroup_generated(g, {e.c});
  const auto one = fingroup::trivial_subgroup(g);

  const auto trivial_sys = cosheaf::build_exquisite(star, act, {one, one, one, one});
  CHECK(trivial_sys.exquisite);
  for (int n = 0; n <= 1; ++n)
    for (const auto& h : trivial_sys.groups[static_cast<std::size_t>(n)])
      CHECK(h.order() == 1);

  const auto const_a3 = cosheaf::constant_system(star, act, a3);
  CHECK(const_a3.exquisite);
  CHECK(const_a3.contravariant);
  for (const auto& h : const_a3.groups[1]) CHECK(h.elements() == a3.elements());

  const auto tr = cosheaf::build_exquisite(star, act, transposition_vertex_groups(g));
  CHECK(tr.exquisite);
  for (const auto& h : tr.groups[1]) CHECK(h.order() == 6);
  // oracle: the alternating subgroup times a transposition subgroup fills
  // the whole group, in either order
  const auto t1g = fingroup::subgroup_generated(g, {e.t1});
  const auto o1 = product_set_oracle(*g, a3.elements(), t1g.elements());
  const auto o2 = product_set_oracle(*g, t1g.elements(), a3.elements());
  CHECK(o1.size() == 6);
  CHECK(o1 == o2);
  CHECK(o1 == fingroup::product_set(a3, t1g));

  // non-equivariant vertex assignment: same transposition at every leaf
  const auto t0g = fingroup::subgroup_generated(g, {e.t0});
  CHECK_THROWS_AS(cosheaf::build_exquisite(star, act, {a3, t0g, t0g, t0g}),
                  NotEquivariant);

  // conjugated transpositions around the circuit: two distinct
  // transposition subgroups meet along an edge and their product is a
  // 4-element non-group
  const auto hex = hexagon(g);
  REQUIRE(simplicial::check_crossed(hex.x, hex.act).violations.empty());
  std::vector<fingroup::Subgroup> vsub;
  for (int v = 0; v < 6; ++v)
    vsub.push_back(fingroup::conjugate_subgroup(t0g, v));
  CHECK_THROWS_AS(cosheaf::build_exquisite(hex.x, hex.act, vsub),
                  ProductNotSubgroup);
  const auto bad = product_set_oracle(*g, t0g.elements(),
                                      fingroup::subgroup_generated(g, {e.t1})
                                          .elements());
  CHECK(bad.size() == 4);
  CHECK_FALSE(fingroup::set_is_subgroup(*g, bad));
}

TEST_CASE("geodesic containment reports the vertices escaping end products") {
  auto g = s3();
  const auto e = s3_elems(g);
  const auto star = star_tree();
  const auto act = star_action(star, g);
  const auto a3 = fingroup::subgroup_generated(g, {e.c});

  const auto const_a3 = cosheaf::constant_system(star, act, a3);
  const auto ok = cosheaf::check_geodesic(star, const_a3);
  CHECK(ok.pairs_checked == 12);
  CHECK(ok.geodesic());
  CHECK(ok.note.find("barycenters") != std::string::npos);

  const auto tr = cosheaf::build_exquisite(star, act, transposition_vertex_groups(g));
  const auto rep = cosheaf::check_geodesic(star, tr);
  CHECK(rep.pairs_checked == 12);
  REQUIRE(rep.violations.size() == 6);
  for (const auto& v : rep.violations) {
    CHECK(v.via == 0);  // the center sits on every leaf-to-leaf path
    CHECK(v.from != 0);
    CHECK(v.to != 0);
    CHECK(v.witness.find("1 elements outside the 4-element product") !=
          std::string::npos);
  }
  // oracle: the product of two distinct transposition subgroups misses
  // exactly one alternating element
  const auto prod = product_set_oracle(
      *g, fingroup::subgroup_generated(g, {e.t1}).elements(),
      fingroup::subgroup_generated(g, {e.t2}).elements());
  int outside = 0;
  for (int x : a3.elements())
    if (!std::binary_search(prod.begin(), prod.end(), x)) ++outside;
  CHECK(outside == 1);

  // a single edge is vacuously geodesic: both end subgroups sit inside
  // their own product
  auto c2 = fingroup::group_from_permutations(2, {{1, 0}});
  auto edge = simplicial::SimplicialSet::from_ordered_complex(
      {{{0}, {1}}, {{0, 1}}});
  auto eact = simplicial::trivial_action(edge, c2);
  const auto esys = cosheaf::make_system(
      edge, eact,
      {{fingroup::full_subgroup(c2), fingroup::trivial_subgroup(c2)},
       {fingroup::full_subgroup(c2)}});
  const auto erep = cosheaf::check_geodesic(edge, esys);
  CHECK(erep.pairs_checked == 2);
  CHECK(erep.geodesic());

  const auto hex = hexagon(g);
  const auto hsys = cosheaf::constant_system(hex.x, hex.act, a3);
  CHECK_THROWS_AS(cosheaf::check_geodesic(hex.x, hsys), NotATree);
  auto two_points = simplicial::SimplicialSet({2}, {{}});
  const auto psys = cosheaf::constant_system(
      two_points, simplicial::trivial_action(two_points, g), a3);
  CHECK_THROWS_AS(cosheaf::check_geodesic(two_points, psys), NotATree);
}

TEST_CASE("the constant cosheaf has identity corestrictions and module g-maps") {
  auto g = s3();
  const auto star = star_tree();
  const auto act = star_action(star, g);

  const GModule triv = cosheaf::trivial_module(g, 0);
  const auto c1 = cosheaf::trivial_cosheaf(star, act, triv);
  for (int n = 0; n <= 1; ++n)
    for (int id = 0; id < star.count(n); ++id)
      CHECK(c1.stalk_dims[static_cast<std::size_t>(n)]
                         [static_cast<std::size_t>(id)] == 1);
  CHECK(cosheaf::check_axioms(star, act, c1).ok());

  const GModule reg = cosheaf::regular_module(g, 0);
  const auto c6 = cosheaf::trivial_cosheaf(star, act, reg);
  CHECK(cosheaf::check_axioms(star, act, c6).ok());
  const auto cc = cosheaf::cosheaf_chain_complex(star, act, c6, 0);
  CHECK(cc.complex.dims[0] == 4 * 6);
  CHECK(cc.complex.dims[1] == 3 * 6);

  // the full flag complex of the six-element symmetric group poset has
  // thirteen vertices; the constant cosheaf scales them by dim V
  const auto poset = davis::davis_poset_coxeter(
      coxeter::CoxeterSystem(cartan::GeneralizedCartanMatrix({{2, -1}, {-1, 2}})),
      std::nullopt);
  const auto oc = davis::order_complex(poset);
  REQUIRE(oc.x.count(0) == 13);
  const GModule wtriv = cosheaf::trivial_module(poset.group, 0);
  const auto wc = cosheaf::trivial_cosheaf(oc.x, oc.act, wtriv);
  CHECK(cosheaf::check_axioms(oc.x, oc.act, wc).ok());
  const auto wcc = cosheaf::cosheaf_chain_complex(oc.x, oc.act, wc, 0);
  CHECK(wcc.complex.dims[0] == 13);
  const GModule wreg = cosheaf::regular_module(poset.group, 0);
  const auto wc6 = cosheaf::trivial_cosheaf(oc.x, oc.act, wreg);
  const auto wcc6 = cosheaf::cosheaf_chain_complex(oc.x, oc.act, wc6, 0);
  CHECK(wcc6.complex.dims[0] == 13 * 6);
}

TEST_CASE("axiom checking flags tampered maps and matches exhaustive verification") {
  auto g = s3();
  const auto star = star_tree();
  const auto act = star_action(star, g);
  const GModule reg = cosheaf::regular_module(g, 0);
  const auto sys = cosheaf::build_exquisite(star, act, transposition_vertex_groups(g));
  const auto inv = cosheaf::invariants_cosheaf(star, act, reg, sys);
  const EquivariantCosheaf& c = inv.cosheaf;
  REQUIRE(cosheaf::check_axioms(star, act, c).ok());

  // exhaustive group law over every pair of elements, not just
  // (element, generator): validates the generator reduction
  for (int n = 0; n <= 1; ++n)
    for (int id = 0; id < star.count(n); ++id)
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
          const auto nn = static_cast<std::size_t>(n);
          const auto ii = static_cast<std::size_t>(id);
          const int bx = act.on[nn][static_cast<std::size_t>(b)][ii];
          CHECK(fmat_mul(c.gmaps[nn][static_cast<std::size_t>(a)]
                                 [static_cast<std::size_t>(bx)],
                         c.gmaps[nn][static_cast<std::size_t>(b)][ii]) ==
                c.gmaps[nn][static_cast<std::size_t>(g->mul(a, b))][ii]);
        }
  // exhaustive compatibility square over every element
  for (int id = 0; id < star.count(1); ++id)
    for (int a = 0; a < 6; ++a)
      for (int i = 0; i <= 1; ++i) {
        const auto ii = static_cast<std::size_t>(id);
        const auto aa = static_cast<std::size_t>(a);
        const int ax = act.on[1][aa][ii];
        const int ri = act.r[1][aa][ii][static_cast<std::size_t>(i)];
        const auto& fr = star.stored_face(1, id, i);
        CHECK(fmat_mul(c.face_maps[1][static_cast<std::size_t>(ax)]
                                  [static_cast<std::size_t>(ri)],
                       c.gmaps[1][aa][ii]) ==
              fmat_mul(c.gmaps[0][aa][static_cast<std::size_t>(fr.core_id)],
                       c.face_maps[1][ii][static_cast<std::size_t>(i)]));
      }

  EquivariantCosheaf bad = c;
  bad.gmaps[0][static_cast<std::size_t>(g->identity())][1] =
      FMat(3, 3, FieldScalar::one(0));
  const auto rep1 = cosheaf::check_axioms(star, act, bad);
  REQUIRE_FALSE(rep1.ok());
  bool saw_identity = false;
  for (const auto& v : rep1.violations)
    if (v.condition == "identity") saw_identity = true;
  CHECK(saw_identity);

  EquivariantCosheaf bad2 = c;
  bad2.face_maps[1][0][0] = FMat(3, 1, FieldScalar::zero(0));
  const auto rep2 = cosheaf::check_axioms(star, act, bad2);
  REQUIRE_FALSE(rep2.ok());
  bool saw_square = false;
  for (const auto& v : rep2.violations)
    if (v.condition == "square") saw_square = true;
  CHECK(saw_square);
  CHECK_THROWS_AS(cosheaf::cosheaf_chain_complex(star, act, bad2, 0),
                  AxiomViolation);

  EquivariantCosheaf bad3 = c;
  bad3.stalk_dims[0].pop_back();
  const auto rep3 = cosheaf::check_axioms(star, act, bad3);
  REQUIRE(rep3.violations.size() == 1);
  CHECK(rep3.violations.front().condition == "shape");
}

TEST_CASE("invariant stalks match brute-force fixed spaces") {
  auto g = s3();
  const auto e = s3_elems(g);
  const auto star = star_tree();
  const auto act = star_action(star, g);
  const GModule reg = cosheaf::regular_module(g, 0);
  const auto a3 = fingroup::subgroup_generated(g, {e.c});

  // trivial system: the invariants cosheaf is the constant cosheaf on
  // the nose, matrices included
  const auto one_sys = cosheaf::constant_system(
      star, act, fingroup::trivial_subgroup(g));
  const auto inv_one = cosheaf::invariants_cosheaf(star, act, reg, one_sys);
  const auto plain = cosheaf::trivial_cosheaf(star, act, reg);
  CHECK(inv_one.cosheaf.stalk_dims == plain.stalk_dims);
  CHECK(inv_one.cosheaf.face_maps == plain.face_maps);
  CHECK(inv_one.cosheaf.gmaps == plain.gmaps);

  // oracle for dim V^H over every subgroup appearing in the
  // transposition-leaf system, iterating over all subgroup elements
  const auto sys = cosheaf::build_exquisite(star, act, transposition_vertex_groups(g));
  const auto inv = cosheaf::invariants_cosheaf(star, act, reg, sys);
  for (int n = 0; n <= 1; ++n)
    for (int id = 0; id < star.count(n); ++id) {
      std::vector<std::vector<std::vector<long long>>> mats;
      for (int h : sys.groups[static_cast<std::size_t>(n)]
                             [static_cast<std::size_t>(id)]
                                 .elements())
        mats.push_back(left_mult_matrix_oracle(*g, h));
      CHECK(inv.cosheaf.stalk_dims[static_cast<std::size_t>(n)]
                                  [static_cast<std::size_t>(id)] ==
            fixed_dim_oracle(mats, 0));
    }
  CHECK(inv.cosheaf.stalk_dims[0] == std::vector<int>{2, 3, 3, 3});
  CHECK(inv.cosheaf.stalk_dims[1] == std::vector<int>{1, 1, 1});

  // every stalk basis is pointwise fixed and the face maps realize the
  // subspace inclusions: B_face face_map = B_x
  for (int id = 0; id < star.count(1); ++id)
    for (int i = 0; i <= 1; ++i) {
      const auto& fr = star.stored_face(1, id, i);
      CHECK(fmat_mul(inv.stalk_bases[0][static_cast<std::size_t>(fr.core_id)],
                     inv.cosheaf.face_maps[1][static_cast<std::size_t>(id)]
                                          [static_cast<std::size_t>(i)]) ==
            inv.stalk_bases[1][static_cast<std::size_t>(id)]);
    }

  const auto const_a3 = cosheaf::constant_system(star, act, a3);
  const auto inv_a3 = cosheaf::invariants_cosheaf(star, act, reg, const_a3);
  for (int n = 0; n <= 1; ++n)
    for (int d : inv_a3.cosheaf.stalk_dims[static_cast<std::size_t>(n)])
      CHECK(d == 2);

  const GModule triv = cosheaf::trivial_module(g, 0);
  const auto inv_triv = cosheaf::invariants_cosheaf(star, act, triv, const_a3);
  for (int n = 0; n <= 1; ++n)
    for (int d : inv_triv.cosheaf.stalk_dims[static_cast<std::size_t>(n)])
      CHECK(d == 1);

  // variance gates
  const auto growing = cosheaf::make_system(
      star, act, {{a3, a3, a3, a3},
                  {fingroup::trivial_subgroup(g), fingroup::trivial_subgroup(g),
                   fingroup::trivial_subgroup(g)}});
  CHECK_THROWS_AS(cosheaf::invariants_cosheaf(star, act, reg, growing),
                  VarianceMismatch);
  const auto shrinking = cosheaf::make_system(
      star, act, {{fingroup::trivial_subgroup(g), fingroup::trivial_subgroup(g),
                   fingroup::trivial_subgroup(g), fingroup::trivial_subgroup(g)},
                  {a3, a3, a3}});
  CHECK_THROWS_AS(cosheaf::coinvariants_cosheaf(star, act, reg, shrinking),
                  VarianceMismatch);
}

TEST_CASE("coinvariant stalks have the complementary construction") {
  auto g = s3();
  const auto e = s3_elems(g);
  const auto star = star_tree();
  const auto act = star_action(star, g);
  const GModule reg = cosheaf::regular_module(g, 0);
  const auto a3 = fingroup::subgroup_generated(g, {e.c});
  const auto one = fingroup::trivial_subgroup(g);

  const auto growing = cosheaf::make_system(star, act,
                                            {{a3, a3, a3, a3}, {one, one, one}});
  const auto coin = cosheaf::coinvariants_cosheaf(star, act, reg, growing);
  CHECK(cosheaf::check_axioms(star, act, coin.cosheaf).ok());
  CHECK(coin.cosheaf.stalk_dims[0] == std::vector<int>{2, 2, 2, 2});
  CHECK(coin.cosheaf.stalk_dims[1] == std::vector<int>{6, 6, 6});

  // oracle: dim of coinvariants = d - rank of the stacked columns of
  // (pi(h) - 1) over all subgroup elements
  {
    std::vector<std::vector<long long>> cols;
    const std::size_t d = 6;
    cols.assign(d, {});
    std::vector<std::vector<long long>> stacked;
    for (int h : a3.elements()) {
      const auto m = left_mult_matrix_oracle(*g, h);
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<long long> col(d, 0);
        for (std::size_t i = 0; i < d; ++i)
          col[i] = m[i][j] - (i == j ? 1 : 0);
        stacked.push_back(std::move(col));
      }
    }
    CHECK(6 - rank_oracle(stacked, 0) == 2);
  }

  // each quotient map kills its subgroup's displacement subspace and has
  // full row rank
  for (int n = 0; n <= 1; ++n)
    for (int id = 0; id < star.count(n); ++id) {
      const auto nn = static_cast<std::size_t>(n);
      const auto ii = static_cast<std::size_t>(id);
      const FMat& q = coin.quotient_maps[nn][ii];
      CHECK(static_cast<int>(rank(q, 0)) ==
            coin.cosheaf.stalk_dims[nn][ii]);
      for (int h : growing.groups[nn][ii].elements()) {
        const FMat diff = fmat_mul(q, reg.matrix(h));
        CHECK(diff == q);
      }
    }

  const auto ccc = cosheaf::cosheaf_chain_complex(star, act, coin.cosheaf, 0);
  CHECK(ccc.complex.dims[0] == 8);
  CHECK(ccc.complex.dims[1] == 18);
}

TEST_CASE("chain complexes square to zero and carry the signed group action") {
  auto g = s3();
  const auto e = s3_elems(g);
  const auto star = star_tree();
  const auto act = star_action(star, g);
  const GModule reg = cosheaf::regular_module(g, 0);
  const auto a3 = fingroup::subgroup_generated(g, {e.c});

  const auto const_a3 = cosheaf::constant_system(star, act, a3);
  const auto inv = cosheaf::invariants_cosheaf(star, act, reg, const_a3);
  const auto cc = cosheaf::cosheaf_chain_complex(star, act, inv.cosheaf, 0);
  CHECK(cc.complex.dims == std::vector<int>{8, 6});
  CHECK(simplicial::homology(cc.complex) == std::vector<int>{2, 0});

  // the action matrices form a representation and commute with the
  // boundary, over every element
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b)
      for (int k = 0; k <= 1; ++k)
        CHECK(fmat_mul(cc.action[static_cast<std::size_t>(a)]
                                [static_cast<std::size_t>(k)],
                       cc.action[static_cast<std::size_t>(b)]
                                [static_cast<std::size_t>(k)]) ==
              cc.action[static_cast<std::size_t>(g->mul(a, b))]
                       [static_cast<std::size_t>(k)]);
    CHECK(fmat_mul(cc.action[static_cast<std::size_t>(a)][0],
                   cc.complex.boundaries[1]) ==
          fmat_mul(cc.complex.boundaries[1],
                   cc.action[static_cast<std::size_t>(a)][1]));
  }

  // orbit dimension formula spelled out for the transposition system:
  // vertices 1*2 + 3*3 = 11, edges 3*1 = 3
  const auto tr = cosheaf::build_exquisite(star, act, transposition_vertex_groups(g));
  const auto inv_tr = cosheaf::invariants_cosheaf(star, act, reg, tr);
  const auto cc_tr = cosheaf::cosheaf_chain_complex(star, act, inv_tr.cosheaf, 0);
  CHECK(cc_tr.complex.dims == std::vector<int>{11, 3});
  CHECK(6 / fingroup::subgroup_generated(g, {e.t1}).order() * 3 + 2 == 11);

  CHECK_THROWS_AS(cosheaf::cosheaf_chain_complex(star, act, inv.cosheaf, 2),
                  FieldMismatch);

  // circuit: constant alternating system over the regular module gives
  // the circle with a two-dimensional fiber
  const auto hex = hexagon(g);
  const auto hsys = cosheaf::constant_system(hex.x, hex.act, a3);
  const auto hinv = cosheaf::invariants_cosheaf(hex.x, hex.act, reg, hsys);
  const auto hcc = cosheaf::cosheaf_chain_complex(hex.x, hex.act, hinv.cosheaf, 0);
  CHECK(simplicial::homology(hcc.complex) == std::vector<int>{2, 2});

  // one-vertex projective plane: top boundary is multiplication by two,
  // so homology depends on the characteristic
  const auto rp2 = projective_plane();
  const auto tact = simplicial::trivial_action(rp2, g);
  const auto t0 = cosheaf::trivial_cosheaf(rp2, tact, reg);
  const auto s0 = cosheaf::cosheaf_chain_complex(rp2, tact, t0, 0);
  CHECK(s0.complex.dims == std::vector<int>{6, 6, 6});
  CHECK(simplicial::homology(s0.complex) == std::vector<int>{6, 0, 0});
  const GModule reg2 = cosheaf::regular_module(g, 2);
  const auto t2 = cosheaf::trivial_cosheaf(rp2, tact, reg2);
  const auto s2 = cosheaf::cosheaf_chain_complex(rp2, tact, t2, 2);
  CHECK(simplicial::homology(s2.complex) == std::vector<int>{6, 6, 6});
  // invariants of the full-group constant system on the same space
  const auto fsys = cosheaf::constant_system(rp2, tact, fingroup::full_subgroup(g));
  const auto finv = cosheaf::invariants_cosheaf(rp2, tact, reg, fsys);
  const auto fcc = cosheaf::cosheaf_chain_complex(rp2, tact, finv.cosheaf, 0);
  CHECK(fcc.complex.dims == std::vector<int>{1, 1, 1});
}

TEST_CASE("corestrictions along monotone maps unwind into stored faces") {
  auto g = s3();
  const auto star = star_tree();
  const auto act = star_action(star, g);
  const GModule reg = cosheaf::regular_module(g, 0);
  const auto sys = cosheaf::build_exquisite(star, act, transposition_vertex_groups(g));
  const auto inv = cosheaf::invariants_cosheaf(star, act, reg, sys);
  const auto& c = inv.cosheaf;

  for (int id = 0; id < star.count(1); ++id) {
    const auto eref = star.nondeg_ref(1, id);
    // the identity map is the identity matrix
    CHECK(cosheaf::corestriction(star, c, {0, 1}, eref) ==
          fmat_identity(1, 0));
    // picking vertex 0 composes the face opposite vertex 1, and the
    // other way round
    CHECK(cosheaf::corestriction(star, c, {0}, eref) ==
          c.face_maps[1][static_cast<std::size_t>(id)][1]);
    CHECK(cosheaf::corestriction(star, c, {1}, eref) ==
          c.face_maps[1][static_cast<std::size_t>(id)][0]);
    // inclusion compatibility: B_target corestriction = B_source
    for (int i = 0; i <= 1; ++i) {
      const auto target = star.apply(std::vector<int>{i}, eref);
      CHECK(fmat_mul(
                inv.stalk_bases[0][static_cast<std::size_t>(target.core_id)],
                cosheaf::corestriction(star, c, {i}, eref)) ==
            inv.stalk_bases[1][static_cast<std::size_t>(id)]);
    }
  }
  const auto vref = star.nondeg_ref(0, 0);
  CHECK(cosheaf::corestriction(star, c, {0}, vref) == fmat_identity(2, 0));

  // weakly monotone maps factor through degeneracies, which carry the
  // identity; exercised on the one-vertex surface
  const auto rp2 = projective_plane();
  const auto tact = simplicial::trivial_action(rp2, g);
  const auto tc = cosheaf::trivial_cosheaf(rp2, tact, reg);
  const auto tref = rp2.nondeg_ref(2, 0);
  CHECK(cosheaf::corestriction(rp2, tc, {0, 0}, tref) == fmat_identity(6, 0));
  CHECK(cosheaf::corestriction(rp2, tc, {0, 1}, tref) == fmat_identity(6, 0));

  CHECK_THROWS_AS(cosheaf::corestriction(star, c, {1, 0},
                                         star.nondeg_ref(1, 0)),
                  InputError);
  CHECK_THROWS_AS(cosheaf::corestriction(star, c, {}, star.nondeg_ref(1, 0)),
                  InputError);
  CHECK_THROWS_AS(cosheaf::corestriction(star, c, {0, 5},
                                         star.nondeg_ref(1, 0)),
                  IndexOutOfRange);
}

TEST_CASE("two-term tree resolutions report exact ranks and hypothesis flags") {
  auto g = s3();
  const auto e = s3_elems(g);
  const auto star = star_tree();
  const auto act = star_action(star, g);
  const auto a3 = fingroup::subgroup_generated(g, {e.c});
  const auto const_a3 = cosheaf::constant_system(star, act, a3);

  std::vector<cosheaf::TreeResolutionReport> reports;

  // alternating system on the plus-sign module: the ladder
  // 0 -> 6 -> 8 -> 2 -> 0 is exact with rank d1 = 6 and rank w = 2
  const GModule ts = cosheaf::direct_sum(cosheaf::trivial_module(g, 0),
                                         sign_module(g));
  const auto main = cosheaf::schneider_stuhler_check(star, act, ts, const_a3);
  reports.push_back(main);
  CHECK(main.dim_c0 == 8);
  CHECK(main.dim_c1 == 6);
  CHECK(main.rank_d1 == 6);
  CHECK(main.rank_w == 2);
  CHECK(main.d1_injective);
  CHECK(main.kernel_w_is_image_d1);
  CHECK(main.w_surjective);
  CHECK(main.exact);
  CHECK(main.generated_by_vertex_invariants);
  CHECK(main.hyp_vertex_products);
  CHECK(main.hyp_geodesic);
  CHECK(main.hyp_ordinary);
  CHECK(main.verdict == "exact: the two-term ladder resolves the module");

  // the regular module is not generated by its alternating invariants
  const GModule reg = cosheaf::regular_module(g, 0);
  const auto not_onto = cosheaf::schneider_stuhler_check(star, act, reg, const_a3);
  reports.push_back(not_onto);
  CHECK(not_onto.rank_w == 2);
  CHECK_FALSE(not_onto.w_surjective);
  CHECK(not_onto.d1_injective);
  CHECK_FALSE(not_onto.exact);
  CHECK_FALSE(not_onto.generated_by_vertex_invariants);
  CHECK(not_onto.verdict.find("not exact:") == 0);
  CHECK(not_onto.verdict.find("augmentation is not onto") != std::string::npos);
  CHECK(not_onto.verdict.find("not generated by its vertex invariants") !=
        std::string::npos);

  // trivial subgroups on any tree resolve any module
  const auto one_sys = cosheaf::constant_system(
      star, act, fingroup::trivial_subgroup(g));
  const auto free_star = cosheaf::schneider_stuhler_check(star, act, reg, one_sys);
  reports.push_back(free_star);
  CHECK(free_star.exact);
  CHECK(free_star.dim_c0 == 24);
  CHECK(free_star.dim_c1 == 18);
  CHECK(free_star.rank_w == 6);
  {
    auto c2 = fingroup::group_from_permutations(2, {{1, 0}});
    auto path = simplicial::SimplicialSet::from_ordered_complex(
        {{{0}, {1}, {2}, {3}, {4}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}});
    auto pact = simplicial::trivial_action(path, c2);
    const auto psys = cosheaf::constant_system(
        path, pact, fingroup::trivial_subgroup(c2));
    const GModule preg = cosheaf::regular_module(c2, 0);
    const auto prep = cosheaf::schneider_stuhler_check(path, pact, preg, psys);
    reports.push_back(prep);
    CHECK(prep.exact);
    CHECK(prep.dim_c0 == 10);
    CHECK(prep.dim_c1 == 8);
    CHECK(prep.rank_w == 2);
  }

  // leaf transpositions: the only failure is the middle homology, and
  // the geodesic hypothesis is the one that does not hold
  const auto tr = cosheaf::build_exquisite(star, act, transposition_vertex_groups(g));
  const auto mid = cosheaf::schneider_stuhler_check(star, act, reg, tr);
  reports.push_back(mid);
  CHECK(mid.dim_c0 == 11);
  CHECK(mid.dim_c1 == 3);
  CHECK(mid.rank_d1 == 3);
  CHECK(mid.rank_w == 6);
  CHECK(mid.d1_injective);
  CHECK(mid.w_surjective);
  CHECK_FALSE(mid.kernel_w_is_image_d1);
  CHECK_FALSE(mid.exact);
  CHECK(mid.hyp_vertex_products);
  CHECK_FALSE(mid.hyp_geodesic);
  CHECK(mid.hyp_ordinary);
  CHECK(mid.verdict.find("augmentation kernel is not the boundary image") !=
        std::string::npos);
  CHECK(mid.verdict.find("geodesic containment") != std::string::npos);

  // one-point tree: everything collapses to the invariants of the vertex
  const auto pt = simplicial::SimplicialSet::from_ordered_complex({{{0}}});
  const auto ptact = simplicial::trivial_action(pt, g);
  const auto ptsys = cosheaf::constant_system(pt, ptact, a3);
  const auto ptrep = cosheaf::schneider_stuhler_check(pt, ptact, reg, ptsys);
  reports.push_back(ptrep);
  CHECK(ptrep.dim_c0 == 2);
  CHECK(ptrep.dim_c1 == 0);
  CHECK(ptrep.d1_injective);
  CHECK(ptrep.kernel_w_is_image_d1);
  CHECK_FALSE(ptrep.w_surjective);

  // non-ordinary characteristic is reported but does not stop the ranks
  const GModule t3 = cosheaf::trivial_module(g, 3);
  const auto wild = cosheaf::schneider_stuhler_check(star, act, t3, const_a3);
  reports.push_back(wild);
  CHECK_FALSE(wild.hyp_ordinary);
  CHECK(wild.exact);
  CHECK(wild.verdict.find("ordinary characteristic") != std::string::npos);

  // whenever the ladder is exact the dimensions satisfy the rank
  // identity dim C0 - dim C1 = dim V
  for (const auto& r : reports)
    if (r.exact) CHECK(r.dim_c0 - r.dim_c1 == r.module_dim);

  const auto hex = hexagon(g);
  const auto hsys = cosheaf::constant_system(hex.x, hex.act, a3);
  CHECK_THROWS_AS(
      cosheaf::schneider_stuhler_check(hex.x, hex.act, reg, hsys), NotATree);
}

TEST_CASE("resolution ladders survive a complete flag complex with stabilizer systems") {
  const auto bn = fingroup::gl_n_fq(2, 3);
  const auto poset = davis::davis_building_group(bn);
  const auto oc = davis::order_complex(poset);
  REQUIRE(oc.x.count(0) == 5);
  REQUIRE(oc.x.count(1) == 4);
  std::vector<fingroup::Subgroup> vsub;
  for (int v = 0; v < oc.x.count(0); ++v)
    vsub.push_back(davis::stabilizer(poset, oc.chains[0][v]));
  const auto sys = cosheaf::build_exquisite(oc.x, oc.act, vsub);
  CHECK(sys.exquisite);

  // distinct point stabilizers pairwise fail the geodesic containment
  // through the cone point, yet the trivial module still resolves
  const auto geo = cosheaf::check_geodesic(oc.x, sys);
  CHECK(geo.pairs_checked == 20);
  CHECK(geo.violations.size() == 12);

  const GModule triv = cosheaf::trivial_module(bn.group, 0);
  const auto rep = cosheaf::schneider_stuhler_check(oc.x, oc.act, triv, sys);
  CHECK(rep.dim_c0 == 5);
  CHECK(rep.dim_c1 == 4);
  CHECK(rep.exact);
  CHECK_FALSE(rep.hyp_geodesic);
  CHECK(rep.hyp_vertex_products);
  CHECK(rep.verdict.find("exact") == 0);
  CHECK(rep.verdict.find("geodesic containment") != std::string::npos);
}

TEST_CASE("idempotent identities hold by direct convolution on vertex-product systems") {
  auto g = s3();
  const auto e = s3_elems(g);
  const auto star = star_tree();
  const auto act = star_action(star, g);
  const auto a3 = fingroup::subgroup_generated(g, {e.c});
  measure::MeasureContext ctx(g, fingroup::trivial_subgroup(g), 0);

  const auto const_a3 = cosheaf::constant_system(star, act, a3);
  const auto clean = cosheaf::verify_idempotent_identities(ctx, star, act, const_a3);
  CHECK(clean.ok());
  CHECK(clean.idempotents_checked == 1);
  CHECK(clean.adjacent_pairs_checked == 3);
  CHECK(clean.product_formulas_checked == 3);
  CHECK(clean.conjugations_checked == 42);
  CHECK(clean.geodesic_triples_checked == 12);

  const auto tr = cosheaf::build_exquisite(star, act, transposition_vertex_groups(g));
  const auto rep = cosheaf::verify_idempotent_identities(ctx, star, act, tr);
  CHECK(rep.idempotents_checked == 5);
  CHECK(rep.adjacent_pairs_checked == 3);
  CHECK(rep.product_formulas_checked == 3);
  CHECK(rep.conjugations_checked == 42);
  CHECK(rep.geodesic_triples_checked == 12);
  REQUIRE(rep.violations.size() == 6);
  for (const auto& v : rep.violations) {
    CHECK(v.identity == "geodesic-triple");
    CHECK(v.witness.find("path") != std::string::npos);
  }

  // oracle: the center-leaf convolution is uniform at 1/6
  const auto lc = measure::lambda_idempotent(ctx, a3.elements());
  const auto ll = measure::lambda_idempotent(
      ctx, fingroup::subgroup_generated(g, {e.t1}).elements());
  const auto got = measure::convolve(ctx, lc, ll);
  std::vector<Rational> pc(6), pl(6);
  for (int x = 0; x < 6; ++x) {
    pc[static_cast<std::size_t>(x)] = lc.values[static_cast<std::size_t>(x)].value();
    pl[static_cast<std::size_t>(x)] = ll.values[static_cast<std::size_t>(x)].value();
  }
  const auto want = convolve_oracle(*g, pc, pl);
  for (int x = 0; x < 6; ++x) {
    CHECK(got.values[static_cast<std::size_t>(x)].value() ==
          want[static_cast<std::size_t>(x)]);
    CHECK(got.values[static_cast<std::size_t>(x)].value() ==
          Rational(BigInt(1), BigInt(6)));
  }
  CHECK(got == measure::lambda_idempotent(ctx, fingroup::full_subgroup(g).elements()));

  // characteristic three kills the alternating subgroup's measure
  measure::MeasureContext ctx3(g, fingroup::trivial_subgroup(g), 3);
  CHECK_THROWS_AS(
      cosheaf::verify_idempotent_identities(ctx3, star, act, const_a3),
      OrdinaryViolation);

  // systems without vertex-product provenance are rejected
  const auto plain = cosheaf::make_system(
      star, act, {{a3, a3, a3, a3}, {a3, a3, a3}});
  CHECK_THROWS_AS(cosheaf::verify_idempotent_identities(ctx, star, act, plain),
                  InputError);

  // triples are skipped off trees, with the note saying so
  const auto hex = hexagon(g);
  const auto hsys = cosheaf::constant_system(hex.x, hex.act, a3);
  const auto hrep = cosheaf::verify_idempotent_identities(ctx, hex.x, hex.act, hsys);
  CHECK(hrep.ok());
  CHECK(hrep.geodesic_triples_checked == 0);
  CHECK(hrep.note.find("not a tree") != std::string::npos);

  // a context over a different group is rejected outright
  auto c2 = fingroup::group_from_permutations(2, {{1, 0}});
  measure::MeasureContext ctx2(c2, fingroup::trivial_subgroup(c2), 0);
  CHECK_THROWS_AS(cosheaf::verify_idempotent_identities(ctx2, star, act, const_a3),
                  ContextMismatch);
}
