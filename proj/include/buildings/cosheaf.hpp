/* Equivariant cosheaves on a finite simplicial set with a crossed group
   action: finite-dimensional modules, systems of subgroups attached to the
   simplices (with variance flags and the vertex-product construction),
   stalks of invariants or coinvariants, the cosheaf chain complex with its
   signed group action, the idempotent identities in the measure algebra,
   and the two-term resolution check on trees. */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "buildings/errors.hpp"
#include "buildings/fingroup.hpp"
#include "buildings/linalg.hpp"
#include "buildings/measure.hpp"
#include "buildings/simplicial.hpp"

namespace buildings::cosheaf {

/* Finite-dimensional module over a finite group: a matrix pi(g) for every
   element, extended from generator matrices along the multiplication
   table.  Construction checks pi(g s) = pi(g) pi(s) for every element g
   and generator s, which pins the whole homomorphism because every element
   is a product of generators. */
class GModule {
 public:
  GModule(fingroup::GroupPtr group, long long characteristic,
          const std::vector<FMat>& generator_matrices);

  const fingroup::GroupPtr& group() const { return group_; }
  long long characteristic() const { return characteristic_; }
  int dimension() const { return dimension_; }
  const FMat& matrix(int g) const;

 private:
  fingroup::GroupPtr group_;
  long long characteristic_ = 0;
  int dimension_ = 0;
  std::vector<FMat> matrices_;
};

/* Every element acts as the identity on a one-dimensional space. */
GModule trivial_module(const fingroup::GroupPtr& group, long long characteristic);
/* Left translation on the group algebra: pi(g) e_h = e_{gh}. */
GModule regular_module(const fingroup::GroupPtr& group, long long characteristic);
/* Block direct sum of two modules over the same group and field. */
GModule direct_sum(const GModule& a, const GModule& b);

/* A subgroup for every nondegenerate simplex; degenerate simplices take
   the subgroup of their core.  Equivariance g G_x g^{-1} = G_{g.x} is
   verified at construction.  The variance flags compare each simplex with
   its faces: contravariant means the face subgroup is contained in the
   simplex subgroup, covariant means it contains it; single face steps
   settle all monotone maps because degeneracies keep the core.  The
   exquisite flag records that the system came out of build_exquisite. */
struct SubgroupSystem {
  fingroup::GroupPtr group;
  std::uint64_t set_tag = 0;
  std::vector<std::vector<fingroup::Subgroup>> groups;
  bool contravariant = false;
  bool covariant = false;
  bool exquisite = false;
};

SubgroupSystem make_system(const simplicial::SimplicialSet& x,
                           const simplicial::CrossedAction& act,
                           std::vector<std::vector<fingroup::Subgroup>> groups);

/* G_x = H for every simplex, built through build_exquisite (the constant
   vertex assignment), so the flag set is honest.  H must be normalised by
   every element that moves a simplex; equivariance is checked as usual. */
SubgroupSystem constant_system(const simplicial::SimplicialSet& x,
                               const simplicial::CrossedAction& act,
                               const fingroup::Subgroup& h);

/* Extends an equivariant vertex assignment to the whole simplicial set by
   taking products over the vertices of each simplex.  Requires commuting
   products G_a G_b = G_b G_a for the end vertices of every nondegenerate
   edge; the result is contravariant.  Throws NotEquivariant or
   ProductNotSubgroup with a witness. */
SubgroupSystem build_exquisite(const simplicial::SimplicialSet& x,
                               const simplicial::CrossedAction& act,
                               const std::vector<fingroup::Subgroup>& vertex_groups);

/* Geodesic containment on a tree: for every ordered pair of distinct
   vertices (a, b) and every vertex z of the first edge on the unique path
   from a to b, the subgroup of z must lie inside the product set
   G_a G_b.  Pairs are vertex barycenters; interior points of edges are
   not sampled (the note says so).  Throws NotATree when the realization
   is not a tree. */
struct GeodesicViolation {
  int from = 0;
  int to = 0;
  int via = 0;
  std::string witness;
};
struct GeodesicReport {
  int pairs_checked = 0;
  std::vector<GeodesicViolation> violations;
  bool geodesic() const { return violations.empty(); }
  std::string note;
};
GeodesicReport check_geodesic(const simplicial::SimplicialSet& x,
                              const SubgroupSystem& sys);

/* Equivariant cosheaf in coordinates.  Stalks and structure maps are
   stored on nondegenerate simplices only; the stalk of a degenerate
   simplex is identified with the stalk of its core, and corestrictions
   along degeneracies are identities.  face_maps[n][x][i] is the matrix of
   the corestriction along the i-th face, landing in the stalk of that
   face's core (n >= 1); gmaps[n][g][x] maps the stalk of x to the stalk
   of g.x. */
struct EquivariantCosheaf {
  fingroup::GroupPtr group;
  std::uint64_t set_tag = 0;
  long long characteristic = 0;
  std::vector<std::vector<int>> stalk_dims;
  std::vector<std::vector<std::vector<FMat>>> face_maps;
  std::vector<std::vector<std::vector<FMat>>> gmaps;
};

/* Checks the cosheaf data exhaustively over the simplices: matrix shapes
   and field, functoriality across the face square identities, identity
   g-maps for the identity element, the group law g_{hx} h_x = (gh)_x, and
   the compatibility square between corestrictions and g-maps along the
   crossed permutation.  The two group-law style conditions run over all
   pairs (element, generator); that pins them for all pairs of elements by
   induction over the verified multiplication table.  Violations are data
   with witnesses, not exceptions. */
struct CosheafViolation {
  std::string condition;
  std::string witness;
};
struct CosheafReport {
  std::vector<CosheafViolation> violations;
  bool ok() const { return violations.empty(); }
};
CosheafReport check_axioms(const simplicial::SimplicialSet& x,
                           const simplicial::CrossedAction& act,
                           const EquivariantCosheaf& c);

/* Corestriction along an arbitrary monotone map f (a value list, as in
   SimplicialSet::apply): the matrix from the stalk of z's core to the
   stalk of the core of X(f)z, composed out of the stored face matrices;
   degeneracies contribute identities. */
FMat corestriction(const simplicial::SimplicialSet& x,
                   const EquivariantCosheaf& c, const std::vector<int>& f,
                   const simplicial::SimplexRef& z);

/* Every stalk is V, every corestriction the identity, g_x = pi(g). */
EquivariantCosheaf trivial_cosheaf(const simplicial::SimplicialSet& x,
                                   const simplicial::CrossedAction& act,
                                   const GModule& v);

/* Stalk over x = the subspace of vectors fixed by G_x, carried as an
   explicit basis (columns of stalk_bases[n][x]); corestrictions are the
   subspace inclusions dictated by containment, g-maps act by pi(g).
   Requires a contravariant system (VarianceMismatch otherwise).  The
   axioms are re-checked after construction. */
struct InvariantsCosheaf {
  EquivariantCosheaf cosheaf;
  std::vector<std::vector<FMat>> stalk_bases;
};
InvariantsCosheaf invariants_cosheaf(const simplicial::SimplicialSet& x,
                                     const simplicial::CrossedAction& act,
                                     const GModule& v,
                                     const SubgroupSystem& sys);

/* Stalk over x = the quotient of V by the span of (pi(g) - 1)V over
   g in G_x, carried as the quotient map onto the classes of the free
   coordinates (rows of quotient_maps[n][x]).  Requires a covariant system
   (VarianceMismatch otherwise). */
struct CoinvariantsCosheaf {
  EquivariantCosheaf cosheaf;
  std::vector<std::vector<FMat>> quotient_maps;
};
CoinvariantsCosheaf coinvariants_cosheaf(const simplicial::SimplicialSet& x,
                                         const simplicial::CrossedAction& act,
                                         const GModule& v,
                                         const SubgroupSystem& sys);

/* Chain complex of a cosheaf: the degree-n space is the direct sum of the
   stalks over the nondegenerate n-simplices (blocks in simplex order,
   block starts in offsets[n]), and d_n restricted to the stalk of x sums
   (-1)^i times the face corestriction over the nondegenerate faces of x
   (degenerate faces die in the normalized complex).  action[g][k] is the
   signed block map alpha |-> (-1)^{parity R(g,x)} g_x(alpha) placed at
   g.x.  Construction asserts d d = 0, that the boundaries commute with
   the generators' action, and the orbit dimension formula
   dim C_n = sum over orbit representatives of |G : Stab(x)| dim C_x. */
struct CosheafComplex {
  simplicial::ChainComplex complex;
  std::vector<std::vector<int>> offsets;
  std::vector<std::vector<FMat>> action;
};
CosheafComplex cosheaf_chain_complex(const simplicial::SimplicialSet& x,
                                     const simplicial::CrossedAction& act,
                                     const EquivariantCosheaf& c,
                                     long long characteristic);

/* Two-term resolution check on a tree: builds the invariants cosheaf of V
   for the given system, the ladder  0 -> C_1 -> C_0 -> V,  where the
   augmentation w sends a stalk vector to itself inside V, and reports the
   exact ranks: d_1 injective, ker w = im d_1, w surjective.  Hypothesis
   flags (vertex-product provenance, geodesic containment, characteristic
   prime to every simplex subgroup order) are reported independently; the
   rank checks run regardless.  Also reports whether V is generated as a
   module by the union of the vertex invariants.  Throws NotATree. */
struct TreeResolutionReport {
  long long characteristic = 0;
  int module_dim = 0;
  int dim_c0 = 0;
  int dim_c1 = 0;
  int rank_d1 = 0;
  int rank_w = 0;
  bool d1_injective = false;
  bool kernel_w_is_image_d1 = false;
  bool w_surjective = false;
  bool exact = false;
  bool generated_by_vertex_invariants = false;
  bool hyp_vertex_products = false;
  bool hyp_geodesic = false;
  bool hyp_ordinary = false;
  std::string verdict;
};
TreeResolutionReport schneider_stuhler_check(const simplicial::SimplicialSet& x,
                                             const simplicial::CrossedAction& act,
                                             const GModule& v,
                                             const SubgroupSystem& sys);

/* Direct convolution checks for the idempotents Lambda_x attached to the
   simplex subgroups of a vertex-product system: Lambda_U Lambda_U =
   Lambda_U for every distinct subgroup, commutation and the product-set
   formula Lambda_a Lambda_b = Lambda_{G_a G_b} on every nondegenerate
   edge, the vertex factorization Lambda_x = Lambda_{v_0} ... Lambda_{v_n}
   for every nondegenerate simplex, conjugation Lambda_{g.x}(h) =
   Lambda_x(g^{-1} h g) for every element, and on trees the triple law
   Lambda_a Lambda_z Lambda_b = Lambda_a Lambda_b for the first vertex z
   after a on the path to b.  Failures are collected with witnesses.
   Throws OrdinaryViolation when some subgroup has measure zero. */
struct IdentityViolation {
  std::string identity;
  std::string witness;
};
struct IdempotentReport {
  int idempotents_checked = 0;
  int adjacent_pairs_checked = 0;
  int product_formulas_checked = 0;
  int conjugations_checked = 0;
  int geodesic_triples_checked = 0;
  std::vector<IdentityViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string note;
};
IdempotentReport verify_idempotent_identities(const measure::MeasureContext& ctx,
                                              const simplicial::SimplicialSet& x,
                                              const simplicial::CrossedAction& act,
                                              const SubgroupSystem& sys);

}  // namespace buildings::cosheaf
