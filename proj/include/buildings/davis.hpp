/* Davis posets: cosets of spherical parabolic subgroups ordered by
   inclusion, built either from a Coxeter system (with optional truncation
   by representative length) or from a finite group with a BN-pair.  Their
   order complexes carry the left-translation action, which preserves the
   order, so the induced crossed action has identity rank permutations;
   the generic machinery still validates that instead of assuming it.
   Chain stabilizers are computed by brute force and compared against the
   conjugated parabolic of the least node.  The augmented chain ladder
   0 -> C_n -> ... -> C_0 -> F -> 0 is checked for exactness by rank
   counting; truncated complexes only ever get a homology report. */

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "buildings/cartan.hpp"
#include "buildings/coxeter.hpp"
#include "buildings/errors.hpp"
#include "buildings/fingroup.hpp"
#include "buildings/simplicial.hpp"

namespace buildings::davis {

/* One coset g P_J.  `rep` is the canonical representative: the index of
   the length-minimal coset representative in `elements` (Coxeter case) or
   the least element id of the coset (group case). */
struct DavisNode {
  std::vector<int> j;  // sorted generator subset, spherical
  int rep;
  std::string label;
};

/* Nodes are sorted by (|J|, J, rep), which is a linear extension of the
   order: comparable distinct nodes have strictly nested subsets.  The
   left-translation action on nodes is present exactly when the poset is
   complete (group provenance, or a Coxeter ball that exhausted the
   group); a truncated poset has no global action. */
struct DavisPoset {
  bool from_group = false;          // built from a BN-pair
  bool complete = false;            // the whole poset, not a truncation
  std::optional<int> truncation;    // requested radius (Coxeter case)

  std::vector<DavisNode> nodes;
  std::vector<std::vector<char>> less;  // less[a][b]: node a < node b

  std::vector<std::vector<int>> subsets;  // spherical subsets, (size, lex)
  int f = 0;                              // maximal spherical size

  /* Acting group and its action on nodes; group is null iff incomplete. */
  fingroup::GroupPtr group;
  std::vector<std::vector<int>> node_action;  // [g][node]

  /* Group provenance: the BN-pair, the parabolic P_J per subset (aligned
     with `subsets`), and each node's coset as a sorted element list. */
  std::shared_ptr<const fingroup::BNPairData> bn;
  std::vector<fingroup::Subgroup> parabolics;
  std::vector<std::vector<int>> coset_elements;

  /* Coxeter provenance: the system and the enumerated ball (whole group
     when complete); node reps index into `elements`, and for a complete
     poset element indices coincide with group element ids. */
  std::shared_ptr<const coxeter::CoxeterSystem> sys;
  std::vector<coxeter::WeylElement> elements;
};

/* Cosets w W_J over spherical J, restricted to length-minimal
   representatives of length <= radius; the whole poset when the radius is
   absent (requires a finite group within the budget) or when the ball
   exhausts the group. */
DavisPoset davis_poset_coxeter(
    const coxeter::CoxeterSystem& sys, std::optional<int> radius,
    std::size_t max_elements = coxeter::DEFAULT_ELEMENT_BUDGET);

/* Cosets g P_J over all spherical J; the order is verified by coset
   membership tests. */
DavisPoset davis_building_group(const fingroup::BNPairData& bn);

/* Number of nodes with the given subset. */
int node_count_for_subset(const DavisPoset& p, const std::vector<int>& j);

/* The order complex: nondegenerate n-simplices are the strictly
   increasing (n+1)-chains of nodes.  Node numbering is a linear
   extension, so chains are increasing id tuples and the action keeps
   every tuple sorted: the crossed structure is built with identity rank
   permutations and validated by make_action.  An incomplete poset gets
   the trivial action of the one-element group. */
struct OrderComplex {
  simplicial::SimplicialSet x;
  simplicial::CrossedAction act;
  std::vector<std::vector<std::vector<int>>> chains;  // [n][id] -> node ids
};

OrderComplex order_complex(const DavisPoset& p);

/* Brute-force stabilizer of a chain of node ids (strictly increasing in
   the poset order).  Requires a complete poset. */
fingroup::Subgroup stabilizer(const DavisPoset& p,
                              const std::vector<int>& chain);

/* The stabilizer predicted by the coset shape: g_0 P_{J_0} g_0^{-1} for
   the least node g_0 P_{J_0} of the chain. */
fingroup::Subgroup expected_chain_stabilizer(const DavisPoset& p,
                                             const std::vector<int>& chain);

/* Exactness report for 0 -> C_n -> ... -> C_0 -> F -> 0 with the
   augmentation sending every basis simplex to 1.  Exactness is computed
   from the actual ranks in every case; the verdict never claims it for a
   truncated complex.  `ordinary` records whether the characteristic is
   coprime to every nondegenerate stabilizer order under the supplied
   action. */
struct ResolutionReport {
  long long characteristic = 0;
  std::vector<int> dims;            // basis sizes, degree 0 .. n
  std::vector<int> boundary_ranks;  // rank d_k for k = 1 .. n
  int augmentation_rank = 0;
  std::vector<int> homology;        // plain homology dimensions
  bool exact = false;               // reduced homology vanishes
  bool ordinary = false;
  std::vector<std::string> ordinary_violations;
  bool truncated = false;
  std::string verdict;
};

ResolutionReport resolution_check(const simplicial::SimplicialSet& x,
                                  const simplicial::CrossedAction& act,
                                  long long characteristic,
                                  bool truncated = false);

}  // namespace buildings::davis
