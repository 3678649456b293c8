/* Finite groups as fully verified multiplication tables, subgroups as index
   sets, and groups with a (generalised) BN-pair: Borel and monomial
   subgroups of small general linear groups, Bruhat cells, parabolic
   subgroups, and the axiom checker. */

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "buildings/coxeter.hpp"
#include "buildings/errors.hpp"
#include "buildings/numeric.hpp"

namespace buildings::fingroup {

inline constexpr int MAX_GROUP_ORDER = 512;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/* Immutable after construction; the constructor verifies the group axioms
   (identity, inverses, associativity) exhaustively. */
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> labels,
              std::vector<int> generators);

  int order() const { return static_cast<int>(inv_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return identity_; }
  const std::string& label(int a) const { return labels_[a]; }
  /* Preferred generating set (explicit for permutation/gl builds, all
     elements otherwise); used when extending generator-level data. */
  const std::vector<int>& generators() const { return generators_; }
  std::uint64_t tag() const { return tag_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  std::vector<int> generators_;
  int identity_;
  std::uint64_t tag_;
};

GroupPtr group_from_table(std::vector<std::vector<int>> table,
                          std::vector<std::string> labels = {});

/* Closure of the given permutations of {0..degree-1} under composition. */
GroupPtr group_from_permutations(int degree,
                                 const std::vector<std::vector<int>>& gens);

/* The Weyl group of a finite Coxeter system as a multiplication table;
   element i is `elements[i]`, in ball (length-lex) order. */
struct WeylGroupTable {
  GroupPtr group;
  std::vector<coxeter::WeylElement> elements;
};
WeylGroupTable weyl_finite_group(const coxeter::CoxeterSystem& sys,
                                 std::size_t max_elements = coxeter::DEFAULT_ELEMENT_BUDGET);

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(GroupPtr g, std::vector<int> elements);  // verifies subgroup axioms

  const GroupPtr& group() const { return group_; }
  const std::vector<int>& elements() const { return elems_; }
  int order() const { return static_cast<int>(elems_.size()); }
  bool contains(int a) const { return member_[a] != 0; }

 private:
  GroupPtr group_;
  std::vector<int> elems_;   // sorted
  std::vector<char> member_;
};

Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& gens);
Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);
Subgroup conjugate_subgroup(const Subgroup& h, int x);  // x H x^{-1}
Subgroup intersect(const Subgroup& a, const Subgroup& b);

/* |H : K| for K <= H (throws NotASubgroup otherwise). */
Rational subgroup_index(const Subgroup& h, const Subgroup& k);

/* Product set H1 H2 = {h1 h2}, sorted; not a subgroup in general. */
std::vector<int> product_set(const Subgroup& h1, const Subgroup& h2);
bool set_is_subgroup(const FiniteGroup& g, const std::vector<int>& sorted_set);

/* Partition of G into H1 g H2 classes; blocks sorted, listed by least
   element. */
std::vector<std::vector<int>> double_cosets(const Subgroup& h1, const Subgroup& h2);

/* Group with a generalised BN-pair.  omega_lifts carries representatives of
   the nontrivial Omega elements (empty = trivial Omega, the only case the
   builtin constructors produce). */
struct BNPairData {
  GroupPtr group;
  Subgroup b;
  Subgroup n;
  std::vector<int> simple_lifts;
  std::shared_ptr<const coxeter::CoxeterSystem> weyl;
  std::vector<int> omega_lifts;

  std::vector<coxeter::WeylElement> weyl_elements;  // ball order
  std::vector<int> lift_of_weyl;  // canonical lift per weyl element
  /* cell_of_element[g] = index into weyl_elements, or -1 if no cell claims
     g; overlap is recorded for the axiom checker. */
  std::vector<int> cell_of_element;
  bool cells_overlap = false;
};

BNPairData make_bn_pair(GroupPtr g, Subgroup b, Subgroup n,
                        std::vector<int> simple_lifts,
                        coxeter::CoxeterSystem weyl,
                        std::vector<int> omega_lifts = {});

/* General linear groups over small prime fields; supported (n, q):
   (2,2), (2,3), (3,2).  Throws UnsupportedParameters otherwise. */
BNPairData gl_n_fq(int n, long long q);

/* The unique w with g in B w B. */
const coxeter::WeylElement& bruhat_class(const BNPairData& bn, int g);

/* P_J = union of B w B over w in W_J; verified to be a subgroup. */
Subgroup parabolic(const BNPairData& bn, const std::vector<int>& j);

struct AxiomCheck {
  std::string axiom;
  bool ok;
  std::string witness;  // empty when ok
};

struct BNAxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

/* Verifies the generalised BN-pair axioms (i)-(vi) plus the Bruhat
   partition.  Violations are data, not errors. */
BNAxiomReport check_bn_axioms(const BNPairData& bn);

}  // namespace buildings::fingroup
