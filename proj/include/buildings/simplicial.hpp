/* Finite simplicial sets in Eilenberg-Zilber normal form: every simplex is
   a monotone surjection applied to a nondegenerate core, faces are stored
   only for the cores, and arbitrary monotone maps act by reading faces off
   the stored tables.  On top of that: group actions carrying the crossed
   permutation data R(g,x), the four crossed-action conditions as a
   checkable report, normalized chain complexes over an exact field, and
   homology by fraction-free elimination. */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "buildings/errors.hpp"
#include "buildings/fingroup.hpp"
#include "buildings/linalg.hpp"

namespace buildings::simplicial {

/* Permutations of {0..n} as vectors; compose_perms(p, q) is p after q. */
std::vector<int> identity_perm(int size);
bool is_permutation(const std::vector<int>& p);
std::vector<int> compose_perms(const std::vector<int>& p, const std::vector<int>& q);
std::vector<int> inverse_perm(const std::vector<int>& p);
/* 0 for even, 1 for odd. */
int perm_parity(const std::vector<int>& p);

/* The symmetric crossed simplicial group: how face and degeneracy maps act
   on the permutation attached to a simplex.  symmetric_face sends a
   permutation of {0..n} to one of {0..n-1} by deleting source slot i and
   closing the gap at phi(i) in the target; degeneracy i goes the other
   way, doubling source slot i onto the target pair (phi(i), phi(i)+1).
   With this indexing the forced datum of a symmetric action on an ordered
   complex (slot i goes to the rank of the i-th image vertex) satisfies all
   four crossed conditions. */
std::vector<int> symmetric_face(const std::vector<int>& phi, int i);
std::vector<int> symmetric_degeneracy(const std::vector<int>& phi, int i);

/* A simplex of dimension u.size()-1: the monotone surjection u applied to
   nondegenerate core simplex (core_dim, core_id).  Nondegenerate simplices
   carry the identity surjection.  The pair (u, core) is the Eilenberg-
   Zilber normal form, so refs are equal iff the simplices are. */
struct SimplexRef {
  int core_dim = 0;
  int core_id = 0;
  std::vector<int> u;

  int dim() const { return static_cast<int>(u.size()) - 1; }
  bool degenerate() const { return static_cast<int>(u.size()) != core_dim + 1; }
  bool operator==(const SimplexRef& o) const {
    return core_dim == o.core_dim && core_id == o.core_id && u == o.u;
  }
  bool operator!=(const SimplexRef& o) const { return !(*this == o); }
};

std::string ref_label(const SimplexRef& z);

/* Finite simplicial set.  counts[n] is the number of nondegenerate
   n-simplices; faces[n][x][i] is the stored face del^i of nondegenerate
   n-simplex x (n >= 1).  The constructor validates every reference and
   checks the simplicial identities del^i del^j = del^{j-1} del^i (i < j)
   on all cores. */
class SimplicialSet {
 public:
  SimplicialSet(std::vector<int> counts,
                std::vector<std::vector<std::vector<SimplexRef>>> faces);

  /* Build from an ordered simplicial complex: by_dim[n] lists the
     n-simplices as strictly increasing vertex tuples, with by_dim[0][k]
     equal to {k}.  Every face of a listed simplex must be listed. */
  static SimplicialSet from_ordered_complex(
      const std::vector<std::vector<std::vector<int>>>& by_dim);

  int dimension() const { return static_cast<int>(counts_.size()) - 1; }
  int count(int n) const;
  const std::vector<int>& counts() const { return counts_; }
  SimplexRef nondeg_ref(int n, int id) const;
  const SimplexRef& stored_face(int n, int id, int i) const;

  /* The contravariant action of an arbitrary monotone map f: [m] -> [dim z]
     (f given by its value list of length m+1); returns the normal form. */
  SimplexRef apply(const std::vector<int>& f, const SimplexRef& z) const;
  SimplexRef face(const SimplexRef& z, int i) const;
  SimplexRef degeneracy(const SimplexRef& z, int i) const;

  /* All simplices of dimension n, degenerate ones included. */
  std::vector<SimplexRef> simplices_of_dim(int n) const;

  std::uint64_t tag() const { return tag_; }

 private:
  std::vector<int> counts_;
  std::vector<std::vector<std::vector<SimplexRef>>> faces_;
  std::uint64_t tag_;
};

/* A group action on a simplicial set together with the crossed data:
   on[n][g][x] is the image of nondegenerate n-simplex x under g, and
   r[n][g][x] is the permutation of {0..n} recording how g reorders the
   codimension-one faces.  Both extend canonically to degenerate simplices
   (see act below).  Construction checks shapes, ranges and per-element
   bijectivity; the mathematical conditions live in check_crossed. */
struct CrossedAction {
  fingroup::GroupPtr group;
  std::uint64_t set_tag = 0;
  std::vector<std::vector<std::vector<int>>> on;
  std::vector<std::vector<std::vector<std::vector<int>>>> r;
};

CrossedAction make_action(const SimplicialSet& x, fingroup::GroupPtr group,
                          std::vector<std::vector<std::vector<int>>> on,
                          std::vector<std::vector<std::vector<std::vector<int>>>> r);

/* Every element fixes every simplex with R = id. */
CrossedAction trivial_action(const SimplicialSet& x, fingroup::GroupPtr group);

/* Extend generator-level data to the whole group along a Cayley breadth-
   first search: gen_on[k] and gen_r[k] give the action of
   group->generators()[k] in the same layout as CrossedAction::on / ::r. */
CrossedAction action_from_generators(
    const SimplicialSet& x, fingroup::GroupPtr group,
    const std::vector<std::vector<std::vector<int>>>& gen_on,
    const std::vector<std::vector<std::vector<std::vector<int>>>>& gen_r);

/* g applied to an arbitrary simplex: the image and the attached crossed
   permutation.  Degenerate simplices are handled by peeling degeneracies:
   g.(s^i z) = s^{R(g,z)(i)}(g.z) with R(g, s^i z) = S(s^i)(R(g,z)). */
struct ActedSimplex {
  SimplexRef image;
  std::vector<int> r;
};
ActedSimplex act(const SimplicialSet& x, const CrossedAction& a, int g,
                 const SimplexRef& z);

/* Exhaustive check of the action laws and the four crossed conditions.
   Violations are data with witnesses, not exceptions. */
struct CrossedViolation {
  std::string condition;
  std::string witness;
};
struct CrossedReport {
  std::vector<CrossedViolation> violations;
  bool ok() const { return violations.empty(); }
};
CrossedReport check_crossed(const SimplicialSet& x, const CrossedAction& a);

/* Normalized chain complex: basis in degree k is the nondegenerate
   k-simplices, boundaries[k] is d_k (k >= 1; boundaries[0] has zero rows),
   and d_k d_{k+1} = 0 is asserted at construction. */
struct ChainComplex {
  long long characteristic = 0;
  std::vector<int> dims;
  std::vector<FMat> boundaries;
};

ChainComplex chain_complex(const SimplicialSet& x, long long characteristic);

/* dim H_k = dim ker d_k - rank d_{k+1}, exact in the given characteristic. */
std::vector<int> homology(const ChainComplex& c);

/* Matrices of the signed action g.x = (-1)^{parity R(g,x)} (g.x) on each
   degree; requires check_crossed to pass. */
std::vector<std::vector<FMat>> equivariant_chain_action(const SimplicialSet& x,
                                                        const CrossedAction& a,
                                                        const ChainComplex& c);

}  // namespace buildings::simplicial
