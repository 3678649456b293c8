/* Generalized Cartan matrices, the Coxeter matrices they induce, and
   enumeration of spherical subsets (subsets of generators whose parabolic
   subgroup is finite). */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "buildings/errors.hpp"

namespace buildings::cartan {

/* Integer matrix with a_ii = 2, a_ij <= 0 off the diagonal, and
   a_ij = 0 iff a_ji = 0.  Validated on construction. */
class GeneralizedCartanMatrix {
 public:
  explicit GeneralizedCartanMatrix(std::vector<std::vector<long long>> entries);

  int rank() const { return static_cast<int>(a_.size()); }
  long long at(int i, int j) const { return a_[i][j]; }
  const std::vector<std::vector<long long>>& entries() const { return a_; }

  bool operator==(const GeneralizedCartanMatrix& o) const { return a_ == o.a_; }
  bool operator!=(const GeneralizedCartanMatrix& o) const { return a_ != o.a_; }

 private:
  std::vector<std::vector<long long>> a_;
};

/* Coxeter exponents m_ij; INFINITE_BOND encodes m = infinity. */
inline constexpr int INFINITE_BOND = 0;

struct CoxeterMatrix {
  std::vector<std::vector<int>> m;
  int rank() const { return static_cast<int>(m.size()); }
  int at(int i, int j) const { return m[i][j]; }
};

/* m_ii = 1; off-diagonal from the product a_ij * a_ji via
   0 -> 2, 1 -> 3, 2 -> 4, 3 -> 6, >= 4 -> infinity. */
CoxeterMatrix coxeter_matrix(const GeneralizedCartanMatrix& a);

struct SphericalSubsets {
  std::vector<std::vector<int>> subsets;  // sorted by (size, lex); includes {}
  int f;                                  // maximal size among them
};

/* A subset J is spherical iff every principal minor of A_J is positive
   (finite-type criterion).  The listing is downward closed. */
SphericalSubsets spherical_subsets(const GeneralizedCartanMatrix& a);

bool is_spherical(const GeneralizedCartanMatrix& a, const std::vector<int>& j);

}  // namespace buildings::cartan
