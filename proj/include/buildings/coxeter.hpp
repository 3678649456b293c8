/* Weyl groups of generalized Cartan matrices in their integer reflection
   representation on the root lattice: s_i(alpha_j) = alpha_j - a_ij alpha_i.
   Elements are integer matrices (columns = images of the simple roots);
   two elements are equal iff their matrices are equal.  Every element
   carries its canonical reduced word (the lexicographically smallest one,
   which is also length-lex minimal). */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "buildings/cartan.hpp"
#include "buildings/errors.hpp"

namespace buildings::coxeter {

/* Small square integer matrix with overflow-checked products.  Entries are
   kept below 2^59 so products of desk-scale words cannot wrap. */
class IMat {
 public:
  IMat() : n_(0) {}
  explicit IMat(int n) : n_(n), d_(std::size_t(n) * n, 0) {}
  static IMat identity(int n);

  int size() const { return n_; }
  long long& at(int r, int c) { return d_[std::size_t(r) * n_ + c]; }
  long long at(int r, int c) const { return d_[std::size_t(r) * n_ + c]; }

  bool operator==(const IMat& o) const { return n_ == o.n_ && d_ == o.d_; }
  bool operator!=(const IMat& o) const { return !(*this == o); }
  bool operator<(const IMat& o) const { return d_ < o.d_; }

 private:
  int n_;
  std::vector<long long> d_;
};

IMat imul(const IMat& a, const IMat& b);

class CoxeterSystem {
 public:
  explicit CoxeterSystem(cartan::GeneralizedCartanMatrix a);

  int rank() const { return cartan_.rank(); }
  const cartan::GeneralizedCartanMatrix& cartan() const { return cartan_; }
  const cartan::CoxeterMatrix& coxeter() const { return coxeter_; }
  const IMat& generator_matrix(int i) const;
  bool same_system(const CoxeterSystem& o) const { return cartan_ == o.cartan_; }
  /* Structural fingerprint; elements remember it so that operations can
     reject elements of a different system. */
  std::uint64_t tag() const { return tag_; }

 private:
  cartan::GeneralizedCartanMatrix cartan_;
  cartan::CoxeterMatrix coxeter_;
  std::vector<IMat> gens_;
  std::uint64_t tag_;
};

struct WeylElement {
  IMat mat;               // action on the root lattice
  IMat inv;               // matrix of the inverse element
  std::vector<int> word;  // canonical (lex-min) reduced word
  std::uint64_t sys_tag = 0;

  int length() const { return static_cast<int>(word.size()); }
  bool operator==(const WeylElement& o) const { return mat == o.mat; }
  bool operator!=(const WeylElement& o) const { return mat != o.mat; }
  bool operator<(const WeylElement& o) const { return mat < o.mat; }
};

WeylElement identity_element(const CoxeterSystem& sys);
WeylElement generator_element(const CoxeterSystem& sys, int i);

/* Builds the element of an arbitrary word; its canonical reduced word is
   computed by left-descent peeling. */
WeylElement element_of_word(const CoxeterSystem& sys, const std::vector<int>& w);

std::vector<int> reduce_word(const CoxeterSystem& sys, const std::vector<int>& w);

WeylElement multiply(const CoxeterSystem& sys, const WeylElement& a,
                     const WeylElement& b);
WeylElement invert(const CoxeterSystem& sys, const WeylElement& a);

/* l(w s_i) < l(w): the column of alpha_i in w's matrix is a negative root. */
bool is_right_descent(const CoxeterSystem& sys, const WeylElement& w, int i);
/* l(s_i w) < l(w). */
bool is_left_descent(const CoxeterSystem& sys, const WeylElement& w, int i);

/* (length, lex) order on words; the canonical enumeration order. */
bool word_less(const std::vector<int>& a, const std::vector<int>& b);

inline constexpr std::size_t DEFAULT_ELEMENT_BUDGET = 100000;

struct Ball {
  std::vector<WeylElement> elements;  // sorted by (length, word lex)
  bool whole_group;                   // BFS exhausted the group within radius
};

/* All elements of length <= radius (entire group when radius is empty,
   which requires finiteness within the budget).  Deterministic order. */
Ball ball(const CoxeterSystem& sys, std::optional<int> radius,
          std::size_t max_elements = DEFAULT_ELEMENT_BUDGET);

/* Length-minimal representative of w W_J: peel right descents in J. */
WeylElement min_coset_rep(const CoxeterSystem& sys, const WeylElement& w,
                          const std::vector<int>& j);

/* Ball elements with no right descent in J: the length-minimal
   representatives of every coset w W_J meeting the ball. */
std::vector<WeylElement> min_coset_reps(const CoxeterSystem& sys,
                                        const std::vector<int>& j,
                                        std::optional<int> radius,
                                        std::size_t max_elements = DEFAULT_ELEMENT_BUDGET);

}  // namespace buildings::coxeter
