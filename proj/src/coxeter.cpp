#include "buildings/coxeter.hpp"

#include <algorithm>
#include <map>

namespace buildings::coxeter {

namespace {
constexpr long long ENTRY_LIMIT = 1LL << 59;
}

IMat IMat::identity(int n) {
  IMat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat imul(const IMat& a, const IMat& b) {
  if (a.size() != b.size()) throw SystemMismatch("matrix size mismatch");
  const int n = a.size();
  IMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < n; ++k)
        acc += static_cast<__int128>(a.at(i, k)) * b.at(k, j);
      if (acc > ENTRY_LIMIT || acc < -ENTRY_LIMIT)
        throw BudgetExceeded("reflection matrix entry exceeds 2^59");
      r.at(i, j) = static_cast<long long>(acc);
    }
  return r;
}

CoxeterSystem::CoxeterSystem(cartan::GeneralizedCartanMatrix a)
    : cartan_(std::move(a)), coxeter_(cartan::coxeter_matrix(cartan_)) {
  const int n = cartan_.rank();
  gens_.reserve(n);
  for (int i = 0; i < n; ++i) {
    IMat s = IMat::identity(n);
    // column j of s_i is s_i(alpha_j) = alpha_j - a_ij alpha_i
    for (int j = 0; j < n; ++j) s.at(i, j) -= cartan_.at(i, j);
    gens_.push_back(std::move(s));
  }
  std::uint64_t h = 1469598103934665603ULL;  // FNV offset basis
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      h ^= static_cast<std::uint64_t>(cartan_.at(i, j)) + 0x9e3779b97f4a7c15ULL;
      h *= 1099511628211ULL;
    }
  tag_ = h;
}

namespace {
void check_same(const CoxeterSystem& sys, const WeylElement& w) {
  if (w.sys_tag != sys.tag())
    throw SystemMismatch("element belongs to a different Coxeter system");
}
}  // namespace

const IMat& CoxeterSystem::generator_matrix(int i) const {
  if (i < 0 || i >= rank())
    throw IndexOutOfRange("generator index " + std::to_string(i));
  return gens_[i];
}

namespace {

/* A column of a reflection matrix is the image of a simple root, hence all
   entries share one sign; nonpositive means negative root. */
bool column_nonpositive(const IMat& m, int c) {
  for (int r = 0; r < m.size(); ++r)
    if (m.at(r, c) > 0) return false;
  return true;
}

/* Canonical reduced word of the element with matrix m and inverse n:
   repeatedly strip the smallest left descent. */
std::vector<int> canonical_word(const CoxeterSystem& sys, IMat m, IMat n) {
  const IMat id = IMat::identity(sys.rank());
  std::vector<int> word;
  while (m != id) {
    int descent = -1;
    for (int i = 0; i < sys.rank(); ++i)
      if (column_nonpositive(n, i)) { descent = i; break; }
    if (descent < 0)
      throw Error("reflection matrix has no descent yet is not the identity");
    word.push_back(descent);
    m = imul(sys.generator_matrix(descent), m);
    n = imul(n, sys.generator_matrix(descent));
  }
  return word;
}

WeylElement from_matrices(const CoxeterSystem& sys, IMat m, IMat n) {
  WeylElement w;
  w.word = canonical_word(sys, m, n);
  w.mat = std::move(m);
  w.inv = std::move(n);
  w.sys_tag = sys.tag();
  return w;
}

}  // namespace

WeylElement identity_element(const CoxeterSystem& sys) {
  WeylElement w;
  w.mat = IMat::identity(sys.rank());
  w.inv = w.mat;
  w.sys_tag = sys.tag();
  return w;
}

WeylElement generator_element(const CoxeterSystem& sys, int i) {
  const IMat& s = sys.generator_matrix(i);
  WeylElement w;
  w.mat = s;
  w.inv = s;
  w.word = {i};
  w.sys_tag = sys.tag();
  return w;
}

WeylElement element_of_word(const CoxeterSystem& sys, const std::vector<int>& w) {
  IMat m = IMat::identity(sys.rank());
  IMat n = m;
  for (int i : w) m = imul(m, sys.generator_matrix(i));
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    n = imul(n, sys.generator_matrix(*it));
  return from_matrices(sys, std::move(m), std::move(n));
}

std::vector<int> reduce_word(const CoxeterSystem& sys, const std::vector<int>& w) {
  return element_of_word(sys, w).word;
}

WeylElement multiply(const CoxeterSystem& sys, const WeylElement& a,
                     const WeylElement& b) {
  check_same(sys, a);
  check_same(sys, b);
  return from_matrices(sys, imul(a.mat, b.mat), imul(b.inv, a.inv));
}

WeylElement invert(const CoxeterSystem& sys, const WeylElement& a) {
  check_same(sys, a);
  return from_matrices(sys, a.inv, a.mat);
}

bool is_right_descent(const CoxeterSystem& sys, const WeylElement& w, int i) {
  check_same(sys, w);
  if (i < 0 || i >= sys.rank())
    throw IndexOutOfRange("generator index " + std::to_string(i));
  return column_nonpositive(w.mat, i);
}

bool is_left_descent(const CoxeterSystem& sys, const WeylElement& w, int i) {
  check_same(sys, w);
  if (i < 0 || i >= sys.rank())
    throw IndexOutOfRange("generator index " + std::to_string(i));
  return column_nonpositive(w.inv, i);
}

bool word_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Ball ball(const CoxeterSystem& sys, std::optional<int> radius,
          std::size_t max_elements) {
  if (radius && *radius < 0) throw InputError("negative ball radius");
  Ball out;
  std::map<IMat, std::size_t> seen;
  std::vector<WeylElement> level{identity_element(sys)};
  seen.emplace(level.front().mat, 0);
  out.elements.push_back(level.front());
  int depth = 0;
  while (!level.empty() && (!radius || depth < *radius)) {
    std::vector<WeylElement> next;
    for (const WeylElement& w : level) {
      for (int j = 0; j < sys.rank(); ++j) {
        if (is_right_descent(sys, w, j)) continue;  // would shorten
        IMat m = imul(w.mat, sys.generator_matrix(j));
        if (seen.count(m)) continue;
        WeylElement v;
        v.mat = std::move(m);
        v.inv = imul(sys.generator_matrix(j), w.inv);
        v.word = w.word;
        v.word.push_back(j);
        v.sys_tag = sys.tag();
        seen.emplace(v.mat, seen.size());
        next.push_back(std::move(v));
        if (seen.size() > max_elements)
          throw BudgetExceeded("ball exceeds element budget of " +
                               std::to_string(max_elements));
      }
    }
    // parents are scanned in word order and children inherit it, so each
    // level arrives sorted and words are the lex-min reduced words
    out.elements.insert(out.elements.end(), next.begin(), next.end());
    level = std::move(next);
    ++depth;
  }
  out.whole_group = level.empty();
  return out;
}

WeylElement min_coset_rep(const CoxeterSystem& sys, const WeylElement& w,
                          const std::vector<int>& j) {
  WeylElement cur = w;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i : j) {
      if (is_right_descent(sys, cur, i)) {
        cur = multiply(sys, cur, generator_element(sys, i));
        moved = true;
      }
    }
  }
  return cur;
}

std::vector<WeylElement> min_coset_reps(const CoxeterSystem& sys,
                                        const std::vector<int>& j,
                                        std::optional<int> radius,
                                        std::size_t max_elements) {
  for (int i : j)
    if (i < 0 || i >= sys.rank())
      throw IndexOutOfRange("generator index " + std::to_string(i));
  Ball b = ball(sys, radius, max_elements);
  std::vector<WeylElement> reps;
  for (const WeylElement& w : b.elements) {
    bool minimal = true;
    for (int i : j)
      if (is_right_descent(sys, w, i)) { minimal = false; break; }
    if (minimal) reps.push_back(w);
  }
  return reps;
}

}  // namespace buildings::coxeter
