#include "buildings/cartan.hpp"

#include <algorithm>

#include "buildings/linalg.hpp"

namespace buildings::cartan {

GeneralizedCartanMatrix::GeneralizedCartanMatrix(
    std::vector<std::vector<long long>> entries)
    : a_(std::move(entries)) {
  const std::size_t n = a_.size();
  if (n == 0) throw InputError("Cartan matrix must have positive rank");
  for (std::size_t i = 0; i < n; ++i)
    if (a_[i].size() != n)
      throw InputError("Cartan matrix row " + std::to_string(i) +
                       " has wrong length");
  for (std::size_t i = 0; i < n; ++i) {
    if (a_[i][i] != 2)
      throw DiagonalNotTwo("a[" + std::to_string(i) + "][" + std::to_string(i) +
                           "] = " + std::to_string(a_[i][i]) + ", expected 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a_[i][j] > 0)
        throw PositiveOffDiagonal("a[" + std::to_string(i) + "][" +
                                  std::to_string(j) + "] = " +
                                  std::to_string(a_[i][j]) + " > 0");
      if ((a_[i][j] == 0) != (a_[j][i] == 0))
        throw ZeroAsymmetry("a[" + std::to_string(i) + "][" + std::to_string(j) +
                            "] = 0 but a[" + std::to_string(j) + "][" +
                            std::to_string(i) + "] != 0");
    }
  }
}

CoxeterMatrix coxeter_matrix(const GeneralizedCartanMatrix& a) {
  const int n = a.rank();
  CoxeterMatrix m;
  m.m.assign(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) {
    m.m[i][i] = 1;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      long long prod = a.at(i, j) * a.at(j, i);
      int mij;
      switch (prod) {
        case 0: mij = 2; break;
        case 1: mij = 3; break;
        case 2: mij = 4; break;
        case 3: mij = 6; break;
        default: mij = INFINITE_BOND; break;
      }
      m.m[i][j] = mij;
    }
  }
  return m;
}

namespace {

BigInt principal_minor(const GeneralizedCartanMatrix& a,
                       const std::vector<int>& idx) {
  ZMat sub(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c)
      sub.at(r, c) = a.at(idx[r], idx[c]);
  return det_bareiss(sub);
}

std::vector<int> bits_to_subset(unsigned mask, int n) {
  std::vector<int> j;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) j.push_back(i);
  return j;
}

}  // namespace

SphericalSubsets spherical_subsets(const GeneralizedCartanMatrix& a) {
  const int n = a.rank();
  // spherical[mask] = every principal minor of A_J positive; computed
  // incrementally: J qualifies iff all its facets qualify and det A_J > 0
  std::vector<char> spherical(std::size_t(1) << n, 0);
  spherical[0] = 1;
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < (1u << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](unsigned x, unsigned y) {
    return __builtin_popcount(x) < __builtin_popcount(y);
  });
  for (unsigned mask : masks) {
    if (mask == 0) continue;
    bool facets_ok = true;
    for (int i = 0; i < n && facets_ok; ++i)
      if (mask & (1u << i)) facets_ok = spherical[mask & ~(1u << i)];
    if (!facets_ok) continue;
    if (principal_minor(a, bits_to_subset(mask, n)) > 0) spherical[mask] = 1;
  }
  SphericalSubsets out;
  out.f = 0;
  for (unsigned mask : masks)
    if (spherical[mask]) {
      std::vector<int> j = bits_to_subset(mask, n);
      out.f = std::max<int>(out.f, static_cast<int>(j.size()));
      out.subsets.push_back(std::move(j));
    }
  std::sort(out.subsets.begin(), out.subsets.end(),
            [](const std::vector<int>& x, const std::vector<int>& y) {
              if (x.size() != y.size()) return x.size() < y.size();
              return x < y;
            });
  return out;
}

bool is_spherical(const GeneralizedCartanMatrix& a, const std::vector<int>& j) {
  for (int i : j)
    if (i < 0 || i >= a.rank())
      throw IndexOutOfRange("generator index " + std::to_string(i));
  // every principal minor of A_J must be positive
  const std::size_t k = j.size();
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) sub.push_back(j[i]);
    if (principal_minor(a, sub) <= 0) return false;
  }
  return true;
}

}  // namespace buildings::cartan
