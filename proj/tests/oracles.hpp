#pragma once

// Test-only reference constructions. Nothing here calls into the library's
// basis enumeration, projections or field operators; results are compared
// against the library from the outside.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Number of occupation vectors (n_1..n_d) with n_1 + ... + n_d <= cutoff, by
// odometer over {0..cutoff}^d.
inline int count_bose_states(int d, int cutoff) {
  std::vector<int> digits(d, 0);
  int count = 0;
  while (true) {
    int sum = 0;
    for (int x : digits) sum += x;
    if (sum <= cutoff) ++count;
    int pos = 0;
    while (pos < d && digits[pos] == cutoff) digits[pos++] = 0;
    if (pos == d) break;
    ++digits[pos];
  }
  return count;
}

// Subsets of {0..d-1} of size <= cutoff, by bitmask.
inline int count_fermi_states(int d, int cutoff) {
  int count = 0;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask)
    if (__builtin_popcount(mask) <= cutoff) ++count;
  return count;
}

// All permutations of {0..n-1} via Heap's algorithm, with their signs.
inline void heap_permutations(int n, std::vector<std::vector<int>>& perms,
                              std::vector<int>& signs) {
  std::vector<int> a(n);
  for (int i = 0; i < n; ++i) a[i] = i;
  std::vector<int> c(n, 0);
  int sign = 1;
  perms.push_back(a);
  signs.push_back(sign);
  int i = 1;
  while (i < n) {
    if (c[i] < i) {
      if (i % 2 == 0) std::swap(a[0], a[i]);
      else std::swap(a[c[i]], a[i]);
      sign = -sign;
      perms.push_back(a);
      signs.push_back(sign);
      ++c[i];
      i = 1;
    } else {
      c[i] = 0;
      ++i;
    }
  }
}

// (n!)^{-1} sum_sigma [sgn] Pi_sigma as an explicit sum of permutation
// matrices on (C^d)^{(x)n}; word index has the first factor most significant.
inline Matrix permutation_sum(int d, int n, bool antisymmetric) {
  int dim = 1;
  for (int i = 0; i < n; ++i) dim *= d;
  std::vector<std::vector<int>> perms;
  std::vector<int> signs;
  if (n > 0) heap_permutations(n, perms, signs);
  else { perms.push_back({}); signs.push_back(1); }
  Matrix total = Matrix::Zero(dim, dim);
  for (std::size_t p = 0; p < perms.size(); ++p) {
    Matrix pi = Matrix::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
      std::vector<int> digits(n);
      int rest = col;
      for (int k = n - 1; k >= 0; --k) { digits[k] = rest % d; rest /= d; }
      int row = 0;
      for (int k = 0; k < n; ++k) row = row * d + digits[perms[p][k]];
      pi(row, col) = 1.0;
    }
    total += (antisymmetric ? signs[p] : 1) * pi;
  }
  return total / static_cast<double>(perms.size());
}

inline int numerical_rank(const Matrix& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > threshold) ++r;
  return r;
}

// Truncated single-mode ladder: a|n> = sqrt(n)|n-1>, n = 0..cutoff.
inline Matrix ladder(int cutoff) {
  Matrix a = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Jordan-Wigner annihilator of mode k on 2^d, bit of mode 0 most significant,
// built as a Kronecker product Z (x) ... (x) Z (x) sigma^- (x) I (x) ... (x) I.
inline Matrix jordan_wigner(int d, int k) {
  Matrix z(2, 2), lower(2, 2), id = Matrix::Identity(2, 2);
  z << 1, 0, 0, -1;
  lower << 0, 1, 0, 0;  // |1> -> |0> with |0> = index 0
  Matrix out = Matrix::Identity(1, 1);
  for (int j = 0; j < d; ++j) {
    const Matrix& factor = j < k ? z : (j == k ? lower : id);
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * factor;
    out = next;
  }
  return out;
}

inline int subset_to_jw_index(const std::vector<int>& subset, int d) {
  int idx = 0;
  for (int k : subset) idx |= 1 << (d - 1 - k);
  return idx;
}

}  // namespace oracle
