#ifndef COMMSPEC_TESTS_SUPPORT_HPP
#define COMMSPEC_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "commspec/commspec.hpp"

namespace commspec::test {

// E_ij with 1-based indices.
inline CMatrix E(std::size_t n, std::size_t i, std::size_t j) { return CMatrix::unit(n, i - 1, j - 1); }

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.order(); ++j)
    for (std::size_t i = 0; i < a.order(); ++i) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

inline CMatrix random_hermitian(std::size_t n, Rng& rng) {
  const CMatrix g = gaussian_complex(n, rng);
  return 0.5 * (g + g.adjoint());
}

inline std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace commspec::test

#endif  // COMMSPEC_TESTS_SUPPORT_HPP
