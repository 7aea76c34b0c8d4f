#ifndef COMMSPEC_RANDOM_HPP
#define COMMSPEC_RANDOM_HPP

// Seeded random matrix ensembles. Every stream is derived from a root seed and
// a counter, so trial i draws the same matrix whatever thread runs it.

#include <cmath>
#include <cstdint>
#include <random>

#include "commspec/matrix.hpp"

namespace commspec {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the `index`-th independent stream under `root`.
inline std::uint64_t stream_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(root ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  static Rng stream(std::uint64_t root, std::uint64_t index) { return Rng(stream_seed(root, index)); }

  double normal() { return normal_(eng_); }
  double uniform() { return uniform_(eng_); }
  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }
  std::uint64_t bits() { return eng_(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

inline CMatrix normalized(const CMatrix& x) {
  const double nx = frobenius_norm(x);
  if (nx == 0.0) throw DegenerateInput("normalized: zero matrix");
  return x / nx;
}

inline CMatrix gaussian_complex(std::size_t n, Rng& rng) {
  CMatrix x(n);
  for (auto& e : x.entries()) e = rng.complex_normal();
  return x;
}

inline CMatrix gaussian_real(std::size_t n, Rng& rng) {
  CMatrix x(n);
  for (auto& e : x.entries()) e = rng.normal();
  return x;
}

inline CMatrix real_symmetric(std::size_t n, Rng& rng) {
  CMatrix x(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      const double v = rng.normal();
      x(i, j) = v;
      x(j, i) = v;
    }
  return x;
}

/// Haar-distributed unitary from Gram-Schmidt on a complex Gaussian matrix.
inline CMatrix random_unitary(std::size_t n, Rng& rng) {
  CMatrix q = gaussian_complex(n, rng);
  for (std::size_t c = 0; c < n; ++c) {
    auto qc = q.column(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t b = 0; b < c; ++b) {
        auto qb = q.column(b);
        cplx proj{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(qb[i]) * qc[i];
        for (std::size_t i = 0; i < n; ++i) qc[i] -= proj * qb[i];
      }
    }
    double nc = 0.0;
    for (const auto& z : qc) nc += std::norm(z);
    nc = std::sqrt(nc);
    for (auto& z : qc) z /= nc;
  }
  return q;
}

/// U diag(z) U^* with Haar U and complex Gaussian z.
inline CMatrix random_normal(std::size_t n, Rng& rng) {
  const CMatrix u = random_unitary(n, rng);
  std::vector<cplx> z(n);
  for (auto& v : z) v = rng.complex_normal();
  return u * CMatrix::diagonal(z) * u.adjoint();
}

/// u v^* with complex Gaussian u, v.
inline CMatrix random_rank_one(std::size_t n, Rng& rng) {
  std::vector<cplx> u(n), v(n);
  for (auto& e : u) e = rng.complex_normal();
  for (auto& e : v) e = rng.complex_normal();
  CMatrix x(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) x(i, j) = u[i] * std::conj(v[j]);
  return x;
}

/// Traceless complex 2x2 block.
inline CMatrix random_traceless_2x2(Rng& rng) {
  CMatrix x = gaussian_complex(2, rng);
  const cplx half = 0.5 * x.trace();
  x(0, 0) -= half;
  x(1, 1) -= half;
  return x;
}

}  // namespace commspec

#endif  // COMMSPEC_RANDOM_HPP
