#ifndef COMMSPEC_CLOSED_FORMS_HPP
#define COMMSPEC_CLOSED_FORMS_HPP

// Closed-form spectra of T_X for normal and rank-one X, detection of the
// lambda_1 = 2 equality case, and maximal commutator pairs.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commspec/eigensolver.hpp"
#include "commspec/spectra_bounds.hpp"

namespace commspec {

/// ||X^*X - XX^*|| < tol ||X||^2. The zero matrix counts as normal.
inline bool is_normal(const CMatrix& x, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("is_normal: tol must be positive");
  const double nx2 = frobenius_norm_sq(x);
  if (nx2 == 0.0) return true;
  const CMatrix xs = x.adjoint();
  return frobenius_norm(xs * x - x * xs) < tol * nx2;
}

/// sigma_2 / sigma_1 below this classifies X as rank one.
inline constexpr double kRankOneRatio = 1e-8;

inline bool is_rank_one(const CMatrix& x) {
  if (x.order() < 2) return true;
  const auto s = singular_values(x);
  return s[0] > 0.0 && s[1] / s[0] < kRankOneRatio;
}

/// Eigenvalues of a normal matrix. A and C = -iB (Hermitian and skew parts) commute,
/// so eigenvectors of a generic real combination cos(t) A + sin(t) C diagonalize X.
/// Angles are tried in a fixed order until V^* X V is diagonal.
inline std::vector<cplx> normal_eigenvalues(const CMatrix& x, double tol = 1e-8) {
  const std::size_t n = x.order();
  const auto parts = herm_skew_split(x);
  const CMatrix c = cplx{0.0, -1.0} * parts.skew;
  const double scale = std::max(frobenius_norm(x), 1e-300);
  static constexpr std::array<double, 6> angles{0.6180339887, 1.3247179572, 0.2718281828,
                                                2.1415926536, 0.4142135624, 1.7320508076};
  double best_off = 0.0;
  for (double t : angles) {
    const CMatrix h = std::cos(t) * parts.hermitian + std::sin(t) * c;
    const auto ed = eigh(h);
    const CMatrix d = ed.vectors.adjoint() * x * ed.vectors;
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) off += std::norm(d(i, j));
    off = std::sqrt(off);
    if (off <= tol * scale) {
      std::vector<cplx> eig(n);
      for (std::size_t i = 0; i < n; ++i) eig[i] = d(i, i);
      return eig;
    }
    best_off = off;
  }
  throw PreconditionError("normal_eigenvalues: joint diagonalization failed (off-diagonal " +
                          std::to_string(best_off / scale) + "); is X normal?");
}

/// lambda(T_X) = {|x_i - x_j|^2} for normal X, at unit norm.
inline Spectrum normal_spectrum(const CMatrix& x) {
  const double nx2 = frobenius_norm_sq(x);
  if (nx2 == 0.0) throw DegenerateInput("normal_spectrum: zero matrix");
  if (!is_normal(x, 1e-8)) throw PreconditionError("normal_spectrum: X is not normal");
  const CMatrix xh = x / std::sqrt(nx2);
  const auto eig = normal_eigenvalues(xh);
  std::vector<double> vals;
  vals.reserve(eig.size() * eig.size());
  for (const auto& a : eig)
    for (const auto& b : eig) vals.push_back(std::norm(a - b));
  return make_spectrum(std::move(vals), x.order(), nx2, std::norm(xh.trace()));
}

/// Roots of (l - 2 + t)^2 (l - 1)^(2n-4) l^((n-1)^2+1), t = |Tr X|^2, descending.
inline std::vector<double> rank_one_spectrum(std::size_t n, double trace_abs_sq) {
  if (n < 2) throw PreconditionError("rank_one_spectrum: n must be at least 2");
  if (!(trace_abs_sq >= 0.0 && trace_abs_sq <= 1.0)) {
    throw PreconditionError("rank_one_spectrum: |Tr X|^2 must lie in [0, 1]");
  }
  std::vector<double> v;
  v.reserve(n * n);
  const double top = 2.0 - trace_abs_sq;
  v.push_back(top);
  v.push_back(top);
  for (std::size_t i = 0; i < 2 * n - 4; ++i) v.push_back(1.0);
  v.resize(n * n, 0.0);
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

struct EqualityWitness {
  CMatrix U;   // unitary, first two columns span the joint support of X and X^*
  CMatrix X0;  // 2x2 compression, traceless
  double embedding_residual = 0.0;  // ||X - U diag(X0, 0) U^*||
  double lambda1 = 0.0;
};

inline constexpr double kEqualityThreshold = 2.0 - 1e-6;

/// Returns a witness X = U diag(X0, 0) U^* when lambda_1(T_X) reaches `threshold`.
inline std::optional<EqualityWitness> detect_equality_case(const CMatrix& x,
                                                           double threshold = kEqualityThreshold) {
  const std::size_t n = x.order();
  const auto spec = spectrum_TX(x);
  if (spec.values.front() <= threshold) return std::nullopt;

  const double nx = frobenius_norm(x);
  const CMatrix xs = x.adjoint();
  const auto ed = eigh(x * xs + xs * x);
  const double top = ed.values.front();
  const double third = n > 2 ? ed.values[2] : 0.0;
  if (!(ed.values[1] > 1e-8 * top) || third > 1e-8 * top) {
    throw DegenerateInput("detect_equality_case: joint support of X and X^* is not two-dimensional "
                          "(support eigenvalues " + std::to_string(ed.values[1] / top) + ", " +
                          std::to_string(third / top) + " relative)");
  }

  EqualityWitness w;
  w.lambda1 = spec.values.front();
  w.U = CMatrix(n);
  for (std::size_t c = 0; c < 2; ++c) {
    auto src = ed.vectors.column(c);
    std::copy(src.begin(), src.end(), w.U.column(c).begin());
  }
  complete_unitary(w.U, 2);

  const CMatrix full = w.U.adjoint() * x * w.U;
  w.X0 = CMatrix(2);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 2; ++i) w.X0(i, j) = full(i, j);
  w.embedding_residual = frobenius_norm(x - w.U * embed(w.X0, n) * w.U.adjoint());

  const double unitary_defect = frobenius_norm(w.U.adjoint() * w.U - CMatrix::identity(n));
  if (unitary_defect > 1e-9 || std::abs(w.X0.trace()) > 1e-8 * nx || w.embedding_residual > 1e-7 * nx) {
    throw DegenerateInput("detect_equality_case: witness failed verification (unitary defect " +
                          std::to_string(unitary_defect) + ", |Tr X0| " +
                          std::to_string(std::abs(w.X0.trace())) + ", residual " +
                          std::to_string(w.embedding_residual) + ")");
  }
  return w;
}

/// ||[X, Y]||^2 >= (2 - 1e-8) ||X||^2 ||Y||^2 for nonzero X, Y.
inline bool maximal_pair_check(const CMatrix& x, const CMatrix& y) {
  const double nx2 = frobenius_norm_sq(x);
  const double ny2 = frobenius_norm_sq(y);
  if (nx2 == 0.0 || ny2 == 0.0) return false;
  return frobenius_norm_sq(commutator(x, y)) >= (2.0 - 1e-8) * nx2 * ny2;
}

/// (E12 - E21)/sqrt 2 and (E11 - E22)/sqrt 2 in the leading block of order n.
inline std::pair<CMatrix, CMatrix> maximal_pair_construct(std::size_t n) {
  if (n < 2) throw PreconditionError("maximal_pair_construct: n must be at least 2");
  const double h = 1.0 / std::sqrt(2.0);
  CMatrix x(n), y(n);
  x(0, 1) = h;
  x(1, 0) = -h;
  y(0, 0) = h;
  y(1, 1) = -h;
  return {x, y};
}

}  // namespace commspec

#endif  // COMMSPEC_CLOSED_FORMS_HPP
