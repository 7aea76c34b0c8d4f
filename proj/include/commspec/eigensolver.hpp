#ifndef COMMSPEC_EIGENSOLVER_HPP
#define COMMSPEC_EIGENSOLVER_HPP

// Cyclic complex Jacobi eigensolver for Hermitian matrices, and an SVD built on it.
//
// Everything here is single-threaded and free of data-dependent scheduling, so
// identical input bits give identical output bits.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <numeric>
#include <vector>

#include "commspec/errors.hpp"
#include "commspec/matrix.hpp"

namespace commspec {

struct JacobiOptions {
  int max_sweeps = 100;
  /// Stop once the off-diagonal Frobenius norm drops below this multiple of ||M||.
  double off_tol = 1e-13;
  /// Accepted Hermitian defect ||M - M^*|| relative to ||M||.
  double hermitian_tol = 1e-10;
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column i belongs to values[i]
  double residual = 0.0;       // max_i ||M v_i - lambda_i v_i||
  int sweeps = 0;
};

struct SingularValues {
  std::vector<double> values;  // descending, nonnegative
  CMatrix left;                // M = left * diag(values) * right^*
  CMatrix right;
  double residual = 0.0;  // ||M - left diag(values) right^*||
};

namespace detail {

struct JacobiState {
  CMatrix a;
  CMatrix v;
  int sweeps = 0;
};

inline double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.order();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Runs cyclic Jacobi in place on `a` (Hermitian, overwritten by its diagonal form).
// Accumulates the rotations into `v` when `vectors` is set.
inline JacobiState jacobi(const CMatrix& m, bool vectors, const JacobiOptions& opt) {
  const std::size_t n = m.order();
  const double mnorm = frobenius_norm(m);
  if (hermitian_defect(m) > opt.hermitian_tol * mnorm) {
    throw PreconditionError("eigh: input is not Hermitian within tolerance");
  }

  JacobiState st;
  st.a = m;
  CMatrix& a = st.a;
  // Symmetrize and clear imaginary parts of the diagonal.
  for (std::size_t j = 0; j < n; ++j) {
    a(j, j) = a(j, j).real();
    for (std::size_t i = j + 1; i < n; ++i) {
      const cplx h = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = h;
      a(j, i) = std::conj(h);
    }
  }
  if (vectors) st.v = CMatrix::identity(n);
  if (n <= 1 || mnorm == 0.0) return st;

  const double target = opt.off_tol * mnorm;
  const double skip = 1e-18 * mnorm;
  cplx* ad = a.entries().data();
  cplx* vd = vectors ? st.v.entries().data() : nullptr;

  for (;;) {
    const double off = off_diagonal_norm(a);
    if (off <= target) break;
    if (st.sweeps >= opt.max_sweeps) throw ConvergenceError("eigh: Jacobi sweep cap reached", off / mnorm);
    ++st.sweeps;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = ad[p + q * n];
        const double r = std::abs(apq);
        if (r <= skip) continue;
        const double app = ad[p + p * n].real();
        const double aqq = ad[q + q * n].real();
        const cplx e = apq / r;  // phase of a_pq

        // Real rotation on the phase-normalized 2x2 block [[app, r], [r, aqq]].
        const double theta = (aqq - app) / (2.0 * r);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx se = s * e;                // U_pq
        const cplx sec = s * std::conj(e);    // -U_qp

        // A <- U^* A U, with U = [[c, s e], [-s conj(e), c]] acting on (p, q).
        cplx* colp = ad + p * n;
        cplx* colq = ad + q * n;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = colp[k];
          const cplx akq = colq[k];
          const cplx nkp = c * akp - sec * akq;
          const cplx nkq = se * akp + c * akq;
          colp[k] = nkp;
          colq[k] = nkq;
          ad[p + k * n] = std::conj(nkp);
          ad[q + k * n] = std::conj(nkq);
        }
        colp[p] = app - t * r;
        colq[q] = aqq + t * r;
        colq[p] = 0.0;
        colp[q] = 0.0;

        if (vd) {
          cplx* vp = vd + p * n;
          cplx* vq = vd + q * n;
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = vp[k];
            const cplx vkq = vq[k];
            vp[k] = c * vkp - sec * vkq;
            vq[k] = se * vkp + c * vkq;
          }
        }
      }
    }
  }
  return st;
}

// Descending order, ties kept in diagonal order.
inline std::vector<std::size_t> descending_order(const std::vector<double>& d) {
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return d[i] > d[j]; });
  return idx;
}

// Make the first component with modulus above `tol` real and positive.
inline void fix_phase(std::span<cplx> col, double tol = 1e-8) {
  for (cplx& z : col) {
    const double r = std::abs(z);
    if (r > tol) {
      const cplx ph = std::conj(z) / r;
      for (cplx& w : col) w *= ph;
      z = cplx(r, 0.0);
      return;
    }
  }
}

}  // namespace detail

/// Eigenvalues only, descending. Skips eigenvector accumulation.
inline std::vector<double> eigvalsh(const CMatrix& m, const JacobiOptions& opt = {}) {
  auto st = detail::jacobi(m, false, opt);
  std::vector<double> d(m.order());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = st.a(i, i).real();
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

/// Full Hermitian eigen-decomposition with descending values and phase-fixed vectors.
inline EigenDecomposition eigh(const CMatrix& m, const JacobiOptions& opt = {}) {
  const std::size_t n = m.order();
  auto st = detail::jacobi(m, true, opt);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = st.a(i, i).real();
  const auto order = detail::descending_order(d);

  EigenDecomposition out;
  out.sweeps = st.sweeps;
  out.values.resize(n);
  out.vectors = CMatrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = d[order[c]];
    auto src = st.v.column(order[c]);
    auto dst = out.vectors.column(c);
    std::copy(src.begin(), src.end(), dst.begin());
    detail::fix_phase(dst);
  }

  // Residual against the symmetrized input.
  const CMatrix h = 0.5 * (m + m.adjoint());
  const CMatrix mv = h * out.vectors;
  double worst = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0.0;
    auto col = mv.column(c);
    auto vc = out.vectors.column(c);
    for (std::size_t i = 0; i < n; ++i) s += std::norm(col[i] - out.values[c] * vc[i]);
    worst = std::max(worst, std::sqrt(s));
  }
  out.residual = worst;
  return out;
}

/// Column `c` of `m` as a vector.
inline CVector column_vector(const CMatrix& m, std::size_t c) {
  auto col = m.column(c);
  return CVector(std::vector<cplx>(col.begin(), col.end()));
}

/// Complete the first `k` orthonormal columns of `q` to a unitary matrix by
/// Gram-Schmidt over the standard basis vectors e_0, e_1, ... in order.
inline void complete_unitary(CMatrix& q, std::size_t k) {
  const std::size_t n = q.order();
  std::size_t filled = k;
  for (std::size_t b = 0; b < n && filled < n; ++b) {
    std::vector<cplx> w(n, cplx{0.0, 0.0});
    w[b] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < filled; ++c) {
        auto qc = q.column(c);
        cplx proj{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(qc[i]) * w[i];
        for (std::size_t i = 0; i < n; ++i) w[i] -= proj * qc[i];
      }
    }
    double nw = 0.0;
    for (const auto& z : w) nw += std::norm(z);
    nw = std::sqrt(nw);
    if (nw < 1e-6) continue;
    auto dst = q.column(filled);
    for (std::size_t i = 0; i < n; ++i) dst[i] = w[i] / nw;
    ++filled;
  }
}

namespace detail {

// One-sided (Hestenes) Jacobi on the columns of a copy of m. On return the
// columns of `a` are mutually orthogonal and a = m v.
struct OneSided {
  CMatrix a, v;
};

inline OneSided one_sided_jacobi(const CMatrix& m, const JacobiOptions& opt) {
  const std::size_t n = m.order();
  OneSided st{m, CMatrix::identity(n)};
  constexpr double eps = 4.0 * std::numeric_limits<double>::epsilon();
  // Columns this small are roundoff; rotating them never settles.
  const double negligible = std::pow(eps * frobenius_norm(m), 2);
  double worst = 0.0;
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    bool rotated = false;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto ap = st.a.column(p);
        auto aq = st.a.column(q);
        double alpha = 0.0, beta = 0.0;
        cplx gamma{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(ap[i]);
          beta += std::norm(aq[i]);
          gamma += std::conj(ap[i]) * aq[i];
        }
        const double g = std::abs(gamma);
        if (alpha <= negligible || beta <= negligible) continue;
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        worst = std::max(worst, g / std::sqrt(alpha * beta));
        rotated = true;
        const cplx e = std::conj(gamma) / g;  // aq * e makes the inner product real
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        auto rot = [&](std::span<cplx> x, std::span<cplx> y) {
          for (std::size_t i = 0; i < n; ++i) {
            const cplx xi = x[i], yi = y[i] * e;
            x[i] = c * xi - s * yi;
            y[i] = s * xi + c * yi;
          }
        };
        rot(ap, aq);
        rot(st.v.column(p), st.v.column(q));
      }
    }
    if (!rotated) return st;
  }
  throw ConvergenceError("svd: one-sided Jacobi did not converge in " + std::to_string(opt.max_sweeps) + " sweeps", worst);
}

}  // namespace detail

/// SVD by one-sided Jacobi. Right vectors are phase-fixed; left columns belonging
/// to vanishing singular values are completed to a unitary.
inline SingularValues svd(const CMatrix& m, const JacobiOptions& opt = {}) {
  const std::size_t n = m.order();
  auto st = detail::one_sided_jacobi(m, opt);
  std::vector<double> norms(n);
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0.0;
    for (const auto& z : st.a.column(c)) s += std::norm(z);
    norms[c] = std::sqrt(s);
  }
  const auto order = detail::descending_order(norms);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(norms[order[0]], 1e-300);

  SingularValues out;
  out.values.resize(n);
  out.right = CMatrix(n);
  out.left = CMatrix(n);
  std::size_t k = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.values[c] = norms[src];
    auto vs = st.v.column(src);
    auto vd = out.right.column(c);
    std::copy(vs.begin(), vs.end(), vd.begin());
    // Same phase on both factors keeps M v = sigma u.
    cplx ph{1.0, 0.0};
    for (const cplx& z : vd) {
      if (std::abs(z) > 1e-8) {
        ph = std::conj(z) / std::abs(z);
        break;
      }
    }
    for (auto& z : vd) z *= ph;
    if (norms[src] > floor && norms[src] > 0.0) {
      auto as = st.a.column(src);
      auto ud = out.left.column(c);
      for (std::size_t i = 0; i < n; ++i) ud[i] = as[i] * ph / norms[src];
      k = c + 1;
    }
  }
  complete_unitary(out.left, k);

  CMatrix sv(n);
  for (std::size_t i = 0; i < n; ++i) sv(i, i) = out.values[i];
  out.residual = frobenius_norm(m - out.left * sv * out.right.adjoint());
  return out;
}

/// Singular values only, descending.
inline std::vector<double> singular_values(const CMatrix& m, const JacobiOptions& opt = {}) {
  auto st = detail::one_sided_jacobi(m, opt);
  std::vector<double> out(m.order());
  for (std::size_t c = 0; c < out.size(); ++c) {
    double s = 0.0;
    for (const auto& z : st.a.column(c)) s += std::norm(z);
    out[c] = std::sqrt(s);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace commspec

#endif  // COMMSPEC_EIGENSOLVER_HPP
