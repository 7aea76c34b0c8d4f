#ifndef COMMSPEC_MATRIX_HPP
#define COMMSPEC_MATRIX_HPP

// Dense square complex matrices, the vec isomorphism and Kronecker products.
//
// Storage is column-major so that vec() is a plain copy of the entry array and
// the identity vec(A Y B) = (B^t kron A) vec(Y) holds without any permutation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "commspec/errors.hpp"

namespace commspec {

using cplx = std::complex<double>;

namespace detail {
inline void require_same_order(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw OrderMismatch(std::string(op) + ": order mismatch (" + std::to_string(a) + " vs " +
                        std::to_string(b) + ")");
  }
}
}  // namespace detail

/// Complex column vector. Used for vec(Y) and eigenvectors.
class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : entries_(dim, cplx{0.0, 0.0}) {}
  explicit CVector(std::vector<cplx> entries) : entries_(std::move(entries)) {}

  std::size_t dim() const noexcept { return entries_.size(); }
  cplx& operator[](std::size_t i) { return entries_[i]; }
  const cplx& operator[](std::size_t i) const { return entries_[i]; }
  std::span<cplx> entries() noexcept { return entries_; }
  std::span<const cplx> entries() const noexcept { return entries_; }

  CVector& operator+=(const CVector& o) {
    detail::require_same_order(dim(), o.dim(), "CVector::+=");
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  CVector& operator-=(const CVector& o) {
    detail::require_same_order(dim(), o.dim(), "CVector::-=");
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  CVector& operator*=(cplx s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }
  friend CVector operator+(CVector a, const CVector& b) { return a += b; }
  friend CVector operator-(CVector a, const CVector& b) { return a -= b; }
  friend CVector operator*(cplx s, CVector a) { return a *= s; }

  bool operator==(const CVector&) const = default;

 private:
  std::vector<cplx> entries_;
};

/// Hermitian inner product sum_i u_i conj(v_i), matching Tr(A B^*) under vec.
inline cplx inner(const CVector& u, const CVector& v) {
  detail::require_same_order(u.dim(), v.dim(), "inner");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

inline double norm(const CVector& v) {
  double s = 0.0;
  for (const auto& e : v.entries()) s += std::norm(e);
  return std::sqrt(s);
}

/// Dense n x n complex matrix, column-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), a_(n * n, cplx{0.0, 0.0}) {}

  /// Row-wise literal, e.g. CMatrix::from_rows({{1, 2}, {3, 4}}).
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t n = rows.size();
    CMatrix m(n);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n) throw PreconditionError("CMatrix::from_rows: matrix must be square");
      std::size_t j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// Standard basis matrix with a single 1 at (i, j), zero-based.
  static CMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    CMatrix m(n);
    m(i, j) = 1.0;
    return m;
  }

  static CMatrix diagonal(std::span<const cplx> d) {
    CMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t order() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i + j * n_]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i + j * n_]; }

  /// Column-major entry array.
  std::span<cplx> entries() noexcept { return a_; }
  std::span<const cplx> entries() const noexcept { return a_; }

  std::span<cplx> column(std::size_t j) { return {a_.data() + j * n_, n_}; }
  std::span<const cplx> column(std::size_t j) const { return {a_.data() + j * n_, n_}; }

  CMatrix adjoint() const {
    CMatrix r(n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  CMatrix transpose() const {
    CMatrix r(n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) r(j, i) = (*this)(i, j);
    return r;
  }

  CMatrix conj() const {
    CMatrix r(*this);
    for (auto& e : r.a_) e = std::conj(e);
    return r;
  }

  cplx trace() const {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  CMatrix& operator+=(const CMatrix& o) {
    detail::require_same_order(n_, o.n_, "CMatrix::+=");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    detail::require_same_order(n_, o.n_, "CMatrix::-=");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  CMatrix& operator*=(cplx s) {
    for (auto& e : a_) e *= s;
    return *this;
  }
  CMatrix& operator/=(cplx s) {
    for (auto& e : a_) e /= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator-(CMatrix a) { return a *= -1.0; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator/(CMatrix a, cplx s) { return a /= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    detail::require_same_order(a.n_, b.n_, "CMatrix::*");
    const std::size_t n = a.n_;
    CMatrix c(n);
    for (std::size_t j = 0; j < n; ++j) {
      cplx* cj = c.a_.data() + j * n;
      for (std::size_t k = 0; k < n; ++k) {
        const cplx bkj = b(k, j);
        if (bkj == cplx{0.0, 0.0}) continue;
        const cplx* ak = a.a_.data() + k * n;
        for (std::size_t i = 0; i < n; ++i) cj[i] += ak[i] * bkj;
      }
    }
    return c;
  }

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

inline CVector operator*(const CMatrix& m, const CVector& v) {
  detail::require_same_order(m.order(), v.dim(), "CMatrix*CVector");
  const std::size_t n = m.order();
  CVector r(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx vj = v[j];
    if (vj == cplx{0.0, 0.0}) continue;
    auto col = m.column(j);
    for (std::size_t i = 0; i < n; ++i) r[i] += col[i] * vj;
  }
  return r;
}

/// Tr(A B^*). Complex valued; the real part of (A, A) is the squared Frobenius norm.
inline cplx frobenius_inner(const CMatrix& a, const CMatrix& b) {
  detail::require_same_order(a.order(), b.order(), "frobenius_inner");
  cplx s{0.0, 0.0};
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) s += ea[k] * std::conj(eb[k]);
  return s;
}

inline double frobenius_norm_sq(const CMatrix& a) {
  double s = 0.0;
  for (const auto& e : a.entries()) s += std::norm(e);
  return s;
}

// Scaled so tiny and huge entries neither underflow nor overflow.
inline double frobenius_norm(const CMatrix& a) {
  double big = 0.0;
  for (const auto& e : a.entries()) big = std::max({big, std::abs(e.real()), std::abs(e.imag())});
  if (big == 0.0 || !std::isfinite(big)) return big;
  double s = 0.0;
  for (const auto& e : a.entries()) s += std::norm(e / big);
  return big * std::sqrt(s);
}

/// [A, B] = AB - BA.
inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  detail::require_same_order(a.order(), b.order(), "commutator");
  return a * b - b * a;
}

/// T_X(Y) = [X^*, [X, Y]].
inline CMatrix apply_TX(const CMatrix& x, const CMatrix& y) {
  detail::require_same_order(x.order(), y.order(), "apply_TX");
  return commutator(x.adjoint(), commutator(x, y));
}

/// X = hermitian + skew with hermitian = (X + X^*)/2 and skew = (X - X^*)/2.
struct HermSkew {
  CMatrix hermitian;
  CMatrix skew;
};

inline HermSkew herm_skew_split(const CMatrix& x) {
  const CMatrix xs = x.adjoint();
  return {0.5 * (x + xs), 0.5 * (x - xs)};
}

/// Column-major stacking (x11, ..., xn1, x12, ...).
inline CVector vec(const CMatrix& x) {
  auto e = x.entries();
  return CVector(std::vector<cplx>(e.begin(), e.end()));
}

/// Inverse of vec. The vector length must be a perfect square.
inline CMatrix unvec(const CVector& v) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.dim()))));
  if (n * n != v.dim()) throw PreconditionError("unvec: length " + std::to_string(v.dim()) + " is not a square");
  CMatrix x(n);
  std::copy(v.entries().begin(), v.entries().end(), x.entries().begin());
  return x;
}

/// Kronecker product; orders may differ, result has order a.order() * b.order().
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  CMatrix r(na * nb);
  for (std::size_t ja = 0; ja < na; ++ja)
    for (std::size_t ia = 0; ia < na; ++ia) {
      const cplx s = a(ia, ja);
      if (s == cplx{0.0, 0.0}) continue;
      for (std::size_t jb = 0; jb < nb; ++jb)
        for (std::size_t ib = 0; ib < nb; ++ib) r(ia * nb + ib, ja * nb + jb) = s * b(ib, jb);
    }
  return r;
}

/// ||M - M^*||, zero for Hermitian input.
inline double hermitian_defect(const CMatrix& m) {
  double s = 0.0;
  const std::size_t n = m.order();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) s += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(s);
}

/// Embed m into the leading block of an order-n zero matrix.
inline CMatrix embed(const CMatrix& m, std::size_t n) {
  if (m.order() > n) throw PreconditionError("embed: target order smaller than block");
  CMatrix r(n);
  for (std::size_t j = 0; j < m.order(); ++j)
    for (std::size_t i = 0; i < m.order(); ++i) r(i, j) = m(i, j);
  return r;
}

}  // namespace commspec

#endif  // COMMSPEC_MATRIX_HPP
