#ifndef COMMSPEC_LIFTED_OPERATOR_HPP
#define COMMSPEC_LIFTED_OPERATOR_HPP

// Kronecker lifts of Y -> [X, Y] and of T_X onto C^{n^2}.
//
//   KX     = I kron X - X^t kron I          vec([X, Y]) = KX vec(Y)
//   K1     = I kron X^*X + conj(X) X^t kron I
//   K2     = -X^t kron X^* - conj(X) kron X  KX^* KX = K1 + K2
//   K3     = -X^t kron X^*                  K2 = K3 + K3^*
//   KX_hat = I kron X + X^t kron I          K1 - K2 = KX_hat^* KX_hat

#include <algorithm>
#include <cmath>
#include <vector>

#include "commspec/eigensolver.hpp"
#include "commspec/matrix.hpp"

namespace commspec {

struct LiftedOperators {
  std::size_t n = 0;
  CMatrix KX;
  CMatrix K1;
  CMatrix K2;
  CMatrix K3;
  CMatrix KX_hat;
};

/// Just KX, the matrix of Y -> [X, Y] in the vec basis.
inline CMatrix lift_commutator(const CMatrix& x) {
  const CMatrix id = CMatrix::identity(x.order());
  return kron(id, x) - kron(x.transpose(), id);
}

/// KX^* KX, the matrix of T_X in the vec basis.
inline CMatrix lift_TX(const CMatrix& x) {
  const CMatrix k = lift_commutator(x);
  return k.adjoint() * k;
}

inline LiftedOperators build_lifted(const CMatrix& x) {
  const std::size_t n = x.order();
  const CMatrix id = CMatrix::identity(n);
  const CMatrix xt = x.transpose();
  const CMatrix xs = x.adjoint();
  const CMatrix xb = x.conj();

  LiftedOperators out;
  out.n = n;
  out.KX = kron(id, x) - kron(xt, id);
  out.K1 = kron(id, xs * x) + kron(xb * xt, id);
  out.K3 = -kron(xt, xs);
  out.K2 = out.K3 - kron(xb, x);
  out.KX_hat = kron(id, x) + kron(xt, id);
  return out;
}

/// ||vec([X, Y]) - KX vec(Y)||.
inline double verify_vec_identity(const CMatrix& x, const CMatrix& y) {
  detail::require_same_order(x.order(), y.order(), "verify_vec_identity");
  const CVector lhs = vec(commutator(x, y));
  const CVector rhs = lift_commutator(x) * vec(y);
  return norm(lhs - rhs);
}

/// Compares the singular values of KX with those of I kron L - (L kron I)(Q^t kron Q^*),
/// where X = Q1 L Q2 is an SVD and Q = Q2 Q1. Returns the largest discrepancy.
inline double svd_lift_equivalence(const CMatrix& x) {
  const std::size_t n = x.order();
  const auto sv = svd(x);
  // X = left * L * right^*, so Q1 = left and Q2 = right^*.
  const CMatrix q = sv.right.adjoint() * sv.left;
  std::vector<cplx> diag(sv.values.begin(), sv.values.end());
  const CMatrix lam = CMatrix::diagonal(diag);
  const CMatrix id = CMatrix::identity(n);
  const CMatrix reduced = kron(id, lam) - kron(lam, id) * kron(q.transpose(), q.adjoint());

  const auto a = singular_values(lift_commutator(x));
  const auto b = singular_values(reduced);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace commspec

#endif  // COMMSPEC_LIFTED_OPERATOR_HPP
