#ifndef COMMSPEC_CONJECTURE_LAB_HPP
#define COMMSPEC_CONJECTURE_LAB_HPP

// Checkers for the commutator-estimate conjectures and the scalar lemmas behind
// them. Each checker evaluates both sides of its inequality together with the
// residual of its hypotheses and returns a ConjectureVerdict. A failed verdict
// carries a ViolationBundle that holds every input needed to recompute it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commspec/eigensolver.hpp"
#include "commspec/random.hpp"
#include "commspec/spectra_bounds.hpp"

namespace commspec {

enum class ConjectureId { C1, C2, C2A, C2C, C4, LuLemma, NumbersLemma, Isotropic };

inline std::string_view to_string(ConjectureId id) {
  switch (id) {
    case ConjectureId::C1: return "C1";
    case ConjectureId::C2: return "C2";
    case ConjectureId::C2A: return "C2A";
    case ConjectureId::C2C: return "C2C";
    case ConjectureId::C4: return "C4";
    case ConjectureId::LuLemma: return "LU_LEMMA";
    case ConjectureId::NumbersLemma: return "NUMBERS_LEMMA";
    case ConjectureId::Isotropic: return "ISOTROPIC";
  }
  return "?";
}

inline ConjectureId conjecture_id_from_string(std::string_view s) {
  for (auto id : {ConjectureId::C1, ConjectureId::C2, ConjectureId::C2A, ConjectureId::C2C, ConjectureId::C4,
                  ConjectureId::LuLemma, ConjectureId::NumbersLemma, ConjectureId::Isotropic})
    if (to_string(id) == s) return id;
  throw PreconditionError("unknown conjecture id '" + std::string(s) + "'");
}

/// lhs <= rhs + kVerdictTol counts as satisfied.
inline constexpr double kVerdictTol = 1e-8;
/// Largest accepted residual of the trace/orthogonality hypotheses.
inline constexpr double kHypothesisTol = 1e-8;

using RealGrid = std::vector<std::vector<double>>;

/// Everything needed to recompute a verdict from scratch.
struct ViolationBundle {
  ConjectureId id = ConjectureId::C1;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<CMatrix> matrices;
  double lhs = 0.0;
  double rhs = 0.0;
  double hypotheses_residual = 0.0;
  std::uint64_t seed = 0;
  // Scalar-lemma inputs and the partial-sum depth, when relevant.
  std::optional<std::size_t> k;
  std::vector<cplx> etas;
  std::vector<double> omegas;
  RealGrid r;
};

struct ConjectureVerdict {
  ConjectureId id = ConjectureId::C1;
  double hypotheses_residual = 0.0;
  bool hypotheses_ok = true;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;
  std::optional<std::size_t> k;  // worst partial-sum depth for C2A / C4
  std::optional<ViolationBundle> witness;
};

namespace detail {

inline ConjectureVerdict finish(ConjectureId id, double hyp, double lhs, double rhs, ViolationBundle bundle) {
  ConjectureVerdict v;
  v.id = id;
  v.hypotheses_residual = hyp;
  v.hypotheses_ok = hyp <= kHypothesisTol;
  v.lhs = lhs;
  v.rhs = rhs;
  v.satisfied = lhs <= rhs + kVerdictTol;
  if (!v.satisfied) {
    bundle.id = id;
    bundle.lhs = lhs;
    bundle.rhs = rhs;
    bundle.hypotheses_residual = hyp;
    v.witness = std::move(bundle);
  }
  return v;
}

inline void require_family(const std::vector<CMatrix>& bs, std::size_t n, const char* op) {
  for (const auto& b : bs) require_same_order(b.order(), n, op);
}

// |Tr(A [B, C])| / (||A|| ||B|| ||C||), zero when any factor vanishes.
inline double triple_residual(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
  const double s = frobenius_norm(a) * frobenius_norm(b) * frobenius_norm(c);
  if (s == 0.0) return 0.0;
  return std::abs((a * commutator(b, c)).trace()) / s;
}

// Worst |Tr(B_a B_b^*)| / (||B_a|| ||B_b||) over a != b.
inline double orthogonality_residual(const std::vector<CMatrix>& bs) {
  double worst = 0.0;
  for (std::size_t a = 0; a < bs.size(); ++a)
    for (std::size_t b = a + 1; b < bs.size(); ++b) {
      const double s = frobenius_norm(bs[a]) * frobenius_norm(bs[b]);
      if (s > 0.0) worst = std::max(worst, std::abs(frobenius_inner(bs[a], bs[b])) / s);
    }
  return worst;
}

inline ViolationBundle bundle_of(std::size_t n, std::vector<CMatrix> mats) {
  ViolationBundle b;
  b.n = n;
  b.m = mats.size();
  b.matrices = std::move(mats);
  return b;
}

}  // namespace detail

/// sum_{a,b} ||[B_a, B_b]||^2 <= (sum_a ||B_a||^2)^2 under Tr(B_a [B_c, B_b]) = 0.
inline ConjectureVerdict check_conj1(const std::vector<CMatrix>& bs) {
  if (bs.empty()) throw PreconditionError("check_conj1: empty family");
  const std::size_t n = bs.front().order();
  detail::require_family(bs, n, "check_conj1");
  double hyp = 0.0;
  for (const auto& a : bs)
    for (const auto& b : bs)
      for (const auto& c : bs) hyp = std::max(hyp, detail::triple_residual(a, c, b));
  double lhs = 0.0, energy = 0.0;
  for (std::size_t a = 0; a < bs.size(); ++a) {
    energy += frobenius_norm_sq(bs[a]);
    for (std::size_t b = 0; b < bs.size(); ++b)
      if (a != b) lhs += frobenius_norm_sq(commutator(bs[a], bs[b]));
  }
  return detail::finish(ConjectureId::C1, hyp, lhs, energy * energy, detail::bundle_of(n, bs));
}

namespace detail {

inline ConjectureVerdict check_conj2_impl(const CMatrix& b, const std::vector<CMatrix>& bs, bool with_isotropy,
                                          ConjectureId id) {
  if (bs.empty()) throw PreconditionError("check_conj2: empty family");
  const std::size_t n = b.order();
  require_family(bs, n, "check_conj2");
  if (frobenius_norm_sq(b) == 0.0) throw DegenerateInput("check_conj2: B must be nonzero");
  for (const auto& m : bs)
    if (frobenius_norm_sq(m) == 0.0) throw DegenerateInput("check_conj2: family members must be nonzero");

  double hyp = orthogonality_residual(bs);
  if (with_isotropy) {
    for (const auto& a : bs)
      for (const auto& c : bs) hyp = std::max(hyp, triple_residual(a, b, c));
  }
  double lhs = 0.0, sum = 0.0, mx = 0.0;
  for (const auto& m : bs) {
    lhs += frobenius_norm_sq(commutator(b, m));
    const double e = frobenius_norm_sq(m);
    sum += e;
    mx = std::max(mx, e);
  }
  const double coeff = with_isotropy ? 1.0 : 2.0;
  std::vector<CMatrix> all{b};
  all.insert(all.end(), bs.begin(), bs.end());
  return finish(id, hyp, lhs, (coeff * mx + sum) * frobenius_norm_sq(b), bundle_of(n, std::move(all)));
}

}  // namespace detail

/// sum ||[B, B_a]||^2 <= (max ||B_a||^2 + sum ||B_a||^2) ||B||^2 under pairwise
/// trace-orthogonality of the B_a and Tr(B_a [B, B_b]) = 0.
inline ConjectureVerdict check_conj2(const CMatrix& b, const std::vector<CMatrix>& bs) {
  return detail::check_conj2_impl(b, bs, true, ConjectureId::C2);
}

/// As check_conj2 without the Tr(B_a [B, B_b]) = 0 hypothesis and with 2 max ||B_a||^2.
inline ConjectureVerdict check_conj2C(const CMatrix& b, const std::vector<CMatrix>& bs) {
  return detail::check_conj2_impl(b, bs, false, ConjectureId::C2C);
}

/// sum_{i<=2k} lambda_i(T_X) <= 2k + 2 for every k; reports the tightest k.
inline ConjectureVerdict check_partial_sums(const CMatrix& x, const Spectrum& spec) {
  const auto prefix = partial_sums(spec);
  const std::size_t kmax = prefix.size() / 2;
  std::size_t wk = 1;
  for (std::size_t k = 1; k <= kmax; ++k)
    if (prefix[2 * k - 1] - (2.0 * k + 2.0) > prefix[2 * wk - 1] - (2.0 * wk + 2.0)) wk = k;
  const double lhs = kmax ? prefix[2 * wk - 1] : 0.0;
  auto b = detail::bundle_of(x.order(), {x});
  b.k = wk;
  auto v = detail::finish(ConjectureId::C2A, 0.0, lhs, 2.0 * wk + 2.0, std::move(b));
  v.k = wk;
  return v;
}

inline ConjectureVerdict check_partial_sums(const CMatrix& x) { return check_partial_sums(x, spectrum_TX(x)); }

/// Weak majorization of lambda(T_X) by {2^2, 1^(2n-4), 0^((n-1)^2+1)}.
inline ConjectureVerdict check_majorization(const CMatrix& x, const Spectrum& spec) {
  const auto target = target_multiset(x.order());
  const auto mr = weak_majorization_check(spec.values, target);
  const auto px = partial_sums(spec.values);
  const auto pt = partial_sums(target);
  auto b = detail::bundle_of(x.order(), {x});
  b.k = mr.worst_k;
  auto v = detail::finish(ConjectureId::C4, 0.0, px[mr.worst_k - 1], pt[mr.worst_k - 1], std::move(b));
  v.k = mr.worst_k;
  return v;
}

inline ConjectureVerdict check_majorization(const CMatrix& x) { return check_majorization(x, spectrum_TX(x)); }

/// Shifts to zero mean and scales to unit energy.
inline std::vector<cplx> center_and_normalize(std::vector<cplx> etas) {
  if (etas.empty()) throw PreconditionError("center_and_normalize: empty input");
  cplx mean{0.0, 0.0};
  for (const auto& e : etas) mean += e;
  mean /= static_cast<double>(etas.size());
  double energy = 0.0;
  for (auto& e : etas) {
    e -= mean;
    energy += std::norm(e);
  }
  if (energy == 0.0) throw DegenerateInput("center_and_normalize: all entries equal");
  for (auto& e : etas) e /= std::sqrt(energy);
  return etas;
}

namespace detail {

inline ConjectureVerdict check_lu_impl(const std::vector<cplx>& etas, const RealGrid& r, bool binary) {
  const std::size_t n = etas.size();
  if (r.size() != n) throw PreconditionError("check_lu_lemma: r must be n x n");
  cplx total{0.0, 0.0};
  double energy = 0.0;
  for (const auto& e : etas) {
    total += e;
    energy += std::norm(e);
  }
  const double hyp = std::max(std::abs(total), std::abs(energy - 1.0));
  if (hyp > 1e-10) {
    throw PreconditionError("check_lu_lemma: need sum eta = 0 and sum |eta|^2 = 1 (residual " +
                            std::to_string(hyp) + ")");
  }
  double lhs = 0.0, sum = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i].size() != n) throw PreconditionError("check_lu_lemma: r must be n x n");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = r[i][j];
      if (binary ? (w != 0.0 && w != 1.0) : !(w >= 0.0)) {
        throw PreconditionError(binary ? "check_lu_lemma: r entries must be 0 or 1"
                                       : "check_lu_lemma: weights must be nonnegative");
      }
      lhs += std::norm(etas[i] - etas[j]) * w;
      sum += w;
      mx = std::max(mx, w);
    }
  }
  ViolationBundle b;
  b.n = n;
  b.etas = etas;
  b.r = r;
  return finish(ConjectureId::LuLemma, hyp, lhs, sum + mx, std::move(b));
}

}  // namespace detail

/// sum_{i<j} |eta_i - eta_j|^2 r_ij <= sum r_ij + max r_ij with r_ij in {0, 1}
/// (upper triangle of r is read), for centered unit-energy eta.
inline ConjectureVerdict check_lu_lemma(const std::vector<cplx>& etas, const RealGrid& r) {
  return detail::check_lu_impl(etas, r, true);
}

/// Same inequality with arbitrary nonnegative weights.
inline ConjectureVerdict check_lu_lemma_weighted(const std::vector<cplx>& etas, const RealGrid& r) {
  return detail::check_lu_impl(etas, r, false);
}

/// sum eta_i omega_j r_ij <= sqrt(m) / 2 where m = sum r_ij, for nonnegative
/// eta, omega with sum eta^2 + sum omega^2 = 1 and r_ij in {0, 1}.
inline ConjectureVerdict check_numbers_lemma(const std::vector<double>& etas, const std::vector<double>& omegas,
                                             const RealGrid& r) {
  double energy = 0.0;
  for (double e : etas) {
    if (!(e >= 0.0)) throw PreconditionError("check_numbers_lemma: eta must be nonnegative");
    energy += e * e;
  }
  for (double w : omegas) {
    if (!(w >= 0.0)) throw PreconditionError("check_numbers_lemma: omega must be nonnegative");
    energy += w * w;
  }
  const double hyp = std::abs(energy - 1.0);
  if (hyp > 1e-10) throw PreconditionError("check_numbers_lemma: need sum eta^2 + sum omega^2 = 1");
  if (r.size() != etas.size()) throw PreconditionError("check_numbers_lemma: r must be n1 x n2");
  double lhs = 0.0, m = 0.0;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (r[i].size() != omegas.size()) throw PreconditionError("check_numbers_lemma: r must be n1 x n2");
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      const double w = r[i][j];
      if (w != 0.0 && w != 1.0) throw PreconditionError("check_numbers_lemma: r entries must be 0 or 1");
      lhs += etas[i] * omegas[j] * w;
      m += w;
    }
  }
  ViolationBundle b;
  b.n = etas.size();
  b.m = omegas.size();
  for (double e : etas) b.etas.emplace_back(e, 0.0);
  b.omegas = omegas;
  b.r = r;
  return detail::finish(ConjectureId::NumbersLemma, hyp, lhs, std::sqrt(m) / 2.0, std::move(b));
}

/// Largest |frobenius_inner([X, w_i]^*, w_j)| / ||X|| over the basis.
inline double isotropy_residual(const CMatrix& x, const std::vector<CMatrix>& w) {
  const double nx = frobenius_norm(x);
  if (nx == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& wi : w) {
    const CMatrix s = commutator(x, wi).adjoint();
    for (const auto& wj : w) worst = std::max(worst, std::abs(frobenius_inner(s, wj)) / nx);
  }
  return worst;
}

inline double orthonormality_residual(const std::vector<CMatrix>& w) {
  double worst = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) {
      const cplx target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(frobenius_inner(w[i], w[j]) - target));
    }
  return worst;
}

/// Tr T_X restricted to an isotropic W is at most lambda_1 + lambda_3 + ... + lambda_{2m-1}.
inline ConjectureVerdict check_isotropic_trace_bound(const CMatrix& x, const std::vector<CMatrix>& w) {
  if (w.empty()) throw PreconditionError("check_isotropic_trace_bound: empty basis");
  detail::require_family(w, x.order(), "check_isotropic_trace_bound");
  const double ortho = orthonormality_residual(w);
  const double iso = isotropy_residual(x, w);

  double lhs = 0.0;
  for (const auto& wi : w) lhs += frobenius_inner(apply_TX(x, wi), wi).real();
  double rhs = 0.0;
  if (frobenius_norm_sq(x) > 0.0) {
    const auto lam = spectrum_TX(x).scaled();
    for (std::size_t i = 0; i < w.size() && 2 * i < lam.size(); ++i) rhs += lam[2 * i];
  }
  std::vector<CMatrix> all{x};
  all.insert(all.end(), w.begin(), w.end());
  return detail::finish(ConjectureId::Isotropic, std::max(ortho, iso), lhs, rhs,
                        detail::bundle_of(x.order(), std::move(all)));
}

namespace detail {

// Orthonormalizes v against `basis` (two passes); returns the remaining norm.
inline double orthogonalize(CVector& v, const std::vector<CVector>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) {
      const cplx p = inner(v, b);
      for (std::size_t i = 0; i < v.dim(); ++i) v[i] -= p * b[i];
    }
  return norm(v);
}

}  // namespace detail

/// k unit eigenvectors B_1..B_k of T_X with B_a belonging to lambda_{2a-1}, chosen
/// cluster by cluster so that each pick is orthogonal to the earlier picks and to
/// their pairing partners. The family is then isotropic and orthonormal.
inline std::vector<CMatrix> isotropic_eigen_family(const CMatrix& x, std::size_t k) {
  const std::size_t nn = x.order() * x.order();
  if (k == 0 || 2 * k > nn) throw PreconditionError("isotropic_eigen_family: need 1 <= k <= n^2/2");
  const double nx2 = frobenius_norm_sq(x);
  if (nx2 == 0.0) throw DegenerateInput("isotropic_eigen_family: zero matrix");
  const CMatrix xh = x / std::sqrt(nx2);
  const auto ed = eigh(lift_TX(xh));
  const double tol = cluster_tolerance(ed.values.front());

  std::vector<CMatrix> family;
  std::vector<CVector> used;
  std::size_t start = 0;
  while (family.size() < k && start < nn) {
    std::size_t end = start + 1;
    while (end < nn && ed.values[end - 1] - ed.values[end] <= tol) ++end;
    const double lam = ed.values[start];
    const bool positive = lam > tol;
    const std::size_t quota = positive ? (end - start) / 2 : end - start;
    for (std::size_t taken = 0; taken < quota && family.size() < k; ++taken) {
      // Column of the cluster with the largest component outside `used`.
      CVector v;
      double r = 0.0;
      for (std::size_t c = start; c < end; ++c) {
        CVector cand = column_vector(ed.vectors, c);
        const double rc = detail::orthogonalize(cand, used);
        if (rc > r + 1e-12) {
          r = rc;
          v = std::move(cand);
        }
      }
      if (r < 1e-6) break;
      v *= 1.0 / r;
      used.push_back(v);
      const CMatrix w = unvec(v);
      family.push_back(w);
      if (positive) {
        CVector p = vec(commutator(xh, w).adjoint());
        const double rp = detail::orthogonalize(p, used);
        p *= 1.0 / rp;
        used.push_back(p);
      }
    }
    start = end;
  }
  return family;
}

/// Random orthonormal isotropic family of size m: each new member is a complex
/// Gaussian projected off the earlier members and their images [X, w]^*.
/// Tr(w_i [X, w_j]) is antisymmetric in i, j, so this is enough for isotropy.
inline std::vector<CMatrix> random_isotropic_basis(const CMatrix& x, std::size_t m, Rng& rng) {
  const std::size_t nn = x.order() * x.order();
  if (2 * m > nn) throw PreconditionError("random_isotropic_basis: need 2m <= n^2");
  std::vector<CMatrix> out;
  std::vector<CVector> used;
  while (out.size() < m) {
    CVector v = vec(gaussian_complex(x.order(), rng));
    const double r = detail::orthogonalize(v, used);
    if (r < 1e-3) continue;
    v *= 1.0 / r;
    used.push_back(v);
    const CMatrix w = unvec(v);
    out.push_back(w);
    CVector p = vec(commutator(x, w).adjoint());
    const double rp = detail::orthogonalize(p, used);
    if (rp > 1e-9 * std::max(1.0, frobenius_norm(x))) {
      p *= 1.0 / rp;
      used.push_back(p);
    }
  }
  return out;
}

/// Returns (sum_{i<=2k} lambda_i(T_X), 2 * lhs of check_conj2 on the isotropic
/// eigenvector family) at unit norm; the two agree when the family is exact.
inline std::pair<double, double> cross_check_formulations(const CMatrix& x, std::size_t k) {
  const auto spec = spectrum_TX(x);
  if (k == 0 || 2 * k > spec.values.size()) throw PreconditionError("cross_check_formulations: need 1 <= k <= n^2/2");
  const CMatrix xh = x / std::sqrt(spec.norm_scale);
  const auto prefix = partial_sums(spec);
  const auto family = isotropic_eigen_family(xh, k);
  const auto v = check_conj2(xh, family);
  return {prefix[2 * k - 1], 2.0 * v.lhs};
}

/// Recomputes a verdict from the inputs stored in a bundle.
inline ConjectureVerdict reverify(const ViolationBundle& b) {
  auto need = [&](std::size_t count) {
    if (b.matrices.size() < count) throw PreconditionError("reverify: bundle holds too few matrices");
  };
  switch (b.id) {
    case ConjectureId::C1: need(1); return check_conj1(b.matrices);
    case ConjectureId::C2:
    case ConjectureId::C2C: {
      need(2);
      std::vector<CMatrix> rest(b.matrices.begin() + 1, b.matrices.end());
      return b.id == ConjectureId::C2 ? check_conj2(b.matrices[0], rest) : check_conj2C(b.matrices[0], rest);
    }
    case ConjectureId::C2A: need(1); return check_partial_sums(b.matrices[0]);
    case ConjectureId::C4: need(1); return check_majorization(b.matrices[0]);
    case ConjectureId::LuLemma: return check_lu_lemma_weighted(b.etas, b.r);
    case ConjectureId::NumbersLemma: {
      std::vector<double> etas;
      for (const auto& e : b.etas) etas.push_back(e.real());
      return check_numbers_lemma(etas, b.omegas, b.r);
    }
    case ConjectureId::Isotropic: {
      need(2);
      std::vector<CMatrix> w(b.matrices.begin() + 1, b.matrices.end());
      return check_isotropic_trace_bound(b.matrices[0], w);
    }
  }
  throw PreconditionError("reverify: unknown conjecture id");
}

}  // namespace commspec

#endif  // COMMSPEC_CONJECTURE_LAB_HPP
