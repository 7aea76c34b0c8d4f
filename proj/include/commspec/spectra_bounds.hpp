#ifndef COMMSPEC_SPECTRA_BOUNDS_HPP
#define COMMSPEC_SPECTRA_BOUNDS_HPP

// Spectrum of T_X, its even pairing, and the ladder of proven eigenvalue bounds.
//
// All spectra are stored for the unit-norm matrix X / ||X||; `norm_scale` keeps
// ||X||^2 so callers can recover lambda(T_X) itself.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "commspec/eigensolver.hpp"
#include "commspec/lifted_operator.hpp"
#include "commspec/matrix.hpp"

namespace commspec {

/// Absolute slack allowed on every proven inequality at unit norm.
inline constexpr double kProvenSlack = 1e-8;

struct Cluster {
  double value = 0.0;
  std::size_t multiplicity = 0;
};

struct Spectrum {
  std::size_t n = 0;
  std::vector<double> values;  // descending, length n^2, unit-norm X
  std::vector<Cluster> clusters;
  bool pairing_ok = true;
  double norm_scale = 1.0;    // ||X||^2
  double cluster_tol = 1e-7;
  double trace_abs_sq = 0.0;  // |Tr X|^2 at unit norm

  std::vector<double> scaled() const {
    std::vector<double> out(values);
    for (auto& v : out) v *= norm_scale;
    return out;
  }
  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
  /// sum(values) - (2n - 2|Tr X|^2)
  double trace_residual() const {
    return sum() - (2.0 * static_cast<double>(n) - 2.0 * trace_abs_sq);
  }
};

inline double cluster_tolerance(double lambda1) { return std::max(1e-7, 1e-9 * lambda1); }

/// Groups a descending list into runs whose consecutive gaps are at most `tol`.
inline std::vector<Cluster> cluster_values(const std::vector<double>& values, double tol) {
  std::vector<Cluster> out;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i + 1;
    double sum = values[i];
    while (j < values.size() && values[j - 1] - values[j] <= tol) sum += values[j++];
    out.push_back({sum / static_cast<double>(j - i), j - i});
    i = j;
  }
  return out;
}

/// Builds a Spectrum from unit-norm eigenvalues (any order).
inline Spectrum make_spectrum(std::vector<double> values, std::size_t n, double norm_scale,
                              double trace_abs_sq) {
  std::sort(values.begin(), values.end(), std::greater<>());
  Spectrum s;
  s.n = n;
  s.values = std::move(values);
  s.norm_scale = norm_scale;
  s.trace_abs_sq = trace_abs_sq;
  s.cluster_tol = cluster_tolerance(s.values.empty() ? 0.0 : s.values.front());
  s.clusters = cluster_values(s.values, s.cluster_tol);
  s.pairing_ok = std::all_of(s.clusters.begin(), s.clusters.end(), [&](const Cluster& c) {
    return c.value <= s.cluster_tol || c.multiplicity % 2 == 0;
  });
  return s;
}

/// Eigenvalues of KX^* KX for X / ||X||.
inline Spectrum spectrum_TX(const CMatrix& x) {
  const double nx2 = frobenius_norm_sq(x);
  if (nx2 == 0.0) throw DegenerateInput("spectrum_TX: zero matrix");
  const CMatrix xh = x / std::sqrt(nx2);
  return make_spectrum(eigvalsh(lift_TX(xh)), x.order(), nx2, std::norm(xh.trace()));
}

/// Pairing map Y -> [X, Y]^* / sqrt(lambda). For a unit eigenvector Y of T_X with
/// eigenvalue lambda > 0 the result is another unit eigenvector orthogonal to Y.
inline CMatrix pair_partner(const CMatrix& x, const CMatrix& y, double lambda) {
  detail::require_same_order(x.order(), y.order(), "pair_partner");
  const double scale = std::max(1.0, frobenius_norm_sq(x));
  if (lambda <= 1e-7 * scale) throw DegenerateInput("pair_partner: eigenvalue is (numerically) zero");
  const double resid = frobenius_norm(apply_TX(x, y) - lambda * y);
  if (resid > 1e-7 * scale * std::max(1.0, frobenius_norm(y))) {
    throw PreconditionError("pair_partner: Y is not an eigenvector for lambda (residual " +
                            std::to_string(resid) + ")");
  }
  return commutator(x, y).adjoint() / std::sqrt(lambda);
}

/// prefix[i] = values[0] + ... + values[i].
inline std::vector<double> partial_sums(const std::vector<double>& values) {
  std::vector<double> out(values.size());
  std::partial_sum(values.begin(), values.end(), out.begin());
  return out;
}

inline std::vector<double> partial_sums(const Spectrum& s) { return partial_sums(s.values); }

/// {2^2, 1^(2n-4), 0^((n-1)^2+1)} in descending order.
inline std::vector<double> target_multiset(std::size_t n) {
  if (n < 2) throw PreconditionError("target_multiset: n must be at least 2");
  std::vector<double> t(n * n, 0.0);
  t[0] = 2.0;
  t[1] = 2.0;
  for (std::size_t i = 0; i < 2 * n - 4; ++i) t[2 + i] = 1.0;
  return t;
}

struct MajorizationResult {
  bool majorized = true;
  std::size_t worst_k = 1;    // 1-based prefix length with the largest excess
  double worst_excess = 0.0;  // max_k (prefix(values) - prefix(target))
};

inline constexpr double kMajorizationTol = 1e-8;

/// Weak majorization x < y: every prefix sum of x is at most the one of y.
inline MajorizationResult weak_majorization_check(const std::vector<double>& values,
                                                  const std::vector<double>& target) {
  if (values.size() != target.size()) throw OrderMismatch("weak_majorization_check: length mismatch");
  auto descending = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[i - 1] + 1e-12) return false;
    return true;
  };
  if (!descending(values) || !descending(target)) {
    throw PreconditionError("weak_majorization_check: inputs must be sorted descending");
  }
  MajorizationResult r;
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    sx += values[k];
    sy += target[k];
    const double excess = sx - sy;
    if (k == 0 || excess > r.worst_excess) {
      r.worst_excess = excess;
      r.worst_k = k + 1;
    }
  }
  r.majorized = r.worst_excess <= kMajorizationTol;
  return r;
}

/// One rung of the bound ladder: quantity <= bound.
struct BoundEntry {
  std::string name;
  double quantity = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool satisfied = true;
};

struct BoundReport {
  double norm_scale = 1.0;
  double lambda1 = 0.0;
  double bw = 2.0;
  double norm22 = 0.0;  // 2 (sigma_1^2 + sigma_2^2)
  double cx = 0.0;
  double min_bound = 0.0;
  std::vector<double> k1_entrywise;       // 2 lambda_i(K1)
  double lambda13_weak = 0.0;             // (4 + sqrt 10) / 2
  std::vector<double> partial_sum_weak;   // 2k + 1 + 2 sqrt k, k = 1..floor(n^2/2)
  double top4_split_estimate = 0.0;       // 4 (sigma_1^2 + sigma_2^2) + phi(X)
  std::vector<double> singular_values;    // of X / ||X||
  std::vector<double> herm_eigs;          // a_i
  std::vector<double> skew_eigs;          // b_i, eigenvalues of B are i b_i
  std::vector<BoundEntry> ladder;
  bool all_proven_hold = true;
};

namespace detail {

// Descending list {-p_i p_j : all i, j}, the spectrum of -P^t kron P for Hermitian P.
inline std::vector<double> negated_products(const std::vector<double>& p) {
  std::vector<double> out;
  out.reserve(p.size() * p.size());
  for (double a : p)
    for (double b : p) out.push_back(-a * b);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline double split_weight(const std::vector<double>& prods) {
  double v = 4.0 * prods[0];
  for (std::size_t i = 1; i < 3 && i < prods.size(); ++i) v += 2.0 * prods[i];
  return v;
}

}  // namespace detail

/// Evaluates the proven ladder against a precomputed spectrum of X.
inline BoundReport bound_report(const CMatrix& x, const Spectrum& spec) {
  const std::size_t n = x.order();
  const double nx2 = frobenius_norm_sq(x);
  if (nx2 == 0.0) throw DegenerateInput("bound_report: zero matrix");
  const CMatrix xh = x / std::sqrt(nx2);

  BoundReport r;
  r.norm_scale = nx2;
  const auto& lam = spec.values;
  r.lambda1 = lam.front();

  r.singular_values = singular_values(xh);
  const auto& sg = r.singular_values;
  const double s12 = sg[0] * sg[0] + (n > 1 ? sg[1] * sg[1] : 0.0);
  r.norm22 = 2.0 * s12;

  const auto parts = herm_skew_split(xh);
  r.herm_eigs = eigvalsh(parts.hermitian);
  r.skew_eigs = eigvalsh(cplx{0.0, -1.0} * parts.skew);
  const auto pa = detail::negated_products(r.herm_eigs);
  const auto pb = detail::negated_products(r.skew_eigs);
  r.cx = 2.0 * (pa.front() + pb.front()) + s12;
  r.min_bound = std::min(r.cx, r.norm22);

  // lambda(K1) = {sigma_i^2 + sigma_j^2}.
  std::vector<double> k1;
  k1.reserve(n * n);
  for (double a : sg)
    for (double b : sg) k1.push_back(a * a + b * b);
  std::sort(k1.begin(), k1.end(), std::greater<>());
  r.k1_entrywise.resize(k1.size());
  for (std::size_t i = 0; i < k1.size(); ++i) r.k1_entrywise[i] = 2.0 * k1[i];

  r.lambda13_weak = (4.0 + std::sqrt(10.0)) / 2.0;
  const auto prefix = partial_sums(lam);
  const std::size_t kmax = (n * n) / 2;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const double kd = static_cast<double>(k);
    r.partial_sum_weak.push_back(2.0 * kd + 1.0 + 2.0 * std::sqrt(kd));
  }
  r.top4_split_estimate = 4.0 * s12 + detail::split_weight(pa) + detail::split_weight(pb);

  auto add = [&](std::string name, double quantity, double bound) {
    BoundEntry e{std::move(name), quantity, bound, bound - quantity, true};
    e.satisfied = e.slack >= -kProvenSlack;
    r.all_proven_hold = r.all_proven_hold && e.satisfied;
    r.ladder.push_back(std::move(e));
  };
  add("bw", r.lambda1, r.bw);
  add("norm22", r.lambda1, r.norm22);
  add("cx", r.lambda1, r.cx);
  add("min_bound", r.lambda1, r.min_bound);

  // Entrywise rung: report the index with the smallest slack.
  std::size_t worst = 0;
  for (std::size_t i = 1; i < lam.size(); ++i)
    if (r.k1_entrywise[i] - lam[i] < r.k1_entrywise[worst] - lam[worst]) worst = i;
  add("k1_entrywise[" + std::to_string(worst + 1) + "]", lam[worst], r.k1_entrywise[worst]);

  if (lam.size() >= 3) add("lambda13_weak", lam[0] + lam[2], r.lambda13_weak);

  if (kmax >= 1) {
    std::size_t wk = 1;
    for (std::size_t k = 1; k <= kmax; ++k)
      if (r.partial_sum_weak[k - 1] - prefix[2 * k - 1] < r.partial_sum_weak[wk - 1] - prefix[2 * wk - 1])
        wk = k;
    add("partial_sum_weak[k=" + std::to_string(wk) + "]", prefix[2 * wk - 1], r.partial_sum_weak[wk - 1]);
  }
  if (lam.size() >= 4) add("top4_split", prefix[3], r.top4_split_estimate);
  return r;
}

inline BoundReport bound_report(const CMatrix& x) { return bound_report(x, spectrum_TX(x)); }

}  // namespace commspec

#endif  // COMMSPEC_SPECTRA_BOUNDS_HPP
