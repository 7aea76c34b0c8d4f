#ifndef COMMSPEC_EXTREMAL_SEARCH_HPP
#define COMMSPEC_EXTREMAL_SEARCH_HPP

// Maximization of f_k(X) = lambda_1(T_X) + ... + lambda_{2k}(T_X) over unit-norm X.
//
// Alternating ascent:
//   (a) for fixed X, the top-2k eigenvectors Y_i of T_X give sum ||[X, Y_i]||^2 = f_k(X);
//   (b) for fixed Y_i, sum ||[X, Y_i]||^2 = vec(X)^* (sum T_{Y_i}) vec(X) is maximized
//       over unit X by the top eigenvector of sum T_{Y_i}.
// Both half-steps are exact eigenproblems, so the objective never decreases.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "commspec/conjecture_lab.hpp"
#include "commspec/eigensolver.hpp"
#include "commspec/lifted_operator.hpp"
#include "commspec/parallel.hpp"
#include "commspec/random.hpp"
#include "commspec/spectra_bounds.hpp"

namespace commspec {

enum class InitKind { RandomGaussian, NormalClass, RankOne, UserMatrix };

inline std::string_view to_string(InitKind k) {
  switch (k) {
    case InitKind::RandomGaussian: return "random_gaussian";
    case InitKind::NormalClass: return "normal_class";
    case InitKind::RankOne: return "rank_one";
    case InitKind::UserMatrix: return "user_matrix";
  }
  return "?";
}

inline InitKind init_kind_from_string(std::string_view s) {
  for (auto k : {InitKind::RandomGaussian, InitKind::NormalClass, InitKind::RankOne, InitKind::UserMatrix})
    if (to_string(k) == s) return k;
  throw PreconditionError("unknown init kind '" + std::string(s) + "'");
}

struct SearchConfig {
  std::size_t n = 3;
  std::size_t k = 1;
  std::size_t restarts = 1;
  std::size_t max_iters = 500;
  double ascent_tol = 1e-12;   // relative objective increase counted as a stall
  std::size_t stall_iters = 3; // consecutive stalls before stopping
  std::uint64_t seed = 0;
  InitKind init = InitKind::RandomGaussian;
  std::optional<CMatrix> user_matrix;
  unsigned threads = 0;

  void validate() const {
    if (n < 2) throw PreconditionError("search: n must be at least 2");
    if (k < 1 || k > (n * n) / 2) throw PreconditionError("search: k must lie in [1, floor(n^2/2)]");
    if (restarts < 1) throw PreconditionError("search: restarts must be at least 1");
    if (max_iters < 1) throw PreconditionError("search: max_iters must be at least 1");
    if (init == InitKind::UserMatrix) {
      if (!user_matrix) throw PreconditionError("search: init user_matrix needs a matrix");
      if (user_matrix->order() != n) throw OrderMismatch("search: user matrix order differs from n");
      if (frobenius_norm_sq(*user_matrix) == 0.0) throw DegenerateInput("search: user matrix is zero");
    }
  }
};

/// Per-restart history in summary form.
struct RestartSummary {
  std::size_t index = 0;
  double first = 0.0;
  double last = 0.0;
  std::size_t iterations = 0;
  bool monotone_ok = true;
  bool proven_caps_ok = true;
  std::size_t degenerate_boundary = 0;  // iterations with lambda_{2k} ~ lambda_{2k+1}
  std::string error;                    // nonempty when the restart aborted
};

struct SearchResult {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  double best_objective = 0.0;
  CMatrix best_matrix;
  std::size_t best_restart = 0;
  double conjectured_bound = 0.0;  // 2k + 2
  double proven_bound = 0.0;       // min(2k + 1 + 2 sqrt k, 2n)
  double gap_to_conjecture = 0.0;  // conjectured_bound - best_objective
  std::size_t iterations_used = 0;
  bool monotone_ok = true;
  bool proven_caps_ok = true;
  std::vector<RestartSummary> restarts;
  std::optional<ViolationBundle> violation;
};

inline double conjectured_partial_sum_bound(std::size_t k) { return 2.0 * static_cast<double>(k) + 2.0; }

inline double proven_partial_sum_bound(std::size_t n, std::size_t k) {
  const double kd = static_cast<double>(k);
  return std::min(2.0 * kd + 1.0 + 2.0 * std::sqrt(kd), 2.0 * static_cast<double>(n));
}

/// f_k at unit norm.
inline double partial_sum_objective(const CMatrix& x, std::size_t k) {
  return partial_sums(spectrum_TX(x))[2 * k - 1];
}

inline CMatrix initial_matrix(const SearchConfig& cfg, Rng& rng) {
  switch (cfg.init) {
    case InitKind::RandomGaussian: return normalized(gaussian_complex(cfg.n, rng));
    case InitKind::NormalClass: return normalized(random_normal(cfg.n, rng));
    case InitKind::RankOne: return normalized(random_rank_one(cfg.n, rng));
    case InitKind::UserMatrix: return normalized(*cfg.user_matrix);
  }
  throw PreconditionError("search: unknown init kind");
}

namespace detail {

struct RestartOutcome {
  RestartSummary summary;
  CMatrix best;
  double best_value = -std::numeric_limits<double>::infinity();
};

inline RestartOutcome run_restart(const SearchConfig& cfg, std::size_t index) {
  RestartOutcome out;
  out.summary.index = index;
  const std::size_t n = cfg.n;
  const std::size_t nn = n * n;
  const std::size_t depth = 2 * cfg.k;
  const double proven = proven_partial_sum_bound(n, cfg.k);
  const double lam13_cap = (4.0 + std::sqrt(10.0)) / 2.0;

  Rng rng = Rng::stream(cfg.seed, index);
  CMatrix x = initial_matrix(cfg, rng);
  double prev = -std::numeric_limits<double>::infinity();
  std::size_t stalls = 0;

  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    // (a) top-2k eigenvectors of T_X.
    const auto ed = eigh(lift_TX(x));
    double f = 0.0;
    for (std::size_t i = 0; i < depth; ++i) f += ed.values[i];

    auto& s = out.summary;
    s.iterations = it + 1;
    if (it == 0) s.first = f;
    s.last = f;
    if (f < prev - 1e-10) s.monotone_ok = false;
    if (f > proven + kProvenSlack || ed.values[0] > 2.0 + kProvenSlack ||
        (nn >= 3 && ed.values[0] + ed.values[2] > lam13_cap + kProvenSlack)) {
      s.proven_caps_ok = false;
    }
    if (depth < nn && ed.values[depth - 1] - ed.values[depth] <= cluster_tolerance(ed.values[0])) {
      ++s.degenerate_boundary;
    }
    if (f > out.best_value) {
      out.best_value = f;
      out.best = x;
    }

    if (it > 0) {
      const double rel = (f - prev) / std::max(std::abs(f), std::numeric_limits<double>::min());
      stalls = rel < cfg.ascent_tol ? stalls + 1 : 0;
      if (stalls >= cfg.stall_iters) break;
    }
    prev = std::max(prev, f);
    if (it + 1 == cfg.max_iters) break;

    // (b) top eigenvector of sum_i T_{Y_i}.
    CMatrix acc(nn);
    for (std::size_t i = 0; i < depth; ++i) acc += lift_TX(unvec(column_vector(ed.vectors, i)));
    const auto top = eigh(acc);
    x = normalized(unvec(column_vector(top.vectors, 0)));
  }
  return out;
}

}  // namespace detail

/// Multi-restart alternating ascent. Restarts are independent streams of the root
/// seed; the best objective wins, ties going to the lowest restart index.
inline SearchResult ascend(const SearchConfig& cfg) {
  cfg.validate();
  std::vector<detail::RestartOutcome> outcomes(cfg.restarts);
  parallel_for(cfg.restarts, cfg.threads, [&](std::size_t i) {
    try {
      outcomes[i] = detail::run_restart(cfg, i);
    } catch (const Error& e) {
      outcomes[i].summary.index = i;
      outcomes[i].summary.error = e.what();
    }
  });

  SearchResult r;
  r.n = cfg.n;
  r.k = cfg.k;
  r.seed = cfg.seed;
  r.conjectured_bound = conjectured_partial_sum_bound(cfg.k);
  r.proven_bound = proven_partial_sum_bound(cfg.n, cfg.k);
  bool any = false;
  for (auto& o : outcomes) {
    r.iterations_used += o.summary.iterations;
    if (o.summary.error.empty()) {
      r.monotone_ok = r.monotone_ok && o.summary.monotone_ok;
      r.proven_caps_ok = r.proven_caps_ok && o.summary.proven_caps_ok;
      if (!any || o.best_value > r.best_objective) {
        r.best_objective = o.best_value;
        r.best_matrix = o.best;
        r.best_restart = o.summary.index;
        any = true;
      }
    }
    r.restarts.push_back(std::move(o.summary));
  }
  if (!any) throw ConvergenceError("search: every restart failed", std::numeric_limits<double>::quiet_NaN());
  r.gap_to_conjecture = r.conjectured_bound - r.best_objective;
  if (r.best_objective > r.conjectured_bound + 1e-6) {
    ViolationBundle b;
    b.id = ConjectureId::C2A;
    b.n = cfg.n;
    b.m = 1;
    b.matrices = {r.best_matrix};
    b.k = cfg.k;
    b.lhs = r.best_objective;
    b.rhs = r.conjectured_bound;
    b.seed = cfg.seed;
    r.violation = std::move(b);
  }
  return r;
}

struct Lambda13Result {
  SearchResult search;
  double lambda13 = 0.0;         // f_2 / 2 at the best matrix
  double lambda13_direct = 0.0;  // lambda_1 + lambda_3 read off the spectrum
  double proven_cap = (4.0 + std::sqrt(10.0)) / 2.0;
  bool within_proven_cap = true;
  bool exceeds_conjecture = false;  // lambda13 > 3 + 1e-6
};

/// lambda_1 + lambda_3 maximization through f_2 / 2 (positive eigenvalues come in pairs).
inline Lambda13Result lambda13_search(std::size_t n, std::size_t restarts, std::uint64_t seed,
                                      std::size_t max_iters = 500, unsigned threads = 0) {
  SearchConfig cfg;
  cfg.n = n;
  cfg.k = 2;
  cfg.restarts = restarts;
  cfg.seed = seed;
  cfg.max_iters = max_iters;
  cfg.threads = threads;
  Lambda13Result r;
  r.search = ascend(cfg);
  r.lambda13 = r.search.best_objective / 2.0;
  const auto spec = spectrum_TX(r.search.best_matrix);
  r.lambda13_direct = spec.values[0] + spec.values[2];
  r.within_proven_cap = r.lambda13 <= r.proven_cap + kProvenSlack;
  r.exceeds_conjecture = r.lambda13 > 3.0 + 1e-6;
  return r;
}

// ---------------------------------------------------------------------------
// Batch monitoring over random ensembles.

struct SweepConfig {
  std::size_t n_min = 2;
  std::size_t n_max = 5;
  std::size_t k = 0;  // 0: every k in [1, floor(n^2/2)]
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct SweepEntry {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  double max_f = 0.0;
  CMatrix argmax_matrix;
  double bound_conjectured = 0.0;
  double bound_proven = 0.0;
  std::vector<ViolationBundle> violations;
};

struct MajorizationEntry {
  std::size_t n = 0;
  std::size_t trials = 0;
  double max_excess = 0.0;
  std::vector<ViolationBundle> violations;
};

struct SweepReport {
  std::uint64_t seed = 0;
  std::vector<SweepEntry> entries;
  std::vector<MajorizationEntry> majorization;
  std::size_t proven_failures = 0;
  std::size_t failed_trials = 0;
};

/// Trial t at order n: even trials real Gaussian, odd trials complex Gaussian, unit norm.
inline CMatrix sweep_matrix(std::uint64_t seed, std::size_t n, std::size_t trial) {
  Rng rng = Rng::stream(seed, (static_cast<std::uint64_t>(n) << 40) | trial);
  return normalized(trial % 2 == 0 ? gaussian_real(n, rng) : gaussian_complex(n, rng));
}

inline SweepReport sweep(const SweepConfig& cfg) {
  if (cfg.n_min < 2 || cfg.n_max < cfg.n_min) throw PreconditionError("sweep: need 2 <= n_min <= n_max");
  SweepReport rep;
  rep.seed = cfg.seed;
  if (cfg.trials == 0) return rep;

  struct Trial {
    std::vector<double> prefix;
    double excess = 0.0;
    bool proven_ok = true;
    bool failed = false;
  };

  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    const std::size_t kmax = (n * n) / 2;
    if (cfg.k > kmax) throw PreconditionError("sweep: k exceeds floor(n^2/2)");
    std::vector<Trial> trials(cfg.trials);
    const auto target = target_multiset(n);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
      try {
        const CMatrix x = sweep_matrix(cfg.seed, n, t);
        const auto spec = spectrum_TX(x);
        trials[t].prefix = partial_sums(spec);
        trials[t].excess = weak_majorization_check(spec.values, target).worst_excess;
        trials[t].proven_ok = bound_report(x, spec).all_proven_hold;
      } catch (const Error&) {
        trials[t].failed = true;
      }
    });

    MajorizationEntry maj;
    maj.n = n;
    maj.trials = cfg.trials;
    maj.max_excess = -std::numeric_limits<double>::infinity();
    const std::size_t k_lo = cfg.k ? cfg.k : 1;
    const std::size_t k_hi = cfg.k ? cfg.k : kmax;
    std::vector<SweepEntry> entries;
    std::vector<std::size_t> argmax(k_hi - k_lo + 1, 0);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
      SweepEntry e;
      e.n = n;
      e.k = k;
      e.trials = cfg.trials;
      e.max_f = -std::numeric_limits<double>::infinity();
      e.bound_conjectured = conjectured_partial_sum_bound(k);
      e.bound_proven = proven_partial_sum_bound(n, k);
      entries.push_back(std::move(e));
    }

    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto& tr = trials[t];
      if (tr.failed) {
        ++rep.failed_trials;
        continue;
      }
      if (!tr.proven_ok) ++rep.proven_failures;
      for (std::size_t k = k_lo; k <= k_hi; ++k) {
        auto& e = entries[k - k_lo];
        const double f = tr.prefix[2 * k - 1];
        if (f > e.max_f) {
          e.max_f = f;
          argmax[k - k_lo] = t;
        }
        if (f > e.bound_conjectured + kVerdictTol) {
          auto v = check_partial_sums(sweep_matrix(cfg.seed, n, t));
          v.witness->seed = cfg.seed;
          e.violations.push_back(*v.witness);
        }
      }
      maj.max_excess = std::max(maj.max_excess, tr.excess);
      if (tr.excess > kMajorizationTol) {
        auto v = check_majorization(sweep_matrix(cfg.seed, n, t));
        v.witness->seed = cfg.seed;
        maj.violations.push_back(*v.witness);
      }
    }
    for (std::size_t k = k_lo; k <= k_hi; ++k) entries[k - k_lo].argmax_matrix = sweep_matrix(cfg.seed, n, argmax[k - k_lo]);
    rep.entries.insert(rep.entries.end(), std::make_move_iterator(entries.begin()),
                       std::make_move_iterator(entries.end()));
    rep.majorization.push_back(std::move(maj));
  }
  return rep;
}

}  // namespace commspec

#endif  // COMMSPEC_EXTREMAL_SEARCH_HPP
