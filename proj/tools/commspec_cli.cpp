// commspec: spectra, bounds, conjecture checks and extremal search for T_X(Y) = [X*, [X, Y]].
//
// Exit codes: 0 success, 1 conjecture violation, 2 input or hypothesis error,
// 3 numerical failure.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commspec/commspec.hpp"

using namespace commspec;

namespace {

enum Exit { kOk = 0, kViolation = 1, kInputError = 2, kNumericalFailure = 3 };

struct Globals {
  bool json_out = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out;
  bool timing = false;
  unsigned threads = 0;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
  return buf;
}

void print_matrix(std::ostream& os, const CMatrix& m, const char* indent = "  ") {
  for (std::size_t i = 0; i < m.order(); ++i) {
    os << indent;
    for (std::size_t j = 0; j < m.order(); ++j) os << (j ? "  " : "") << fmt(m(i, j));
    os << "\n";
  }
}

void print_values(std::ostream& os, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << fmt(v[i]);
  os << "\n";
}

// Digest of the command, its parameters and the bytes of every input file.
class Digest {
 public:
  void add(std::string_view s) {
    h_ = fnv1a64(s, h_);
    h_ = fnv1a64(std::string_view("\0", 1), h_);
  }
  std::string hex() const { return hex64(h_); }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::uint64_t resolve_seed(const Globals& g) {
  if (g.seed) return *g.seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "commspec: no --seed given, using seed " << s << "\n";
  return s;
}

struct Outcome {
  RunReport report;
  std::string human;
};

CMatrix load(const std::string& path, Digest& d) {
  const std::string bytes = read_file(path);
  d.add(bytes);
  try {
    return parse_matrix(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

Outcome cmd_spectrum(const std::string& path) {
  Outcome o;
  Digest d;
  d.add("spectrum");
  const CMatrix x = load(path, d);
  const auto s = spectrum_TX(x);
  o.report.command = "spectrum";
  o.report.inputs_digest = d.hex();
  o.report.spectrum = spectrum_to_json(s);

  std::ostringstream os;
  os << "n = " << s.n << ", ||X||^2 = " << fmt(s.norm_scale) << " (spectrum at unit norm)\n";
  os << "eigenvalues of T_X (descending):\n  ";
  print_values(os, s.values);
  os << "clusters:\n";
  for (const auto& c : s.clusters) os << "  " << fmt(c.value) << "  x" << c.multiplicity << "\n";
  os << "trace identity residual: " << fmt(s.trace_residual()) << "\n";
  os << "even pairing: " << (s.pairing_ok ? "ok" : "FAILED") << "\n";
  const auto p = partial_sums(s);
  if (p.size() >= 4) os << "sum of top 4: " << fmt(p[3]) << "\n";
  o.human = os.str();
  o.report.exit_code = s.pairing_ok ? kOk : kNumericalFailure;
  return o;
}

Outcome cmd_bounds(const std::string& path) {
  Outcome o;
  Digest d;
  d.add("bounds");
  const CMatrix x = load(path, d);
  const auto s = spectrum_TX(x);
  const auto r = bound_report(x, s);
  o.report.command = "bounds";
  o.report.inputs_digest = d.hex();
  o.report.spectrum = spectrum_to_json(s);
  o.report.bounds = bounds_to_json(r);

  std::ostringstream os;
  os << "lambda1 = " << fmt(r.lambda1) << " (unit norm)\n";
  os << "C_X = " << fmt(r.cx) << ", 2(s1^2+s2^2) = " << fmt(r.norm22) << "\n";
  os << "rung                          quantity          bound             slack\n";
  for (const auto& e : r.ladder) {
    char line[160];
    std::snprintf(line, sizeof line, "%-28s  %-16s  %-16s  %-16s%s\n", e.name.c_str(), fmt(e.quantity).c_str(),
                  fmt(e.bound).c_str(), fmt(e.slack).c_str(), e.satisfied ? "" : "  BREACH");
    os << line;
  }
  os << (r.all_proven_hold ? "all proven bounds hold\n" : "PROVEN BOUND BREACH\n");
  o.human = os.str();
  o.report.exit_code = r.all_proven_hold ? kOk : kViolation;
  return o;
}

struct CheckArgs {
  std::string kind;
  std::vector<std::string> paths;
  std::size_t k = 1;
  bool weighted = false;
  std::string bundle_out;
};

Outcome cmd_check(const CheckArgs& a, const Globals& g) {
  Outcome o;
  Digest d;
  d.add("check");
  d.add(a.kind);
  std::vector<CMatrix> mats;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (a.paths.size() < lo || a.paths.size() > hi) {
      throw PreconditionError("check " + a.kind + ": expected " +
                              (lo == hi ? std::to_string(lo) : "at least " + std::to_string(lo)) + " input file(s), got " +
                              std::to_string(a.paths.size()));
    }
  };
  auto load_all = [&] {
    for (const auto& p : a.paths) mats.push_back(load(p, d));
  };
  ScalarInput scalars;
  auto load_scalars = [&] {
    need(1, 1);
    const std::string bytes = read_file(a.paths[0]);
    d.add(bytes);
    scalars = parse_scalar_input(bytes);
  };
  constexpr std::size_t many = static_cast<std::size_t>(-1);

  ConjectureVerdict v;
  std::optional<std::pair<double, double>> cross;
  if (a.kind == "conj1") {
    need(1, many);
    load_all();
    v = check_conj1(mats);
  } else if (a.kind == "conj2" || a.kind == "conj2c") {
    need(2, many);
    load_all();
    std::vector<CMatrix> rest(mats.begin() + 1, mats.end());
    v = a.kind == "conj2" ? check_conj2(mats[0], rest) : check_conj2C(mats[0], rest);
  } else if (a.kind == "conj2a") {
    need(1, 1);
    load_all();
    v = check_partial_sums(mats[0]);
  } else if (a.kind == "conj4") {
    need(1, 1);
    load_all();
    v = check_majorization(mats[0]);
  } else if (a.kind == "lu") {
    load_scalars();
    d.add(a.weighted ? "weighted" : "binary");
    v = a.weighted ? check_lu_lemma_weighted(scalars.etas, scalars.r) : check_lu_lemma(scalars.etas, scalars.r);
  } else if (a.kind == "numbers") {
    load_scalars();
    std::vector<double> etas;
    for (const auto& e : scalars.etas) {
      if (e.imag() != 0.0) throw ParseError("numbers: etas must be real");
      etas.push_back(e.real());
    }
    v = check_numbers_lemma(etas, scalars.omegas, scalars.r);
  } else if (a.kind == "isotropic") {
    // X alone: test the top-eigenvector isotropic family of size k.
    need(1, many);
    load_all();
    std::vector<CMatrix> w(mats.begin() + 1, mats.end());
    if (w.empty()) {
      d.add(std::to_string(a.k));
      w = isotropic_eigen_family(mats[0], a.k);
    }
    v = check_isotropic_trace_bound(mats[0], w);
  } else if (a.kind == "crosscheck") {
    need(1, 1);
    load_all();
    d.add(std::to_string(a.k));
    cross = cross_check_formulations(mats[0], a.k);
    v.id = ConjectureId::C2A;
    v.lhs = cross->first;
    v.rhs = cross->second;
    v.k = a.k;
    v.satisfied = std::abs(cross->first - cross->second) < g.tol.value_or(1e-7);
  } else {
    throw PreconditionError("check: unknown kind '" + a.kind +
                            "' (conj1, conj2, conj2c, conj2a, conj4, lu, numbers, isotropic, crosscheck)");
  }

  o.report.command = "check " + a.kind;
  o.report.inputs_digest = d.hex();
  o.report.verdicts.push_back(verdict_to_json(v));
  if (cross) o.report.results = {{"prefix_sum", cross->first}, {"family_sum", cross->second}};

  std::ostringstream os;
  if (cross) {
    os << "k = " << a.k << ": sum of top 2k eigenvalues " << fmt(cross->first) << ", isotropic family form "
       << fmt(cross->second) << "\n";
    os << (v.satisfied ? "formulations agree\n" : "formulations DISAGREE\n");
    o.report.exit_code = v.satisfied ? kOk : kNumericalFailure;
    o.human = os.str();
    return o;
  }
  os << to_string(v.id) << ": lhs = " << fmt(v.lhs) << ", rhs = " << fmt(v.rhs);
  if (v.k) os << " (k = " << *v.k << ")";
  os << "\nhypotheses residual: " << fmt(v.hypotheses_residual) << (v.hypotheses_ok ? "" : " (above tolerance)") << "\n";
  if (!v.hypotheses_ok) {
    os << "hypotheses not satisfied, no verdict\n";
    o.report.exit_code = kInputError;
  } else if (v.satisfied) {
    os << "satisfied, slack " << fmt(v.rhs - v.lhs) << "\n";
    o.report.exit_code = kOk;
  } else {
    os << "VIOLATED by " << fmt(v.lhs - v.rhs) << "\n";
    o.report.exit_code = kViolation;
  }
  if (v.witness && !a.bundle_out.empty()) {
    write_file(a.bundle_out, bundle_to_json(*v.witness).dump(2) + "\n");
    os << "bundle written to " << a.bundle_out << "\n";
  }
  o.human = os.str();
  return o;
}

Outcome cmd_closed_form(const std::string& path, const Globals& g) {
  Outcome o;
  Digest d;
  d.add("closed-form");
  const CMatrix x = load(path, d);
  const double tol = g.tol.value_or(1e-8);
  const auto dense = spectrum_TX(x);
  o.report.command = "closed-form";
  o.report.inputs_digest = d.hex();
  o.report.spectrum = spectrum_to_json(dense);

  std::ostringstream os;
  json res = json::object();
  const bool normal = is_normal(x, 1e-8);
  const bool rank1 = is_rank_one(x);
  res["is_normal"] = normal;
  res["is_rank_one"] = rank1;
  bool agree = true;
  auto compare = [&](const char* name, const std::vector<double>& closed) {
    double dev = 0.0;
    for (std::size_t i = 0; i < closed.size(); ++i) dev = std::max(dev, std::abs(closed[i] - dense.values[i]));
    res[name] = {{"values", closed}, {"max_deviation", dev}, {"agrees", dev < tol}};
    agree = agree && dev < tol;
    os << name << " closed form: max deviation from dense spectrum " << fmt(dev) << (dev < tol ? "" : " (DISAGREES)")
       << "\n  ";
    print_values(os, closed);
  };
  os << "normal: " << (normal ? "yes" : "no") << ", rank one: " << (rank1 ? "yes" : "no") << "\n";
  if (normal) compare("normal", normal_spectrum(x).values);
  if (rank1) compare("rank_one", rank_one_spectrum(x.order(), dense.trace_abs_sq));
  if (!normal && !rank1) os << "no closed form applies\n";

  os << "lambda1 = " << fmt(dense.values.front()) << "\n";
  if (const auto w = detect_equality_case(x)) {
    res["equality_witness"] = {{"U", matrix_to_json(w->U)},
                               {"X0", matrix_to_json(w->X0)},
                               {"embedding_residual", w->embedding_residual},
                               {"lambda1", w->lambda1}};
    os << "equality case lambda1 = 2: X = U diag(X0, 0) U*, residual " << fmt(w->embedding_residual) << "\nX0 =\n";
    print_matrix(os, w->X0);
  } else {
    res["equality_witness"] = nullptr;
    os << "not an equality case\n";
  }
  o.report.results = std::move(res);
  o.report.exit_code = agree ? kOk : kNumericalFailure;
  o.human = os.str();
  return o;
}

struct SearchArgs {
  std::size_t n = 3;
  std::size_t k = 1;
  std::size_t restarts = 1;
  std::size_t max_iters = 500;
  std::string init = "random_gaussian";
  std::string matrix;
  std::string objective = "partial_sum";
  bool sweep = false;
  std::size_t n_min = 2;
  std::size_t n_max = 5;
  std::size_t trials = 1000;
  std::string bundle_out;
};

void describe_search(std::ostream& os, const SearchResult& r) {
  std::size_t failed = 0;
  for (const auto& s : r.restarts) failed += s.error.empty() ? 0 : 1;
  os << "n = " << r.n << ", k = " << r.k << ", seed = " << r.seed << "\n";
  os << "best f_k = " << fmt(r.best_objective) << " (restart " << r.best_restart << ")\n";
  os << "conjectured bound " << fmt(r.conjectured_bound) << ", proven bound " << fmt(r.proven_bound) << ", gap "
     << fmt(r.gap_to_conjecture) << "\n";
  os << "restarts " << r.restarts.size() << " (" << failed << " failed), iterations " << r.iterations_used << "\n";
  os << "monotone: " << (r.monotone_ok ? "ok" : "FAILED") << ", proven caps: " << (r.proven_caps_ok ? "ok" : "FAILED")
     << "\n";
  os << "best matrix:\n";
  print_matrix(os, r.best_matrix);
}

Outcome cmd_search(const SearchArgs& a, const Globals& g) {
  Outcome o;
  Digest d;
  d.add("search");
  const std::uint64_t seed = resolve_seed(g);
  o.report.seed = seed;
  std::ostringstream os;

  if (a.sweep) {
    d.add("sweep " + std::to_string(a.n_min) + " " + std::to_string(a.n_max) + " " + std::to_string(a.k) + " " +
          std::to_string(a.trials));
    SweepConfig c;
    c.n_min = a.n_min;
    c.n_max = a.n_max;
    c.k = a.k;
    c.trials = a.trials;
    c.seed = seed;
    c.threads = g.threads;
    const auto rep = sweep(c);
    o.report.command = "search sweep";
    o.report.inputs_digest = d.hex();
    o.report.results = sweep_to_json(rep);
    std::size_t violations = 0;
    os << "   n    k   max f_k          conjectured  proven\n";
    for (const auto& e : rep.entries) {
      char line[160];
      std::snprintf(line, sizeof line, "%4zu %4zu   %-16s %-12s %-12s%s\n", e.n, e.k, fmt(e.max_f).c_str(),
                    fmt(e.bound_conjectured).c_str(), fmt(e.bound_proven).c_str(),
                    e.violations.empty() ? "" : "  VIOLATION");
      os << line;
      violations += e.violations.size();
    }
    for (const auto& m : rep.majorization) {
      os << "n = " << m.n << ": worst majorization excess " << fmt(m.max_excess)
         << (m.violations.empty() ? "" : "  VIOLATION") << "\n";
      violations += m.violations.size();
    }
    os << "trials per n " << a.trials << ", violations " << violations << ", proven-bound failures "
       << rep.proven_failures << ", failed trials " << rep.failed_trials << "\n";
    o.report.exit_code = violations ? kViolation : rep.proven_failures ? kNumericalFailure : kOk;
    o.human = os.str();
    return o;
  }

  SearchConfig c;
  c.n = a.n;
  c.k = a.objective == "lambda13" ? 2 : a.k;
  c.restarts = a.restarts;
  c.max_iters = a.max_iters;
  c.seed = seed;
  c.threads = g.threads;
  c.init = init_kind_from_string(a.init);
  if (!a.matrix.empty()) {
    if (c.init != InitKind::UserMatrix) throw PreconditionError("search: --matrix needs --init user_matrix");
    c.user_matrix = load(a.matrix, d);
  }
  d.add(a.objective + " " + std::to_string(c.n) + " " + std::to_string(c.k) + " " + std::to_string(c.restarts) + " " +
        std::to_string(c.max_iters) + " " + a.init);
  o.report.inputs_digest = d.hex();

  std::optional<ViolationBundle> bundle;
  if (a.objective == "lambda13") {
    const auto r = lambda13_search(c.n, c.restarts, seed, c.max_iters, g.threads);
    o.report.command = "search lambda13";
    json res = search_to_json(r.search);
    res["lambda13"] = r.lambda13;
    res["lambda13_direct"] = r.lambda13_direct;
    res["proven_cap"] = r.proven_cap;
    res["within_proven_cap"] = r.within_proven_cap;
    res["exceeds_conjecture"] = r.exceeds_conjecture;
    o.report.results = std::move(res);
    describe_search(os, r.search);
    os << "lambda1 + lambda3 = " << fmt(r.lambda13) << " (direct " << fmt(r.lambda13_direct) << "), conjectured 3, proven "
       << fmt(r.proven_cap) << "\n";
    if (r.search.violation) bundle = r.search.violation;
    o.report.exit_code = !r.within_proven_cap || !r.search.proven_caps_ok || !r.search.monotone_ok ? kNumericalFailure
                         : r.exceeds_conjecture                                                  ? kViolation
                                                                                                 : kOk;
  } else if (a.objective == "partial_sum") {
    c.validate();
    const auto r = ascend(c);
    o.report.command = "search";
    o.report.results = search_to_json(r);
    describe_search(os, r);
    if (r.violation) bundle = r.violation;
    const bool broken = r.best_objective > r.proven_bound + kProvenSlack || !r.proven_caps_ok || !r.monotone_ok;
    o.report.exit_code = broken ? kNumericalFailure : r.violation ? kViolation : kOk;
  } else {
    throw PreconditionError("search: --objective must be partial_sum or lambda13");
  }
  if (bundle) {
    os << "CONJECTURE VIOLATION candidate found\n";
    if (!a.bundle_out.empty()) {
      write_file(a.bundle_out, bundle_to_json(*bundle).dump(2) + "\n");
      os << "bundle written to " << a.bundle_out << "\n";
    }
  }
  o.human = os.str();
  return o;
}

// Printed to four decimals; ||X|| = 1.0000012.
CMatrix example_matrix() {
  return CMatrix::from_rows({{-0.1236, 0.0334, 0.0647}, {-0.4343, 0.1029, -0.8833}, {0.0, 0.0, 0.0}});
}

Outcome cmd_verify_paper_example(const Globals& g) {
  Outcome o;
  Digest d;
  d.add("verify-paper-example");
  const double tol = g.tol.value_or(5e-4);
  const CMatrix x = example_matrix();
  const auto s = spectrum_TX(x);
  const auto b = bound_report(x, s);
  // Both quantities are homogeneous of degree 2, reported for X as printed.
  const double top4 = partial_sums(s)[3] * s.norm_scale;
  const double est = b.top4_split_estimate * s.norm_scale;
  const double want_top4 = 5.9814, want_est = 7.0554;
  const bool ok = std::abs(top4 - want_top4) <= tol && std::abs(est - want_est) <= tol;
  o.report.command = "verify-paper-example";
  o.report.inputs_digest = d.hex();
  o.report.spectrum = spectrum_to_json(s);
  o.report.bounds = bounds_to_json(b);
  o.report.results = {{"matrix", matrix_to_json(x)},
                      {"top4_sum", top4},
                      {"top4_expected", want_top4},
                      {"split_estimate", est},
                      {"split_estimate_expected", want_est},
                      {"tolerance", tol},
                      {"match", ok}};
  std::ostringstream os;
  os << "X =\n";
  print_matrix(os, x);
  os << "sum of top 4 eigenvalues: " << fmt(top4) << " (expected " << want_top4 << ")\n";
  os << "4(s1^2+s2^2) + phi(X):   " << fmt(est) << " (expected " << want_est << ")\n";
  os << (ok ? "match within " : "MISMATCH beyond ") << fmt(tol) << "\n";
  o.human = os.str();
  o.report.exit_code = ok ? kOk : kNumericalFailure;
  return o;
}

Outcome cmd_reverify(const std::string& path) {
  Outcome o;
  Digest d;
  d.add("reverify");
  const std::string bytes = read_file(path);
  d.add(bytes);
  const auto b = bundle_from_json(parse_json_text(bytes, path));
  const auto v = reverify(b);
  o.report.command = "reverify";
  o.report.inputs_digest = d.hex();
  o.report.verdicts.push_back(verdict_to_json(v));
  const double drift = std::max(std::abs(v.lhs - b.lhs), std::abs(v.rhs - b.rhs));
  o.report.results = {{"stored_lhs", b.lhs}, {"stored_rhs", b.rhs}, {"drift", drift}};
  std::ostringstream os;
  os << to_string(v.id) << ": recomputed lhs = " << fmt(v.lhs) << ", rhs = " << fmt(v.rhs) << " (stored "
     << fmt(b.lhs) << ", " << fmt(b.rhs) << ")\n";
  os << (v.satisfied ? "satisfied on recomputation\n" : "violation confirmed\n");
  o.human = os.str();
  o.report.exit_code = !v.hypotheses_ok ? kInputError : v.satisfied ? kOk : kViolation;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, bounds and conjecture checks for the double commutator T_X(Y) = [X*, [X, Y]]", "commspec"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json_out, "Print the JSON run report instead of text");
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Root seed for all randomness");
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tol", tol, "Comparison tolerance (verify-paper-example, closed-form, crosscheck)")
                      ->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Also write the JSON run report to this file");
  app.add_flag("--timing", g.timing, "Include wall time in the report");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

  std::string path;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of T_X at unit norm");
  spectrum->add_option("matrix", path, "Matrix file")->required();

  auto* bounds = app.add_subcommand("bounds", "Proven eigenvalue bounds and their slacks");
  bounds->add_option("matrix", path, "Matrix file")->required();

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Evaluate a conjecture or lemma on given inputs");
  check->add_option("kind", ca.kind, "conj1 | conj2 | conj2c | conj2a | conj4 | lu | numbers | isotropic | crosscheck")
      ->required();
  check->add_option("inputs", ca.paths, "Matrix files, or one scalar JSON file for lu/numbers")->required();
  check->add_option("--k", ca.k, "Depth for crosscheck and the isotropic eigen family")->check(CLI::PositiveNumber);
  check->add_flag("--weighted", ca.weighted, "lu: accept nonnegative real weights");
  check->add_option("--bundle-out", ca.bundle_out, "Write the violation bundle here");

  auto* closed = app.add_subcommand("closed-form", "Closed-form spectra and equality-case detection");
  closed->add_option("matrix", path, "Matrix file")->required();

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Alternating ascent on f_k, or a random sweep");
  search->add_option("--n", sa.n, "Matrix order");
  search->add_option("--k", sa.k, "Partial-sum depth (sweep: 0 = every k)");
  search->add_option("--restarts", sa.restarts, "Independent restarts");
  search->add_option("--max-iters", sa.max_iters, "Iterations per restart");
  search->add_option("--init", sa.init, "random_gaussian | normal_class | rank_one | user_matrix");
  search->add_option("--matrix", sa.matrix, "Start matrix for --init user_matrix");
  search->add_option("--objective", sa.objective, "partial_sum | lambda13");
  search->add_flag("--sweep", sa.sweep, "Monitor random matrices instead of ascending");
  search->add_option("--n-min", sa.n_min, "Sweep: smallest order");
  search->add_option("--n-max", sa.n_max, "Sweep: largest order");
  search->add_option("--trials", sa.trials, "Sweep: trials per order");
  search->add_option("--bundle-out", sa.bundle_out, "Write a violation bundle here");

  auto* paper = app.add_subcommand("verify-paper-example", "Check the stored 3x3 example values");

  std::string bundle_path;
  auto* rev = app.add_subcommand("reverify", "Recompute a violation bundle from its JSON");
  rev->add_option("bundle", bundle_path, "Bundle file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  if (seed_opt->count()) g.seed = seed;
  if (tol_opt->count()) g.tol = tol;

  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (*spectrum) o = cmd_spectrum(path);
    else if (*bounds) o = cmd_bounds(path);
    else if (*check) o = cmd_check(ca, g);
    else if (*closed) o = cmd_closed_form(path, g);
    else if (*search) o = cmd_search(sa, g);
    else if (*paper) o = cmd_verify_paper_example(g);
    else if (*rev) o = cmd_reverify(bundle_path);
  } catch (const ConvergenceError& e) {
    std::cerr << "commspec: numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const Error& e) {
    std::cerr << "commspec: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "commspec: " << e.what() << "\n";
    return kNumericalFailure;
  }
  if (!o.report.seed && g.seed) o.report.seed = g.seed;
  if (g.timing) {
    o.report.timing_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  const std::string text = report_to_json(o.report).dump(2) + "\n";
  if (!g.out.empty()) {
    try {
      write_file(g.out, text);
    } catch (const Error& e) {
      std::cerr << "commspec: " << e.what() << "\n";
      return kInputError;
    }
  }
  std::cout << (g.json_out ? text : o.human);
  return o.report.exit_code;
}
