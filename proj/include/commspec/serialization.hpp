#ifndef COMMSPEC_SERIALIZATION_HPP
#define COMMSPEC_SERIALIZATION_HPP

// JSON forms of matrices, violation bundles, and run reports.
// Matrices are stored as {n, re, im} with row-major nested arrays.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "commspec/closed_forms.hpp"
#include "commspec/conjecture_lab.hpp"
#include "commspec/extremal_search.hpp"
#include "commspec/spectra_bounds.hpp"

namespace commspec {

using json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kBundleSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

namespace detail {

inline double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + ": non-finite value");
  return v;
}

inline std::vector<std::vector<double>> real_grid(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " rows");
  std::vector<std::vector<double>> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != n) {
      throw ParseError(std::string(what) + ": row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (const auto& e : row) g[i].push_back(finite_number(e, what));
  }
  return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matrices

inline json matrix_to_json(const CMatrix& m) {
  const std::size_t n = m.order();
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json rr = json::array(), ri = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

/// `n` is optional when `re` is present; `im` defaults to zeros.
inline CMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix: expected an object");
  if (!j.contains("re")) throw ParseError("matrix: missing 're'");
  const auto& re = j.at("re");
  if (!re.is_array()) throw ParseError("matrix: 're' must be an array of rows");
  std::size_t n = re.size();
  if (j.contains("n")) {
    const auto& jn = j.at("n");
    if (!jn.is_number_integer() || jn.get<long long>() < 1) throw ParseError("matrix: 'n' must be a positive integer");
    if (static_cast<std::size_t>(jn.get<long long>()) != n) throw ParseError("matrix: 'n' disagrees with 're'");
  }
  if (n == 0) throw ParseError("matrix: empty");
  const auto gre = detail::real_grid(re, n, "matrix.re");
  std::vector<std::vector<double>> gim(n, std::vector<double>(n, 0.0));
  if (j.contains("im")) gim = detail::real_grid(j.at("im"), n, "matrix.im");
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jj = 0; jj < n; ++jj) m(i, jj) = {gre[i][jj], gim[i][jj]};
  return m;
}

// ---------------------------------------------------------------------------
// Violation bundles

inline json bundle_to_json(const ViolationBundle& b) {
  json j{{"schema_version", kBundleSchemaVersion},
         {"conjecture_id", std::string(to_string(b.id))},
         {"n", b.n},
         {"m", b.m},
         {"matrices", json::array()},
         {"lhs", b.lhs},
         {"rhs", b.rhs},
         {"hypotheses_residual", b.hypotheses_residual},
         {"seed", b.seed}};
  for (const auto& m : b.matrices) j["matrices"].push_back(matrix_to_json(m));
  if (b.k) j["k"] = *b.k;
  if (!b.etas.empty()) {
    json e = json::array();
    for (const auto& z : b.etas) e.push_back({z.real(), z.imag()});
    j["etas"] = std::move(e);
  }
  if (!b.omegas.empty()) j["omegas"] = b.omegas;
  if (!b.r.empty()) j["r"] = b.r;
  return j;
}

inline ViolationBundle bundle_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("bundle: expected an object");
  ViolationBundle b;
  try {
    b.id = conjecture_id_from_string(j.at("conjecture_id").get<std::string>());
    b.n = j.at("n").get<std::size_t>();
    b.m = j.at("m").get<std::size_t>();
    for (const auto& m : j.at("matrices")) b.matrices.push_back(matrix_from_json(m));
    b.lhs = detail::finite_number(j.at("lhs"), "bundle.lhs");
    b.rhs = detail::finite_number(j.at("rhs"), "bundle.rhs");
    b.hypotheses_residual = detail::finite_number(j.at("hypotheses_residual"), "bundle.hypotheses_residual");
    b.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("k")) b.k = j.at("k").get<std::size_t>();
    if (j.contains("etas")) {
      for (const auto& e : j.at("etas")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("bundle.etas: expected [re, im] pairs");
        b.etas.emplace_back(detail::finite_number(e[0], "bundle.etas"), detail::finite_number(e[1], "bundle.etas"));
      }
    }
    if (j.contains("omegas"))
      for (const auto& e : j.at("omegas")) b.omegas.push_back(detail::finite_number(e, "bundle.omegas"));
    if (j.contains("r")) b.r = j.at("r").get<RealGrid>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bundle: ") + e.what());
  }
  return b;
}

// ---------------------------------------------------------------------------
// Report sections

inline json spectrum_to_json(const Spectrum& s) {
  json clusters = json::array();
  for (const auto& c : s.clusters) clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  return json{{"n", s.n},
              {"values", s.values},
              {"clusters", std::move(clusters)},
              {"pairing_ok", s.pairing_ok},
              {"norm_sq", s.norm_scale},
              {"trace_abs_sq", s.trace_abs_sq},
              {"trace_residual", s.trace_residual()},
              {"partial_sums", partial_sums(s)}};
}

inline json bounds_to_json(const BoundReport& r) {
  json ladder = json::array();
  for (const auto& e : r.ladder) {
    ladder.push_back({{"name", e.name},
                      {"quantity", e.quantity},
                      {"bound", e.bound},
                      {"slack", e.slack},
                      {"satisfied", e.satisfied}});
  }
  return json{{"norm_sq", r.norm_scale},
              {"lambda1", r.lambda1},
              {"cx", r.cx},
              {"norm22", r.norm22},
              {"min_bound", r.min_bound},
              {"top4_split_estimate", r.top4_split_estimate},
              {"singular_values", r.singular_values},
              {"herm_eigs", r.herm_eigs},
              {"skew_eigs", r.skew_eigs},
              {"ladder", std::move(ladder)},
              {"all_proven_hold", r.all_proven_hold}};
}

inline json verdict_to_json(const ConjectureVerdict& v) {
  json j{{"conjecture_id", std::string(to_string(v.id))},
         {"hypotheses_residual", v.hypotheses_residual},
         {"hypotheses_ok", v.hypotheses_ok},
         {"lhs", v.lhs},
         {"rhs", v.rhs},
         {"satisfied", v.satisfied}};
  if (v.k) j["k"] = *v.k;
  if (v.witness && !v.satisfied) j["bundle"] = bundle_to_json(*v.witness);
  return j;
}

inline json search_to_json(const SearchResult& r) {
  json restarts = json::array();
  for (const auto& s : r.restarts) {
    json e{{"index", s.index},
           {"first", s.first},
           {"last", s.last},
           {"iterations", s.iterations},
           {"monotone_ok", s.monotone_ok},
           {"proven_caps_ok", s.proven_caps_ok},
           {"degenerate_boundary", s.degenerate_boundary}};
    if (!s.error.empty()) e["error"] = s.error;
    restarts.push_back(std::move(e));
  }
  json j{{"n", r.n},
         {"k", r.k},
         {"seed", r.seed},
         {"best_objective", r.best_objective},
         {"best_matrix", matrix_to_json(r.best_matrix)},
         {"best_restart", r.best_restart},
         {"conjectured_bound", r.conjectured_bound},
         {"proven_bound", r.proven_bound},
         {"gap_to_conjecture", r.gap_to_conjecture},
         {"iterations_used", r.iterations_used},
         {"monotone_ok", r.monotone_ok},
         {"proven_caps_ok", r.proven_caps_ok},
         {"restarts", std::move(restarts)}};
  if (r.violation) j["violation"] = bundle_to_json(*r.violation);
  return j;
}

inline json sweep_to_json(const SweepReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json v = json::array();
    for (const auto& b : e.violations) v.push_back(bundle_to_json(b));
    entries.push_back({{"n", e.n},
                       {"k", e.k},
                       {"trials", e.trials},
                       {"max_f", e.max_f},
                       {"argmax_matrix", matrix_to_json(e.argmax_matrix)},
                       {"bound_conjectured", e.bound_conjectured},
                       {"bound_proven", e.bound_proven},
                       {"violations", std::move(v)}});
  }
  json maj = json::array();
  for (const auto& m : rep.majorization) {
    json v = json::array();
    for (const auto& b : m.violations) v.push_back(bundle_to_json(b));
    maj.push_back({{"n", m.n}, {"trials", m.trials}, {"max_excess", m.max_excess}, {"violations", std::move(v)}});
  }
  return json{{"seed", rep.seed},
              {"entries", std::move(entries)},
              {"majorization", std::move(maj)},
              {"proven_failures", rep.proven_failures},
              {"failed_trials", rep.failed_trials}};
}

// ---------------------------------------------------------------------------
// Run report

struct RunReport {
  std::string command;
  std::string inputs_digest;  // FNV-1a 64 of the input bytes and arguments, hex
  std::optional<std::uint64_t> seed;
  std::string tool_version = kToolVersion;
  json spectrum;                      // null when not computed
  json bounds;                        // null when not computed
  json verdicts = json::array();
  json results = json::object();      // command-specific payload
  std::optional<double> timing_seconds;
  int exit_code = 0;
};

inline json report_to_json(const RunReport& r) {
  json j{{"schema_version", kReportSchemaVersion},
         {"tool_version", r.tool_version},
         {"command", r.command},
         {"inputs_digest", r.inputs_digest},
         {"seed", r.seed ? json(*r.seed) : json(nullptr)},
         {"spectrum", r.spectrum},
         {"bounds", r.bounds},
         {"verdicts", r.verdicts},
         {"results", r.results},
         {"exit_code", r.exit_code}};
  if (r.timing_seconds) j["timing_seconds"] = *r.timing_seconds;
  return j;
}

inline RunReport report_from_json(const json& j) {
  RunReport r;
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) throw ParseError("report: unsupported schema_version");
    r.tool_version = j.at("tool_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.inputs_digest = j.at("inputs_digest").get<std::string>();
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    r.spectrum = j.at("spectrum");
    r.bounds = j.at("bounds");
    r.verdicts = j.at("verdicts");
    r.results = j.at("results");
    r.exit_code = j.at("exit_code").get<int>();
    if (j.contains("timing_seconds")) r.timing_seconds = j.at("timing_seconds").get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return r;
}

}  // namespace commspec

#endif  // COMMSPEC_SERIALIZATION_HPP
