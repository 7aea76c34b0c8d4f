#ifndef COMMSPEC_IO_HPP
#define COMMSPEC_IO_HPP

// Matrix files. JSON ({n, re, im}) is the exchange format; a whitespace text
// format with one row per line and tokens like 1, -2.5, 0.3+1e-2i, -i is
// accepted for reading only.

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commspec/serialization.hpp"

namespace commspec {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw ParseError("write to '" + path + "' failed");
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace detail {

inline double parse_real(const std::string& s, const std::string& token) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) throw ParseError("bad number in token '" + token + "'");
  if (!std::isfinite(v)) throw ParseError("non-finite value in token '" + token + "'");
  return v;
}

}  // namespace detail

/// One `a+bi` style token.
inline cplx parse_complex_token(const std::string& token) {
  if (token.empty()) throw ParseError("empty token");
  std::string t = token;
  if (t.back() != 'i') {
    // "" / "+" / "-" are only meaningful as coefficients of i.
    if (t == "+" || t == "-") throw ParseError("bad token '" + token + "'");
    return {detail::parse_real(t, token), 0.0};
  }
  t.pop_back();
  // Split at the last sign that is not an exponent sign and not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t p = t.size(); p-- > 1;) {
    if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, detail::parse_real(t, token)};
  const std::string re = t.substr(0, split);
  if (re == "+" || re == "-") throw ParseError("bad token '" + token + "'");
  return {detail::parse_real(re, token), detail::parse_real(t.substr(split), token)};
}

inline CMatrix parse_matrix_text(const std::string& text) {
  std::vector<std::vector<cplx>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<cplx> row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_complex_token(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n == 0) throw ParseError("matrix text: no rows");
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ParseError("matrix text: row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

inline json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

/// JSON when the first non-blank character is '{', text rows otherwise.
inline CMatrix parse_matrix(const std::string& contents) {
  const auto first = contents.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && contents[first] == '{') {
    return matrix_from_json(parse_json_text(contents, "matrix"));
  }
  return parse_matrix_text(contents);
}

inline CMatrix read_matrix_file(const std::string& path) {
  try {
    return parse_matrix(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_matrix_file(const std::string& path, const CMatrix& m) {
  write_file(path, matrix_to_json(m).dump(2) + "\n");
}

/// Inputs of the scalar lemmas: {"etas": [x | [re, im], ...], "omegas": [...], "r": [[...]]}.
struct ScalarInput {
  std::vector<cplx> etas;
  std::vector<double> omegas;
  RealGrid r;
};

inline ScalarInput parse_scalar_input(const std::string& contents) {
  const json j = parse_json_text(contents, "scalar input");
  if (!j.is_object()) throw ParseError("scalar input: expected an object");
  ScalarInput s;
  if (!j.contains("etas") || !j.at("etas").is_array()) throw ParseError("scalar input: missing 'etas' array");
  for (const auto& e : j.at("etas")) {
    if (e.is_array()) {
      if (e.size() != 2) throw ParseError("scalar input: complex etas must be [re, im]");
      s.etas.emplace_back(detail::finite_number(e[0], "etas"), detail::finite_number(e[1], "etas"));
    } else {
      s.etas.emplace_back(detail::finite_number(e, "etas"), 0.0);
    }
  }
  if (j.contains("omegas")) {
    if (!j.at("omegas").is_array()) throw ParseError("scalar input: 'omegas' must be an array");
    for (const auto& e : j.at("omegas")) s.omegas.push_back(detail::finite_number(e, "omegas"));
  }
  if (!j.contains("r") || !j.at("r").is_array()) throw ParseError("scalar input: missing 'r' grid");
  for (const auto& row : j.at("r")) {
    if (!row.is_array()) throw ParseError("scalar input: 'r' must be an array of rows");
    std::vector<double> rr;
    for (const auto& e : row) rr.push_back(detail::finite_number(e, "r"));
    s.r.push_back(std::move(rr));
  }
  return s;
}

}  // namespace commspec

#endif  // COMMSPEC_IO_HPP
