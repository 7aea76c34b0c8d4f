#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "support.hpp"

using namespace commspec;

TEST(ComplexToken, Forms) {
  EXPECT_EQ(parse_complex_token("1"), cplx(1, 0));
  EXPECT_EQ(parse_complex_token("-2.5"), cplx(-2.5, 0));
  EXPECT_EQ(parse_complex_token("3i"), cplx(0, 3));
  EXPECT_EQ(parse_complex_token("-i"), cplx(0, -1));
  EXPECT_EQ(parse_complex_token("i"), cplx(0, 1));
  EXPECT_EQ(parse_complex_token("1+2i"), cplx(1, 2));
  EXPECT_EQ(parse_complex_token("0.5-i"), cplx(0.5, -1));
  EXPECT_EQ(parse_complex_token("1e-3+2E+1i"), cplx(1e-3, 20));
  EXPECT_EQ(parse_complex_token("-1e2-3e-2i"), cplx(-100, -0.03));
}

TEST(ComplexToken, Rejects) {
  for (const char* bad : {"nan", "inf", "-inf", "1+nani", "abc", "1+", "+", "1+2", "2ii", "1e999"})
    EXPECT_THROW(parse_complex_token(bad), ParseError) << bad;
}

TEST(MatrixText, ParsesRowsAndComments) {
  const CMatrix m = parse_matrix("# a comment\n1+2i  -i\n\n3 0.2-1e-1i  # trailing\n");
  EXPECT_EQ(m, CMatrix::from_rows({{cplx(1, 2), cplx(0, -1)}, {3, cplx(0.2, -0.1)}}));
  EXPECT_THROW(parse_matrix("1 2\n3\n"), ParseError);
  EXPECT_THROW(parse_matrix("  \n"), ParseError);
}

TEST(MatrixJson, RoundTripIsLossless) {
  Rng rng(80);
  const CMatrix m = gaussian_complex(4, rng);
  const std::string text = matrix_to_json(m).dump();
  EXPECT_EQ(parse_matrix(text), m);
  const json j = json::parse(text);
  EXPECT_EQ(j["re"][1][0].get<double>(), m(1, 0).real());
}

TEST(MatrixJson, ImaginaryPartOptional) {
  EXPECT_EQ(parse_matrix(R"({"n": 2, "re": [[1, 2], [3, 4]]})"), CMatrix::from_rows({{1, 2}, {3, 4}}));
}

TEST(MatrixJson, Rejects) {
  EXPECT_THROW(parse_matrix(R"({"n": 3, "re": [[1, 2], [3, 4]]})"), ParseError);
  EXPECT_THROW(parse_matrix(R"({"n": 2, "re": [[1, 2], [3]]})"), ParseError);
  EXPECT_THROW(parse_matrix(R"({"n": 2, "re": [[1, 2], [3, 4]], "im": [[0, 0]]})"), ParseError);
  EXPECT_THROW(parse_matrix(R"({"n": 1, "re": [[NaN]]})"), ParseError);
  EXPECT_THROW(parse_matrix(R"({"n": 1, "re": [["1"]]})"), ParseError);
  EXPECT_THROW(parse_matrix(R"({"n": 1})"), ParseError);
  EXPECT_THROW(parse_matrix(R"({"n": 1, "re": [[1]])"), ParseError);
}

TEST(MatrixFile, WriteThenRead) {
  const auto path = (std::filesystem::temp_directory_path() / "commspec_io_test.json").string();
  Rng rng(81);
  const CMatrix m = gaussian_complex(3, rng);
  write_matrix_file(path, m);
  EXPECT_EQ(read_matrix_file(path), m);
  std::remove(path.c_str());
  EXPECT_THROW(read_matrix_file(path), ParseError);
}

TEST(ScalarInput, Parses) {
  const auto s = parse_scalar_input(R"({"etas": [0.5, [0.1, -0.2]], "omegas": [1], "r": [[0, 1], [0, 0]]})");
  ASSERT_EQ(s.etas.size(), 2u);
  EXPECT_EQ(s.etas[1], cplx(0.1, -0.2));
  EXPECT_EQ(s.omegas, std::vector<double>{1});
  EXPECT_EQ(s.r[0][1], 1.0);
  EXPECT_THROW(parse_scalar_input(R"({"r": []})"), ParseError);
  EXPECT_THROW(parse_scalar_input(R"({"etas": [[1, 2, 3]], "r": []})"), ParseError);
}

TEST(Bundle, JsonRoundTripAndReverify) {
  Rng rng(82);
  const auto v = check_conj1({CMatrix::unit(2, 0, 1), CMatrix::unit(2, 1, 0),
                              CMatrix::from_rows({{1, 0}, {0, -1}})});
  ASSERT_TRUE(v.witness.has_value());
  ViolationBundle b = *v.witness;
  b.seed = 0xFFFFFFFFFFFFFFFFULL;
  const std::string text = bundle_to_json(b).dump();
  const auto back = bundle_from_json(json::parse(text));
  EXPECT_EQ(back.id, b.id);
  EXPECT_EQ(back.seed, b.seed);
  EXPECT_EQ(back.matrices, b.matrices);
  EXPECT_EQ(back.lhs, b.lhs);
  EXPECT_EQ(bundle_to_json(back).dump(), text);
  EXPECT_EQ(reverify(back).lhs, v.lhs);
}

TEST(Bundle, ScalarLemmaFieldsRoundTrip) {
  ViolationBundle b;
  b.id = ConjectureId::LuLemma;
  b.n = 2;
  b.etas = {cplx(0.6, 0.1), cplx(-0.6, -0.1)};
  b.r = {{0, 1}, {0, 0}};
  b.k = 3;
  const auto back = bundle_from_json(bundle_to_json(b));
  EXPECT_EQ(back.etas, b.etas);
  EXPECT_EQ(back.r, b.r);
  EXPECT_EQ(back.k, b.k);
  EXPECT_THROW(bundle_from_json(json::parse(R"({"conjecture_id": "C1"})")), ParseError);
}

TEST(RunReport, RoundTripIsLossless) {
  RunReport r;
  r.command = "spectrum";
  r.inputs_digest = hex64(fnv1a64("abc"));
  r.seed = 42;
  r.spectrum = spectrum_to_json(spectrum_TX(CMatrix::unit(3, 1, 0)));
  r.bounds = bounds_to_json(bound_report(CMatrix::unit(3, 1, 0)));
  r.timing_seconds = 0.125;
  r.exit_code = 1;
  const json j = report_to_json(r);
  const RunReport back = report_from_json(json::parse(j.dump()));
  EXPECT_EQ(report_to_json(back), j);
  EXPECT_EQ(report_to_json(back).dump(), j.dump());
}

TEST(Digest, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}
