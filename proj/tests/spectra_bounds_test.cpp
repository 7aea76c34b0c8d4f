#include <gtest/gtest.h>

#include "support.hpp"

using namespace commspec;
using commspec::test::E;
using commspec::test::max_abs_diff;

TEST(SpectrumTX, Examples) {
  EXPECT_LT(max_abs_diff(spectrum_TX(E(2, 2, 1)).values, {2, 2, 0, 0}), 1e-12);
  const auto id = spectrum_TX(CMatrix::identity(4) / 2.0);
  for (double v : id.values) EXPECT_LT(std::abs(v), 1e-12);
  EXPECT_LT(max_abs_diff(spectrum_TX(E(3, 2, 1)).values, {2, 2, 1, 1, 0, 0, 0, 0, 0}), 1e-12);
}

TEST(SpectrumTX, ZeroMatrixIsDegenerate) { EXPECT_THROW(spectrum_TX(CMatrix(3)), DegenerateInput); }

TEST(SpectrumTX, InvariantsOnRandomInputs) {
  Rng rng(40);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 6;
    const CMatrix x = t % 2 ? gaussian_complex(n, rng) : gaussian_real(n, rng);
    const auto s = spectrum_TX(x);
    ASSERT_EQ(s.values.size(), n * n);
    EXPECT_TRUE(std::is_sorted(s.values.rbegin(), s.values.rend()));
    EXPECT_GE(s.values.back(), -1e-9);
    EXPECT_LT(std::abs(s.trace_residual()), 1e-9);
    EXPECT_TRUE(s.pairing_ok);
    for (std::size_t i = 0; i + 1 < s.values.size(); i += 2)
      if (s.values[i] > 1e-6) { EXPECT_LT(s.values[i] - s.values[i + 1], 1e-6); }
    EXPECT_NEAR(s.norm_scale, frobenius_norm_sq(x), 1e-12 * s.norm_scale);
  }
}

TEST(SpectrumTX, UnitaryCongruenceInvariance) {
  Rng rng(41);
  for (std::size_t n = 2; n <= 5; ++n) {
    const CMatrix x = gaussian_complex(n, rng), u = random_unitary(n, rng);
    EXPECT_LT(max_abs_diff(spectrum_TX(u.adjoint() * x * u).values, spectrum_TX(x).values), 1e-9);
  }
}

TEST(SpectrumTX, ScalingCovariance) {
  Rng rng(42);
  const CMatrix x = gaussian_complex(4, rng);
  const cplx c{-2.5, 0.75};
  const auto a = spectrum_TX(c * x).scaled(), b = spectrum_TX(x).scaled();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], std::norm(c) * b[i], 1e-10 * std::norm(c) * b[0]);
}

TEST(PairPartner, ExampleE21) {
  const CMatrix x = E(2, 2, 1);
  const CMatrix y = (E(2, 1, 1) - E(2, 2, 2)) / std::sqrt(2.0);
  ASSERT_LT(frobenius_norm(apply_TX(x, y) - 2.0 * y), 1e-15);
  const CMatrix p = pair_partner(x, y, 2.0);
  EXPECT_LT(max_abs_diff(p, E(2, 1, 2)), 1e-15);
  EXPECT_LT(std::abs(frobenius_inner(y, p)), 1e-15);
  EXPECT_LT(frobenius_norm(apply_TX(x, p) - 2.0 * p), 1e-15);
}

TEST(PairPartner, PartnerOfPartnerIsMinusY) {
  Rng rng(43);
  for (std::size_t n = 2; n <= 5; ++n) {
    const CMatrix x = normalized(gaussian_complex(n, rng));
    const auto ed = eigh(lift_TX(x));
    for (std::size_t c = 0; c < n * n && ed.values[c] > 1e-6; ++c) {
      const CMatrix y = unvec(column_vector(ed.vectors, c));
      const CMatrix p = pair_partner(x, y, ed.values[c]);
      EXPECT_NEAR(frobenius_norm(p), 1.0, 1e-7);
      EXPECT_LT(std::abs(frobenius_inner(y, p)), 1e-8);
      EXPECT_LT(frobenius_norm(apply_TX(x, p) - ed.values[c] * p), 1e-7);
      EXPECT_LT(frobenius_norm(pair_partner(x, p, ed.values[c]) + y), 1e-7);
    }
  }
}

TEST(PairPartner, Errors) {
  const CMatrix x = E(2, 2, 1);
  EXPECT_THROW(pair_partner(x, E(2, 1, 1), 0.0), DegenerateInput);
  EXPECT_THROW(pair_partner(x, E(2, 1, 1), 2.0), PreconditionError);
  EXPECT_THROW(pair_partner(x, CMatrix(3), 2.0), OrderMismatch);
}

TEST(PartialSums, Examples) {
  EXPECT_EQ(partial_sums(std::vector<double>{2, 2, 0, 0}), (std::vector<double>{2, 4, 4, 4}));
  EXPECT_EQ(partial_sums(std::vector<double>{2, 2, 1, 1, 0, 0, 0, 0, 0}),
            (std::vector<double>{2, 4, 5, 6, 6, 6, 6, 6, 6}));
}

TEST(PartialSums, FinalEntryIsTraceValue) {
  Rng rng(44);
  const CMatrix x = gaussian_complex(5, rng);
  const auto s = spectrum_TX(x);
  EXPECT_NEAR(partial_sums(s).back(), 2.0 * 5 - 2.0 * s.trace_abs_sq, 1e-9);
}

TEST(TargetMultiset, Examples) {
  EXPECT_EQ(target_multiset(2), (std::vector<double>{2, 2, 0, 0}));
  EXPECT_EQ(target_multiset(3), (std::vector<double>{2, 2, 1, 1, 0, 0, 0, 0, 0}));
  const auto t5 = target_multiset(5);
  EXPECT_EQ(t5.size(), 25u);
  EXPECT_EQ(std::accumulate(t5.begin(), t5.end(), 0.0), 10.0);
  EXPECT_THROW(target_multiset(1), PreconditionError);
}

TEST(WeakMajorization, Examples) {
  const auto a = weak_majorization_check({2, 2, 0, 0}, {2, 2, 0, 0});
  EXPECT_TRUE(a.majorized);
  EXPECT_LE(a.worst_excess, 0.0);
  const auto b = weak_majorization_check({3, 0, 0, 0}, {2, 2, 0, 0});
  EXPECT_FALSE(b.majorized);
  EXPECT_EQ(b.worst_k, 1u);
  EXPECT_DOUBLE_EQ(b.worst_excess, 1.0);
  const auto c = weak_majorization_check(spectrum_TX(E(3, 2, 1)).values, target_multiset(3));
  EXPECT_TRUE(c.majorized);
  EXPECT_NEAR(c.worst_excess, 0.0, 1e-12);
}

TEST(WeakMajorization, Errors) {
  EXPECT_THROW(weak_majorization_check({1, 0}, {1, 0, 0}), OrderMismatch);
  EXPECT_THROW(weak_majorization_check({0, 1}, {1, 0}), PreconditionError);
}

TEST(BoundReport, TracelessDiagonalIsTight) {
  const double h = 1.0 / std::sqrt(2.0);
  const auto r = bound_report(CMatrix::from_rows({{h, 0}, {0, -h}}));
  EXPECT_NEAR(r.cx, 2.0, 1e-12);
  EXPECT_NEAR(r.lambda1, 2.0, 1e-12);
  EXPECT_TRUE(r.all_proven_hold);
  for (const auto& e : r.ladder)
    if (e.name == "cx" || e.name == "bw" || e.name == "norm22") { EXPECT_NEAR(e.slack, 0.0, 1e-12); }
}

TEST(BoundReport, IdentityHasFullSlack) {
  const auto r = bound_report(CMatrix::identity(3));
  EXPECT_NEAR(r.lambda1, 0.0, 1e-12);
  for (const auto& e : r.ladder) EXPECT_NEAR(e.slack, e.bound, 1e-12) << e.name;
}

TEST(BoundReport, ExampleMatrixSplitEstimate) {
  const CMatrix x = CMatrix::from_rows({{-0.1236, 0.0334, 0.0647}, {-0.4343, 0.1029, -0.8833}, {0, 0, 0}});
  const auto s = spectrum_TX(x);
  const auto r = bound_report(x, s);
  // Values for X as printed (||X||^2 = 1.0000024).
  EXPECT_NEAR(r.top4_split_estimate * s.norm_scale, 7.0554, 5e-4);
  EXPECT_NEAR(partial_sums(s)[3] * s.norm_scale, 5.9814, 5e-4);
}

TEST(BoundReport, ProvenLadderHoldsOnRandomInputs) {
  Rng rng(45);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 7;
    const CMatrix x = t % 3 == 0 ? gaussian_real(n, rng) : t % 3 == 1 ? gaussian_complex(n, rng) : random_normal(n, rng);
    const auto r = bound_report(x);
    EXPECT_TRUE(r.all_proven_hold) << "trial " << t;
    EXPECT_LE(r.min_bound, 2.0 + 1e-12);
  }
}

TEST(BoundReport, CxMatchesIndependentFormula) {
  // C_X from eigenvalues of A and -iB taken over the full index square.
  Rng rng(46);
  const CMatrix x = normalized(gaussian_complex(4, rng));
  const auto [a, b] = herm_skew_split(x);
  const auto ea = eigvalsh(a), eb = eigvalsh(cplx(0, -1) * b);
  double ma = -INFINITY, mb = -INFINITY;
  for (double p : ea)
    for (double q : ea) ma = std::max(ma, -p * q);
  for (double p : eb)
    for (double q : eb) mb = std::max(mb, -p * q);
  const auto s = singular_values(x);
  EXPECT_NEAR(bound_report(x).cx, 2 * (ma + mb) + s[0] * s[0] + s[1] * s[1], 1e-12);
}
