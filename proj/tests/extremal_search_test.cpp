#include <gtest/gtest.h>

#include "support.hpp"

using namespace commspec;

TEST(SearchConfig, Validation) {
  SearchConfig c;
  c.n = 2;
  c.k = 3;
  EXPECT_THROW(c.validate(), PreconditionError);
  c.k = 0;
  EXPECT_THROW(c.validate(), PreconditionError);
  c.k = 2;
  c.restarts = 0;
  EXPECT_THROW(c.validate(), PreconditionError);
  c.restarts = 1;
  c.init = InitKind::UserMatrix;
  EXPECT_THROW(c.validate(), PreconditionError);
  c.user_matrix = CMatrix(3);
  EXPECT_THROW(c.validate(), OrderMismatch);
  c.user_matrix = CMatrix(2);
  EXPECT_THROW(c.validate(), DegenerateInput);
}

TEST(InitKind, StringRoundTrip) {
  for (auto k : {InitKind::RandomGaussian, InitKind::NormalClass, InitKind::RankOne, InitKind::UserMatrix})
    EXPECT_EQ(init_kind_from_string(to_string(k)), k);
  EXPECT_THROW(init_kind_from_string("sobol"), PreconditionError);
}

TEST(Bounds, ConjecturedAndProven) {
  EXPECT_EQ(conjectured_partial_sum_bound(3), 8.0);
  EXPECT_EQ(proven_partial_sum_bound(2, 1), 4.0);
  EXPECT_NEAR(proven_partial_sum_bound(10, 4), 13.0, 1e-15);
}

TEST(Ascend, TwoByTwoReachesFourAtTracelessMatrix) {
  SearchConfig c;
  c.n = 2;
  c.k = 1;
  c.restarts = 3;
  c.seed = 1;
  const auto r = ascend(c);
  EXPECT_NEAR(r.best_objective, 4.0, 1e-6);
  EXPECT_LT(std::abs(r.best_matrix.trace()), 1e-3);
  EXPECT_NEAR(frobenius_norm(r.best_matrix), 1.0, 1e-12);
  EXPECT_TRUE(r.monotone_ok);
  EXPECT_TRUE(r.proven_caps_ok);
  EXPECT_FALSE(r.violation.has_value());
  EXPECT_EQ(r.restarts.size(), 3u);
}

TEST(Ascend, ThreeByThreeDepthTwoReachesSix) {
  SearchConfig c;
  c.n = 3;
  c.k = 2;
  c.restarts = 20;
  c.seed = 7;
  const auto r = ascend(c);
  EXPECT_NEAR(r.best_objective, 6.0, 1e-4);
  EXPECT_LE(r.best_objective, r.proven_bound + 1e-8);
  EXPECT_TRUE(r.monotone_ok);
}

TEST(Ascend, UserMatrixStartIsMonotone) {
  SearchConfig c;
  c.n = 3;
  c.k = 2;
  c.init = InitKind::UserMatrix;
  c.user_matrix = CMatrix::from_rows({{-0.1236, 0.0334, 0.0647}, {-0.4343, 0.1029, -0.8833}, {0, 0, 0}});
  const auto r = ascend(c);
  ASSERT_EQ(r.restarts.size(), 1u);
  EXPECT_NEAR(r.restarts[0].first, 5.9814, 1e-3);
  EXPECT_GE(r.restarts[0].last, r.restarts[0].first);
  EXPECT_TRUE(r.monotone_ok);
}

TEST(Ascend, DeterministicAndThreadIndependent) {
  SearchConfig c;
  c.n = 4;
  c.k = 3;
  c.restarts = 6;
  c.seed = 99;
  c.max_iters = 40;
  c.threads = 1;
  const auto a = ascend(c);
  c.threads = 3;
  const auto b = ascend(c);
  EXPECT_EQ(a.best_objective, b.best_objective);
  EXPECT_EQ(a.best_matrix, b.best_matrix);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(search_to_json(a).dump(), search_to_json(b).dump());
}

TEST(Ascend, InitEnsemblesStayBelowProvenCap) {
  for (auto init : {InitKind::RandomGaussian, InitKind::NormalClass, InitKind::RankOne}) {
    SearchConfig c;
    c.n = 4;
    c.k = 2;
    c.restarts = 4;
    c.seed = 5;
    c.max_iters = 60;
    c.init = init;
    const auto r = ascend(c);
    EXPECT_TRUE(r.proven_caps_ok) << to_string(init);
    EXPECT_TRUE(r.monotone_ok) << to_string(init);
    EXPECT_LE(r.best_objective, r.proven_bound + 1e-8);
  }
}

TEST(Ascend, FixedPointIsStable) {
  SearchConfig c;
  c.n = 3;
  c.k = 1;
  c.seed = 3;
  const auto r = ascend(c);
  // One more half-step (a) from the best matrix does not move the objective.
  EXPECT_NEAR(partial_sum_objective(r.best_matrix, 1), r.best_objective, 1e-9);
}

TEST(Lambda13Search, Examples) {
  const auto two = lambda13_search(2, 2, 1);
  EXPECT_LE(two.lambda13, 2.0 + 1e-8);
  EXPECT_NEAR(two.lambda13_direct, spectrum_TX(two.search.best_matrix).values[0], 1e-12);

  const auto three = lambda13_search(3, 30, 11);
  EXPECT_NEAR(three.lambda13, 3.0, 1e-4);
  EXPECT_NEAR(three.lambda13_direct, three.lambda13, 1e-6);
  EXPECT_TRUE(three.within_proven_cap);
  EXPECT_FALSE(three.exceeds_conjecture);
  EXPECT_LE(three.lambda13, (4 + std::sqrt(10.0)) / 2 + 1e-8);
}

TEST(Sweep, EmptyAndDeterministic) {
  SweepConfig c;
  c.trials = 0;
  const auto e = sweep(c);
  EXPECT_TRUE(e.entries.empty());
  EXPECT_TRUE(e.majorization.empty());

  c.n_min = 2;
  c.n_max = 3;
  c.trials = 40;
  c.seed = 17;
  c.threads = 1;
  const auto a = sweep(c);
  c.threads = 4;
  const auto b = sweep(c);
  EXPECT_EQ(sweep_to_json(a).dump(), sweep_to_json(b).dump());
  EXPECT_EQ(a.entries.size(), 2u + 4u);
  EXPECT_EQ(a.proven_failures, 0u);
  for (const auto& en : a.entries) {
    EXPECT_TRUE(en.violations.empty());
    EXPECT_NEAR(partial_sum_objective(en.argmax_matrix, en.k), en.max_f, 1e-12);
  }
}

TEST(Sweep, FixedDepth) {
  SweepConfig c;
  c.n_min = 3;
  c.n_max = 4;
  c.k = 2;
  c.trials = 10;
  const auto r = sweep(c);
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.entries[0].k, 2u);
  c.k = 5;
  EXPECT_THROW(sweep(c), PreconditionError);
  c.n_min = 1;
  EXPECT_THROW(sweep(c), PreconditionError);
}
