#include "tmassey/massey_temporal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tmassey/errors.hpp"

using namespace tmassey;

namespace {

// Ids in A, B, C, D order (the log numbers teams by first appearance).
std::vector<TeamId> abcd(const MatchLog& log) {
  return {*log.find_team("A"), *log.find_team("B"), *log.find_team("C"), *log.find_team("D")};
}

void expect_column(const RatingHistory& h, const std::vector<TeamId>& id, Round t, std::vector<double> want) {
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(h.rating(id[k], t), want[k], 1e-12) << "team " << k << " round " << t;
}

// Coefficient matrix of team A with rows in A, B, C, D order.
void expect_trace(const CoefficientTrace& tr, const std::vector<TeamId>& id, std::vector<std::vector<double>> want) {
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = 0; l < want[k].size(); ++l)
      EXPECT_NEAR(tr.coefficient(id[k], static_cast<Round>(l + 1)), want[k][l], 1e-12) << "row " << k << " col " << l;
}

std::vector<double> in_order(const std::vector<double>& v, const std::vector<TeamId>& id) {
  return {v[id[0]], v[id[1]], v[id[2]], v[id[3]]};
}

}  // namespace

TEST(Temporal, WorkedExampleRatings) {
  auto log = oracle::example_log();
  auto id = abcd(log);
  auto h = rate_temporal(log, InitialStrengths::zeros(4), 3);
  expect_column(h, id, 0, {0, 0, 0, 0});
  expect_column(h, id, 1, {1, 1, -1, -1});
  expect_column(h, id, 2, {1.5, 0, 0, -1.5});
  expect_column(h, id, 3, {4.0 / 3, 1.0 / 6, -1.0 / 6, -4.0 / 3});
  for (TeamId i = 0; i < 4; ++i) EXPECT_EQ(h.games(i, 3), 3);
}

TEST(Temporal, StepUpdate) {
  auto u = step_update(0, 0, 1, 1, 1);
  EXPECT_DOUBLE_EQ(u.first, 1.0);
  EXPECT_DOUBLE_EQ(u.second, -1.0);
  auto v = step_update(1, -1, 3, 2, 2);
  EXPECT_DOUBLE_EQ(v.first, 1.5);
  EXPECT_DOUBLE_EQ(v.second, -1.5);
}

TEST(Temporal, InputsChecked) {
  auto log = oracle::example_log();
  EXPECT_THROW(rate_temporal(log, InitialStrengths::zeros(3), 3), ConfigError);
  EXPECT_THROW(rate_temporal(log, InitialStrengths{{0, NAN, 0, 0}}, 3), ConfigError);
  EXPECT_THROW(rate_temporal(log, InitialStrengths::zeros(4), -1), ConfigError);
  auto h = rate_temporal(log, InitialStrengths{{1, 2, 3, 4}}, 0);
  EXPECT_EQ(h.column(0), (std::vector<double>{1, 2, 3, 4}));
}

TEST(Temporal, MatchesDirectMeanForm) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z(0.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 9;
    auto log = oracle::random_log(rng, n, 12, true);
    std::vector<double> rho(n);
    for (double& v : rho) v = trial % 2 ? z(rng) : 0.0;
    auto h = rate_temporal(log, InitialStrengths{rho}, 12);
    auto want = oracle::direct_temporal(log, rho, 12);
    for (Round t = 0; t <= 12; ++t) EXPECT_LT(oracle::max_abs_diff(h.column(t), want[static_cast<std::size_t>(t)]), 1e-9);
  }
}

TEST(Temporal, IdleTeamCarriesForward) {
  auto log = parse_csv("round,date,home,away,home_goals,away_goals\n1,,A,B,2,0\n2,,A,C,1,1\n");
  auto h = rate_temporal(log, InitialStrengths{{0, 0, 0.5}}, 2);
  EXPECT_EQ(h.rating(2, 1), 0.5);
  EXPECT_EQ(h.games(2, 1), 0);
  EXPECT_EQ(h.rating(1, 2), h.rating(1, 1));
  EXPECT_EQ(h.games(1, 2), 1);
}

TEST(Temporal, ZeroSumAndPairConservationOnRoundRobins) {
  std::mt19937_64 rng(12);
  for (std::size_t n : {2u, 4u, 6u, 10u, 20u}) {
    auto log = oracle::random_round_robin(rng, n);
    auto h = rate_temporal(log, InitialStrengths::zeros(n), log.rounds());
    for (Round t = 0; t <= log.rounds(); ++t) {
      double sum = 0;
      for (double v : h.column(t)) sum += v;
      EXPECT_NEAR(sum, 0.0, 1e-9);
    }
    for (const auto& m : log.matches()) {
      const Round t = m.round;
      EXPECT_NEAR(h.rating(m.home, t) + h.rating(m.away, t), h.rating(m.home, t - 1) + h.rating(m.away, t - 1), 1e-9);
    }
  }
}

TEST(Trace, WorkedExampleMatrices) {
  auto log = oracle::example_log_round4();
  auto id = abcd(log);
  expect_trace(trace_coefficients(log, id[0], 1), id, {{1}, {0}, {0}, {0}});
  expect_trace(trace_coefficients(log, id[0], 2), id, {{0.5, 0.5}, {0, 0}, {0, 0}, {0.5, 0}});
  expect_trace(trace_coefficients(log, id[0], 3), id,
               {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0 / 6, 1.0 / 6, 0}, {1.0 / 6, 0, 0}, {1.0 / 3, 0, 0}});
  expect_trace(trace_coefficients(log, id[0], 4), id,
               {{7.0 / 24, 0.25, 0.25, 0.25},
                {5.0 / 24, 0.125, 0, 0},
                {5.0 / 24, 1.0 / 12, 1.0 / 12, 0},
                {7.0 / 24, 1.0 / 24, 0, 0}});
}

TEST(Trace, WorkedExampleInitialStrengthCoefficients) {
  auto log = oracle::example_log_round4();
  auto id = abcd(log);
  std::vector<std::vector<double>> want = {
      {0, 0, 1, 0}, {0, 0.5, 0.5, 0}, {1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6}, {5.0 / 24, 7.0 / 24, 7.0 / 24, 5.0 / 24}};
  for (Round t = 1; t <= 4; ++t) {
    auto got = in_order(trace_coefficients(log, id[0], t).init_coeffs, id);
    EXPECT_LT(oracle::max_abs_diff(got, want[static_cast<std::size_t>(t - 1)]), 1e-12) << "round " << t;
  }
}

TEST(Trace, DenseLayout) {
  auto log = oracle::example_log();
  auto tr = trace_coefficients(log, *log.find_team("A"), 2);
  auto d = tr.dense(4);
  EXPECT_EQ(d.rows(), 4u);
  EXPECT_EQ(d.cols(), 2u);
  EXPECT_DOUBLE_EQ(d(*log.find_team("D"), 0), 0.5);
}

TEST(Trace, ReconstructsRatings) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 7;
    auto log = oracle::random_log(rng, n, 8, true);
    std::vector<double> rho(n);
    for (double& v : rho) v = z(rng);
    auto h = rate_temporal(log, InitialStrengths{rho}, 8);
    for (TeamId i = 0; i < n; ++i) {
      auto tr = trace_coefficients(log, i, 8);
      EXPECT_NEAR(reconstruct_from_trace(tr, log, InitialStrengths{rho}), h.rating(i, 8), 1e-9);
      double init = 0;
      for (double c : tr.init_coeffs) {
        EXPECT_GE(c, 0.0);
        init += c;
      }
      EXPECT_NEAR(init, 1.0, 1e-12);
      for (const auto& [key, c] : tr.spread_coeffs) EXPECT_GE(c, 0.0);
    }
  }
}

TEST(Trace, ColumnSumsAreReciprocalRounds) {
  std::mt19937_64 rng(14);
  for (std::size_t n : {4u, 8u, 12u}) {
    auto log = oracle::random_round_robin(rng, n);
    const Round t = log.rounds();
    for (TeamId i = 0; i < n; ++i) {
      auto tr = trace_coefficients(log, i, t);
      for (Round l = 1; l <= t; ++l) EXPECT_NEAR(tr.column_sum(l), 1.0 / l, 1e-12);
      EXPECT_NEAR(tr.total_mass(), harmonic_number(t), 1e-12);
    }
  }
}

TEST(Harmonic, Values) {
  EXPECT_EQ(harmonic_number(1), 1.0);
  EXPECT_DOUBLE_EQ(harmonic_number(4), 25.0 / 12);
  EXPECT_LT(std::abs(harmonic_number(38) - 4.2), 0.05);
  EXPECT_THROW(harmonic_range(0, -1, 1), ConfigError);
  auto range = harmonic_range(38, -3, 3);
  EXPECT_DOUBLE_EQ(range.upper, 3 * harmonic_number(38));
  EXPECT_DOUBLE_EQ(range.lower, -range.upper);
  EXPECT_NEAR(range.upper, 12.6, 0.1);
}

TEST(Harmonic, RatingsStayInsideRange) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    auto log = oracle::random_round_robin(rng, 2 * (2 + trial % 6));
    auto h = rate_temporal(log, InitialStrengths::zeros(log.num_teams()), log.rounds());
    for (Round t = 1; t <= log.rounds(); ++t) {
      auto e = spread_extremes(log, t);
      auto range = harmonic_range(t, e.min, e.max);
      for (double v : h.column(t)) {
        EXPECT_GE(v, range.lower - 1e-9);
        EXPECT_LE(v, range.upper + 1e-9);
      }
    }
  }
}

TEST(Harmonic, SpreadExtremesIncludeZero) {
  auto log = parse_csv("round,date,home,away,home_goals,away_goals\n1,,A,B,3,1\n");
  auto e = spread_extremes(log, 1);
  EXPECT_EQ(e.min, -2);
  EXPECT_EQ(e.max, 2);
  auto none = spread_extremes(log, 0);
  EXPECT_EQ(none.min, 0);
  EXPECT_EQ(none.max, 0);
}

TEST(Prior, StrengthsFromPriorSeason) {
  auto log = oracle::example_log();
  auto rho = strengths_from_prior(log, {{"a", 2.0}, {"D", -1.0}, {"Z", 9.0}}, 0.5);
  EXPECT_EQ(rho.rho[*log.find_team("A")], 1.0);
  EXPECT_EQ(rho.rho[*log.find_team("D")], -0.5);
  EXPECT_EQ(rho.rho[*log.find_team("B")], 0.0);
}
