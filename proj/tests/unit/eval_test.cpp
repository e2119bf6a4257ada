#include "tmassey/eval.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tmassey/errors.hpp"

using namespace tmassey;

namespace {

RankingSnapshot snap(std::vector<int> ranks) { return {"x", 0, std::move(ranks)}; }

std::vector<double> as_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

MethodSpec spec_of(MethodId id) {
  MethodSpec s;
  s.id = id;
  return s;
}

// Team i has strength 4 * i, so with no noise the stronger side wins by 4+ goals.
MatchLog separated_season(std::size_t teams, std::uint64_t seed) {
  SyntheticSpec s;
  s.teams = teams;
  s.double_round = true;
  s.noise = 0.0;
  s.seed = seed;
  for (std::size_t i = 0; i < s.teams; ++i) s.strengths.push_back(4.0 * static_cast<double>(i));
  return synthetic_roundrobin(s);
}

}  // namespace

TEST(Methods, NamesRoundTrip) {
  for (auto id : all_methods()) EXPECT_EQ(parse_method(method_name(id)), id);
  EXPECT_FALSE(parse_method("bogus"));
  EXPECT_EQ(all_methods().size(), 8u);
}

TEST(Methods, HistoriesStartAtRoundZero) {
  auto log = oracle::example_log();
  for (auto id : all_methods()) {
    auto h = method_history(log, spec_of(id), 0.0, 3);
    EXPECT_EQ(h.rounds(), 3) << method_name(id);
    EXPECT_EQ(h.num_teams(), 4u);
  }
  auto tm = method_history(log, spec_of(MethodId::kTemporalMassey), 0.0, 3);
  EXPECT_NEAR(tm.rating(*log.find_team("A"), 3), 4.0 / 3, 1e-12);
  auto m = method_history(log, spec_of(MethodId::kMassey), 0.0, 3);
  EXPECT_NEAR(m.rating(*log.find_team("A"), 3), 1.25, 1e-12);
  auto off = method_history(log, spec_of(MethodId::kOfficial), 0.0, 3);
  EXPECT_NEAR(off.rating(*log.find_team("A"), 3), 9.005, 1e-12);
}

TEST(Ranks, CompetitionTies) {
  EXPECT_EQ(competition_ranks({3, 1, 3, 2}), (std::vector<int>{1, 4, 1, 3}));
  EXPECT_EQ(competition_ranks({1.0, 1.0 + 1e-12}), (std::vector<int>{1, 1}));
}

TEST(Ranks, OfficialSnapshotKeepsPointTies) {
  auto log = oracle::example_log();
  auto spec = spec_of(MethodId::kOfficial);
  auto h = method_history(log, spec, 0.0, 3);
  auto s = ranking_snapshot(log, spec, h, 3);
  // Points after round 3: A 9, B 4, C 4, D 0.
  EXPECT_EQ(s.ranks[*log.find_team("A")], 1);
  EXPECT_EQ(s.ranks[*log.find_team("B")], 2);
  EXPECT_EQ(s.ranks[*log.find_team("C")], 2);
  EXPECT_EQ(s.ranks[*log.find_team("D")], 4);
}

TEST(Kendall, Examples) {
  EXPECT_DOUBLE_EQ(kendall_tau(snap({1, 2, 3, 4}), snap({1, 2, 3, 4})), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau(snap({1, 2, 3, 4}), snap({4, 3, 2, 1})), -1.0);
  EXPECT_NEAR(kendall_tau(snap({1, 2, 3, 4}), snap({1, 3, 2, 4})), 2.0 / 3, 1e-12);
  EXPECT_THROW(kendall_tau(snap({1}), snap({1})), ConfigError);
  EXPECT_THROW(kendall_tau(snap({1, 2}), snap({1, 2, 3})), ConfigError);
  EXPECT_TRUE(std::isnan(kendall_tau(snap({1, 1, 1}), snap({1, 2, 3}))));
}

TEST(Kendall, AgreesWithPairCountingOnAllPermutations) {
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> base(static_cast<std::size_t>(n));
    std::iota(base.begin(), base.end(), 1);
    auto perm = base;
    do {
      const double got = kendall_tau(snap(base), snap(perm));
      EXPECT_NEAR(got, oracle::kendall_tau_b(as_doubles(base), as_doubles(perm)), 1e-12);
      EXPECT_DOUBLE_EQ(got, kendall_tau(snap(perm), snap(base)));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Kendall, TiedRankingsAgreeWithOracle) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> value(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(7), y(7);
    for (auto& v : x) v = value(rng);
    for (auto& v : y) v = value(rng);
    auto a = snap(competition_ranks(x)), b = snap(competition_ranks(y));
    // Ranks reverse the order of ratings; tau-b is unchanged when both are reversed.
    const double want = oracle::kendall_tau_b(x, y);
    const double got = kendall_tau(a, b);
    if (std::isnan(want)) {
      EXPECT_TRUE(std::isnan(got));
    } else {
      EXPECT_NEAR(got, want, 1e-12);
      EXPECT_DOUBLE_EQ(got, kendall_tau(b, a));
    }
  }
}

TEST(Kendall, SelfSeriesIsOne) {
  std::mt19937_64 rng(32);
  auto log = oracle::random_round_robin(rng, 8);
  auto series = correlation_series(log, {spec_of(MethodId::kTemporalMassey), spec_of(MethodId::kTemporalMassey)}, 1,
                                   log.rounds());
  ASSERT_EQ(series.pairs.size(), 1u);
  EXPECT_EQ(series.pairs[0], "tmassey-tmassey");
  for (double tau : series.tau[0]) EXPECT_DOUBLE_EQ(tau, 1.0);
  EXPECT_THROW(correlation_series(log, {spec_of(MethodId::kMassey)}, 0, 3), ConfigError);
}

TEST(Kendall, ThreeMethodSeriesShape) {
  std::mt19937_64 rng(33);
  auto log = oracle::random_round_robin(rng, 10);
  auto series = correlation_series(
      log, {spec_of(MethodId::kTemporalMassey), spec_of(MethodId::kMassey), spec_of(MethodId::kOfficial)}, 3, 9);
  EXPECT_EQ(series.pairs, (std::vector<std::string>{"tmassey-massey", "tmassey-official", "massey-official"}));
  EXPECT_EQ(series.rounds.size(), 7u);
  for (const auto& row : series.tau) {
    ASSERT_EQ(row.size(), 7u);
    for (double tau : row) {
      EXPECT_GE(tau, -1.0 - 1e-12);
      EXPECT_LE(tau, 1.0 + 1e-12);
    }
  }
}

TEST(Foresight, PerfectPredictorOnOwnFixture) {
  // Fixed strengths A > B > C > D; the stronger side always wins.
  auto log = parse_csv(
      "round,date,home,away,home_goals,away_goals\n"
      "1,,A,D,1,0\n1,,B,C,1,0\n2,,A,C,2,0\n2,,D,B,0,2\n3,,A,B,3,2\n3,,C,D,1,0\n4,,D,A,0,1\n4,,C,B,0,1\n");
  RatingHistory h(4, 4);
  const std::vector<std::pair<std::string, double>> strength = {{"A", 4}, {"B", 3}, {"C", 2}, {"D", 1}};
  for (const auto& [name, s] : strength)
    for (Round t = 0; t <= 4; ++t) h.set(*log.find_team(name), t, s, 0);
  auto rep = score_predictions(log, h, 0.0, 0);
  EXPECT_EQ(rep.total_decisive(), 8);
  EXPECT_DOUBLE_EQ(rep.aggregate(), 1.0);
}

TEST(Foresight, DrawsExcludedAndCounts) {
  auto log = oracle::example_log();
  auto rep = foresight_accuracy(log, spec_of(MethodId::kTemporalMassey), 0.0, 1);
  ASSERT_EQ(rep.per_round.size(), 2u);
  EXPECT_EQ(rep.per_round[0].round, 2);
  EXPECT_EQ(rep.per_round[0].matches, 2);
  EXPECT_EQ(rep.per_round[0].decisive, 1);
  for (const auto& o : rep.outcomes)
    if (o.actual == PredictionOutcome::Result::kDraw) EXPECT_FALSE(o.correct.has_value());
  for (const auto& r : rep.per_round) EXPECT_LE(r.decisive, r.matches);
  // Round 2 after round 1: A (1) vs D (-1) picks A, correct; round 3: A (1.5)
  // vs B (0) picks A, correct; C (0) vs D (-1.5) picks C, correct.
  EXPECT_EQ(rep.total_correct(), 3);
  EXPECT_EQ(rep.total_decisive(), 3);
  EXPECT_THROW(foresight_accuracy(log, spec_of(MethodId::kMassey), 0.0, -1), ConfigError);
}

TEST(Foresight, MonotoneRescalingInvariant) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    auto log = oracle::random_round_robin(rng, 8);
    auto h = method_history(log, spec_of(MethodId::kTemporalMassey), 0.0, log.rounds());
    RatingHistory g(h.num_teams(), h.rounds());
    for (Round t = 0; t <= h.rounds(); ++t)
      for (TeamId i = 0; i < h.num_teams(); ++i) g.set(i, t, std::exp(0.7 * h.rating(i, t)) + 3.0, h.games(i, t));
    auto a = score_predictions(log, h, 0.0, 1), b = score_predictions(log, g, 0.0, 1);
    EXPECT_EQ(a.total_correct(), b.total_correct());
    EXPECT_EQ(a.aggregate(), b.aggregate());
  }
}

TEST(Calibration, TiedRatingsAlreadyFavourHome) {
  // Home sides win every match and all round-0 ratings tie. Ties go to the
  // home side, so h = 0 is already perfect and wins the tie-break.
  auto log = parse_csv("round,date,home,away,home_goals,away_goals\n1,,A,B,1,0\n1,,C,D,1,0\n");
  auto spec = spec_of(MethodId::kOfficial);
  auto cal = calibrate_hfa(log, spec, {0.0, 1.0, 0.25}, 0);
  EXPECT_DOUBLE_EQ(cal.h_star, 0.0);
  EXPECT_DOUBLE_EQ(cal.accuracy, 1.0);
  EXPECT_EQ(cal.grid_points, 5u);

  auto away = parse_csv("round,date,home,away,home_goals,away_goals\n1,,A,B,0,1\n1,,C,D,0,1\n");
  auto neg = calibrate_hfa(away, spec, {-1.0, 1.0, 0.25}, 0);
  EXPECT_DOUBLE_EQ(neg.h_star, -1.0);
  EXPECT_DOUBLE_EQ(neg.accuracy, 1.0);
}

TEST(Calibration, SmallestSufficientGridPoint) {
  // Round-2 home sides trail their visitors by 3 points and 1 goal, and win.
  auto log = parse_csv(
      "round,date,home,away,home_goals,away_goals\n"
      "1,,B,X,1,0\n1,,D,Y,1,0\n2,,A,B,1,0\n2,,C,D,1,0\n");
  auto cal = calibrate_hfa(log, spec_of(MethodId::kOfficial), {0.0, 10.0, 0.5}, 1);
  EXPECT_DOUBLE_EQ(cal.h_star, 3.5);
  EXPECT_DOUBLE_EQ(cal.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(foresight_accuracy(log, spec_of(MethodId::kOfficial), 3.0, 1).aggregate(), 0.0);
}

TEST(Calibration, SinglePointGridAndNeverWorseThanZero) {
  std::mt19937_64 rng(35);
  auto log = oracle::random_round_robin(rng, 8);
  auto spec = spec_of(MethodId::kTemporalMassey);
  auto single = calibrate_hfa(log, spec, {0.0, 0.0, 1.0});
  EXPECT_EQ(single.h_star, 0.0);
  EXPECT_EQ(single.grid_points, 1u);
  for (auto id : all_methods()) {
    auto s = spec_of(id);
    const double at_zero = foresight_accuracy(log, s, 0.0).aggregate();
    auto grid = default_hfa_grid(id);
    grid.max = grid.min + 20 * grid.step;
    auto cal = calibrate_hfa(log, s, grid);
    EXPECT_GE(cal.accuracy, at_zero) << method_name(id);
    EXPECT_DOUBLE_EQ(foresight_accuracy(log, s, cal.h_star).aggregate(), cal.accuracy) << method_name(id);
  }
  EXPECT_THROW(calibrate_hfa(log, spec, {1.0, 0.0, 0.1}), ConfigError);
}

TEST(Calibration, GridPoints) {
  EXPECT_EQ((HfaGrid{0, 2, 0.01}).points().size(), 201u);
  EXPECT_EQ((HfaGrid{0, 200, 1}).points().size(), 201u);
  EXPECT_EQ((HfaGrid{0, 0.2, 0.001}).points().size(), 201u);
  EXPECT_THROW((HfaGrid{0, 1, 0}).points(), ConfigError);
}

TEST(Histogram, Degenerate) {
  AccuracyReport rep;
  rep.per_round = {{1, 3, 3, 4}, {2, 5, 5, 5}, {3, 0, 0, 2}};
  auto h = accuracy_histogram(rep);
  EXPECT_EQ(h.counts[9], 2);
  EXPECT_EQ(h.skipped_rounds, 1);
  EXPECT_EQ(h.perfect_rounds, 2);
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), 0), 2);
  EXPECT_THROW(accuracy_histogram(AccuracyReport{}), ConfigError);
}

TEST(Histogram, BinEdges) {
  AccuracyReport rep;
  rep.per_round = {{1, 7, 10, 10}, {2, 1, 2, 2}, {3, 0, 3, 3}, {4, 9, 10, 10}, {5, 2, 5, 5}};
  auto h = accuracy_histogram(rep);
  EXPECT_EQ(h.counts[7], 1);
  EXPECT_EQ(h.counts[5], 1);
  EXPECT_EQ(h.counts[0], 1);
  EXPECT_EQ(h.counts[9], 1);
  EXPECT_EQ(h.counts[4], 1);
  EXPECT_EQ(h.below_half_rounds, 2);
}

TEST(Histogram, CountsSumToDecisiveRounds) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    auto log = oracle::random_log(rng, 6, 12, true, 1);
    auto rep = foresight_accuracy(log, spec_of(MethodId::kTemporalMassey), 0.3, 0);
    auto h = accuracy_histogram(rep);
    int decisive_rounds = 0;
    for (const auto& r : rep.per_round) decisive_rounds += r.decisive > 0;
    EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), 0), decisive_rounds);
    EXPECT_EQ(decisive_rounds + h.skipped_rounds, static_cast<int>(rep.per_round.size()));
  }
}

TEST(Trajectory, WorkedExample) {
  auto log = oracle::example_log();
  auto tr = trajectory(log, spec_of(MethodId::kTemporalMassey), {"A"}, 1, 3);
  ASSERT_EQ(tr.size(), 1u);
  ASSERT_EQ(tr[0].points.size(), 3u);
  EXPECT_NEAR(tr[0].points[0].rating, 1.0, 1e-12);
  EXPECT_NEAR(tr[0].points[1].rating, 1.5, 1e-12);
  EXPECT_NEAR(tr[0].points[2].rating, 4.0 / 3, 1e-12);
  EXPECT_EQ(tr[0].points[0].rank, 1);
  EXPECT_EQ(tr[0].points[2].rank, 1);
}

TEST(Trajectory, IdleTeamIsFlat) {
  auto log = parse_csv("round,date,home,away,home_goals,away_goals\n1,,A,B,2,0\n2,,A,B,1,1\n3,,B,A,0,1\n4,,C,A,0,0\n");
  auto tr = trajectory(log, spec_of(MethodId::kTemporalMassey), {"C"}, 0, 3);
  for (const auto& p : tr[0].points) EXPECT_EQ(p.rating, 0.0);
  EXPECT_THROW(trajectory(log, spec_of(MethodId::kTemporalMassey), {"Z"}, 0, 3), ConfigError);
  EXPECT_THROW(trajectory(log, spec_of(MethodId::kTemporalMassey), {}, 0, 3), ConfigError);
}

TEST(Synthetic, ScheduleShape) {
  auto four = synthetic_roundrobin(SyntheticSpec{});
  EXPECT_EQ(four.rounds(), 3);
  EXPECT_EQ(four.matches().size(), 6u);
  std::set<std::pair<TeamId, TeamId>> pairs;
  for (const auto& m : four.matches()) pairs.insert({std::min(m.home, m.away), std::max(m.home, m.away)});
  EXPECT_EQ(pairs.size(), 6u);
  EXPECT_TRUE(validate(four).empty());

  SyntheticSpec big;
  big.teams = 20;
  big.double_round = true;
  auto season = synthetic_roundrobin(big);
  EXPECT_EQ(season.rounds(), 38);
  EXPECT_EQ(season.matches().size(), 380u);
  EXPECT_TRUE(validate(season).empty());
  std::map<std::pair<TeamId, TeamId>, int> ordered;
  for (const auto& m : season.matches()) ++ordered[{m.home, m.away}];
  EXPECT_EQ(ordered.size(), 380u);
  EXPECT_EQ(season.team_name(0), "T01");
}

TEST(Synthetic, Deterministic) {
  SyntheticSpec s;
  s.teams = 6;
  s.seed = 7;
  auto a = synthetic_roundrobin(s), b = synthetic_roundrobin(s);
  ASSERT_EQ(a.matches().size(), b.matches().size());
  for (std::size_t k = 0; k < a.matches().size(); ++k) {
    EXPECT_EQ(a.matches()[k].home_score, b.matches()[k].home_score);
    EXPECT_EQ(a.matches()[k].away_score, b.matches()[k].away_score);
  }
  s.teams = 5;
  EXPECT_THROW(synthetic_roundrobin(s), ConfigError);
  s.teams = 4;
  s.strengths = {1, 2};
  EXPECT_THROW(synthetic_roundrobin(s), ConfigError);
}

TEST(Synthetic, SeparatedStrengthsPredictedPerfectlyAfterWarmup) {
  for (std::size_t n : {10u, 20u}) {
    auto log = separated_season(n, 1);
    const Round first_leg = static_cast<Round>(n - 1);
    for (auto id : all_methods()) {
      auto early = foresight_accuracy(log, spec_of(id), 0.0, 2);
      auto second_leg = foresight_accuracy(log, spec_of(id), 0.0, first_leg);
      ASSERT_GT(second_leg.total_decisive(), 0);
      EXPECT_DOUBLE_EQ(second_leg.aggregate(), 1.0) << method_name(id) << " n " << n;
      EXPECT_GE(early.aggregate(), 0.9) << method_name(id) << " n " << n;
      if (id == MethodId::kMassey || id == MethodId::kWeightedMassey)
        EXPECT_DOUBLE_EQ(early.aggregate(), 1.0) << method_name(id) << " n " << n;
    }
  }
}
