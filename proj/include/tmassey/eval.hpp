#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmassey/massey_temporal.hpp"
#include "tmassey/matchlog.hpp"
#include "tmassey/variants.hpp"

namespace tmassey {

enum class MethodId { kMassey, kTemporalMassey, kConstantMassey, kColley, kTemporalColley, kElo, kWeightedMassey, kOfficial };

std::string_view method_name(MethodId id);
std::optional<MethodId> parse_method(std::string_view name);
std::vector<MethodId> all_methods();

enum class WeightsMode { kUnit, kLinear };

struct MethodSpec {
  MethodId id = MethodId::kTemporalMassey;
  double alpha = 0.9;  // constant-coefficient Massey only
  EloConfig elo;
  WeightsMode weights = WeightsMode::kLinear;
  // Temporal and constant-coefficient Massey only; zeros when unset.
  std::optional<InitialStrengths> rho;
};

// Ratings at the end of every round 0..upto, so column t predicts round t+1.
// Static methods (massey, colley, wmassey) are re-solved on the matches up to
// each round; Massey on a disconnected graph is normalized per component.
// The official method's rating is points + goal_diff / 1000. `hfa` only
// matters for Elo with hfa_in_update.
RatingHistory method_history(const MatchLog& log, const MethodSpec& spec, double hfa, Round upto);

// Standard competition ranks (1 = best, ties share the lowest rank).
struct RankingSnapshot {
  std::string method;
  Round round = 0;
  std::vector<int> ranks;  // indexed by TeamId
};

// Ratings closer than this count as tied, both in rankings and in
// predictions; it absorbs rounding noise on mathematically equal ratings.
inline constexpr double kRatingTieTolerance = 1e-9;

// Ratings within `tol` of each other share a rank.
std::vector<int> competition_ranks(const std::vector<double>& ratings, double tol = kRatingTieTolerance);

// Official snapshots rank by points alone, so tied points stay tied.
RankingSnapshot ranking_snapshot(const MatchLog& log, const MethodSpec& spec, const RatingHistory& history, Round t);

// Tau-b. Throws ConfigError with fewer than 2 teams or mismatched sizes.
// Returns NaN when either ranking is entirely tied.
double kendall_tau(const RankingSnapshot& a, const RankingSnapshot& b);

struct KendallSeries {
  std::vector<std::string> pairs;       // "a-b" labels
  std::vector<Round> rounds;
  std::vector<std::vector<double>> tau;  // tau[pair][round index]
};

KendallSeries correlation_series(const MatchLog& log, const std::vector<MethodSpec>& methods, Round from, Round to);

struct PredictionOutcome {
  enum class Result { kHomeWin, kAwayWin, kDraw };
  Round round = 0;
  std::size_t match_index = 0;
  TeamId predicted_winner = 0;
  Result actual = Result::kDraw;
  std::optional<bool> correct;  // empty for draws (excluded)
};

struct RoundAccuracy {
  Round round = 0;
  int correct = 0;
  int decisive = 0;
  int matches = 0;
};

struct AccuracyReport {
  std::string method;
  double hfa = 0.0;
  Round warmup = 0;
  std::vector<RoundAccuracy> per_round;
  std::vector<PredictionOutcome> outcomes;

  int total_correct() const;
  int total_decisive() const;
  // correct / decisive over all predicted rounds; 0 when nothing is decisive.
  double aggregate() const;
};

// Scores round t+1 with column t of `history`, for every round t+1 > warmup.
// The home side is predicted when rating(home) + hfa >= rating(away), up to
// kRatingTieTolerance.
AccuracyReport score_predictions(const MatchLog& log, const RatingHistory& history, double hfa, Round warmup);

AccuracyReport foresight_accuracy(const MatchLog& log, const MethodSpec& spec, double hfa, Round warmup = 1);

struct HfaGrid {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
};

HfaGrid default_hfa_grid(MethodId id);

struct Calibration {
  double h_star = 0.0;
  double accuracy = 0.0;
  std::size_t grid_points = 0;
};

// Exhaustive in-sample search; the smallest maximizing h wins ties.
Calibration calibrate_hfa(const MatchLog& log, const MethodSpec& spec, const HfaGrid& grid, Round warmup = 1);

struct AccuracyHistogram {
  std::array<int, 10> counts{};  // [0,0.1), ..., [0.9,1.0]
  int skipped_rounds = 0;        // rounds with no decisive match
  int perfect_rounds = 0;        // accuracy exactly 1
  int below_half_rounds = 0;     // accuracy strictly below 0.5
};

AccuracyHistogram accuracy_histogram(const AccuracyReport& report);

struct TrajectoryPoint {
  Round round = 0;
  double rating = 0.0;
  int rank = 0;
};

struct Trajectory {
  TeamId team = 0;
  std::string name;
  std::vector<TrajectoryPoint> points;
};

// Throws ConfigError on an empty team list or an unknown team name.
std::vector<Trajectory> trajectory(const MatchLog& log, const MethodSpec& spec, const std::vector<std::string>& teams,
                                   Round from, Round to);

// Circle-method schedule: rounds of (home, away) pairs. n must be even.
std::vector<std::vector<std::pair<TeamId, TeamId>>> circle_schedule(std::size_t n, bool double_round);

struct SyntheticSpec {
  std::size_t teams = 4;
  bool double_round = false;
  std::vector<double> strengths;  // empty means all zero
  double noise = 1.0;
  std::uint64_t seed = 1;
};

// Margins are round(strength_home - strength_away + noise * z) with z drawn
// from a seeded standard normal; the loser scores 0-2 goals.
MatchLog synthetic_roundrobin(const SyntheticSpec& spec);

}  // namespace tmassey
