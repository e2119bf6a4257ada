#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "tmassey/linalg.hpp"
#include "tmassey/matchlog.hpp"

namespace tmassey {

// Pre-season ratings, one per team, in spread units.
struct InitialStrengths {
  std::vector<double> rho;

  static InitialStrengths zeros(std::size_t n) { return {std::vector<double>(n, 0.0)}; }
};

// Ratings and match counts for rounds 0..rounds(). Column 0 is rho.
class RatingHistory {
 public:
  RatingHistory() = default;
  RatingHistory(std::size_t teams, Round rounds);

  std::size_t num_teams() const { return teams_; }
  Round rounds() const { return rounds_; }

  double rating(TeamId team, Round t) const { return values_[index(team, t)]; }
  int games(TeamId team, Round t) const { return games_[index(team, t)]; }
  void set(TeamId team, Round t, double rating, int games) {
    values_[index(team, t)] = rating;
    games_[index(team, t)] = games;
  }

  std::vector<double> column(Round t) const;

 private:
  std::size_t index(TeamId team, Round t) const { return static_cast<std::size_t>(t) * teams_ + team; }

  std::size_t teams_ = 0;
  Round rounds_ = 0;
  std::vector<double> values_;
  std::vector<int> games_;
};

// Weights for a team finishing its m-th match at round t:
//   r_new = keep * r_old + share * (r_opponent_old + spread)
struct Blend {
  double keep = 0.0;
  double share = 1.0;
};

using BlendSchedule = std::function<Blend(int games, Round round)>;

// ((m-1)/m, 1/m): the temporalized Massey weights.
Blend varying_blend(int games);

// Batch-per-round driver shared by the temporalized and constant-coefficient
// recurrences. Every match at round t reads column t-1 only.
RatingHistory rate_linear_recurrence(const MatchLog& log, const InitialStrengths& rho, Round upto,
                                     const BlendSchedule& schedule);

RatingHistory rate_temporal(const MatchLog& log, const InitialStrengths& rho, Round upto);

struct PairUpdate {
  double first;
  double second;
};

// One temporalized update; m_i and m_j already include this match.
PairUpdate step_update(double r_i_prev, double r_j_prev, double s_i, int m_i, int m_j);

// r_i(t) as a nonnegative combination of realized spreads s_k(l) plus a
// combination of the initial strengths.
struct CoefficientTrace {
  TeamId team = 0;
  Round round = 0;
  std::map<std::pair<TeamId, Round>, double> spread_coeffs;
  std::vector<double> init_coeffs;

  double coefficient(TeamId k, Round l) const;
  double column_sum(Round l) const;
  double total_mass() const;
  // n x round matrix with column l-1 holding round l.
  linalg::Matrix dense(std::size_t teams) const;
};

CoefficientTrace trace_linear_recurrence(const MatchLog& log, TeamId team, Round t, const BlendSchedule& schedule);
CoefficientTrace trace_coefficients(const MatchLog& log, TeamId team, Round t);

double reconstruct_from_trace(const CoefficientTrace& trace, const MatchLog& log, const InitialStrengths& rho);

double harmonic_number(int t);

struct HarmonicRange {
  double harmonic = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

HarmonicRange harmonic_range(int t, double min_spread, double max_spread);

struct SpreadExtremes {
  int min = 0;
  int max = 0;
};

// Over all teams and rounds 1..upto; an idle team contributes a 0 spread.
SpreadExtremes spread_extremes(const MatchLog& log, Round upto);

// Builds rho from prior-season ratings keyed by team name. Teams without a
// prior rating (e.g. promoted sides) start at 0.
InitialStrengths strengths_from_prior(const MatchLog& log, const std::vector<std::pair<std::string, double>>& prior,
                                      double scale = 1.0);

}  // namespace tmassey
