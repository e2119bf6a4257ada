#pragma once

#include <vector>

#include "tmassey/massey_static.hpp"
#include "tmassey/massey_temporal.hpp"
#include "tmassey/matchlog.hpp"

namespace tmassey {

// Constant-coefficient recurrence: keep = alpha, share = beta = 1 - alpha.
class ConstantCoeffConfig {
 public:
  explicit ConstantCoeffConfig(double alpha);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  Blend blend() const { return {alpha_, beta_}; }

 private:
  double alpha_;
  double beta_;
};

RatingHistory rate_constant(const MatchLog& log, const ConstantCoeffConfig& cfg, const InitialStrengths& rho,
                            Round upto);

CoefficientTrace trace_constant_coefficients(const MatchLog& log, const ConstantCoeffConfig& cfg, TeamId team,
                                             Round t);

// Fixed point r_i = (1 + (w_i - l_i) + sum_j A_ij r_j) / (2 + D_ii) over all
// matches up to `upto`. A draw counts half a win and half a loss.
RatingVector rate_colley_static(const MatchLog& log, Round upto);

// r_i(t) = (1 + (w - l) + sum_k r_{j_k}(t_k - 1)) / (2 + m); r_i(0) = 1/2.
RatingHistory rate_colley_temporal(const MatchLog& log, Round upto);

struct EloConfig {
  double kappa = 25.0;
  double zeta = 400.0;
  double initial = 0.0;
  // Whether the home-field term also enters the update expectation, not just
  // the prediction comparison.
  bool hfa_in_update = true;

  void check() const;
};

// Expected score of a side leading by `diff` rating points.
double elo_expectation(double diff, double zeta);

RatingHistory rate_elo(const MatchLog& log, const EloConfig& cfg, double hfa, Round upto);

// One positive weight per match with round <= upto, in log order.
struct WeightVector {
  std::vector<double> w;
};

WeightVector unit_weights(const MatchLog& log, Round upto);
// w_k = round of match k: late-season games count more.
WeightVector linear_round_weights(const MatchLog& log, Round upto);

RatingVector rate_massey_weighted(const MatchLog& log, const WeightVector& w, Round upto);

}  // namespace tmassey
