#include "tmassey/variants.hpp"

#include <cmath>
#include <string>

#include "tmassey/errors.hpp"
#include "tmassey/linalg.hpp"

namespace tmassey {

ConstantCoeffConfig::ConstantCoeffConfig(double alpha) : alpha_(alpha), beta_(1.0 - alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1), got " + std::to_string(alpha));
}

RatingHistory rate_constant(const MatchLog& log, const ConstantCoeffConfig& cfg, const InitialStrengths& rho,
                            Round upto) {
  const Blend b = cfg.blend();
  return rate_linear_recurrence(log, rho, upto, [b](int, Round) { return b; });
}

CoefficientTrace trace_constant_coefficients(const MatchLog& log, const ConstantCoeffConfig& cfg, TeamId team,
                                             Round t) {
  const Blend b = cfg.blend();
  return trace_linear_recurrence(log, team, t, [b](int, Round) { return b; });
}

namespace {

// Half a win and half a loss for a draw, so only decisive results move w - l.
double win_loss_diff(const MatchRecord& m, TeamId team) {
  const int s = point_spread(m, team);
  return s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0);
}

}  // namespace

RatingVector rate_colley_static(const MatchLog& log, Round upto) {
  const std::size_t n = log.num_teams();
  linalg::Matrix c(n, n);
  std::vector<double> b(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) c(i, i) = 2.0;
  for (const auto& m : log.matches()) {
    if (m.round > upto) continue;
    c(m.home, m.home) += 1.0;
    c(m.away, m.away) += 1.0;
    c(m.home, m.away) -= 1.0;
    c(m.away, m.home) -= 1.0;
    b[m.home] += win_loss_diff(m, m.home);
    b[m.away] += win_loss_diff(m, m.away);
  }
  return RatingVector{linalg::solve(c, b)};
}

RatingHistory rate_colley_temporal(const MatchLog& log, Round upto) {
  if (upto < 0) throw ConfigError("round range must be nonnegative");
  const std::size_t n = log.num_teams();
  RatingHistory h(n, upto);
  std::vector<double> diff(n, 0.0), opponents(n, 0.0);
  for (TeamId i = 0; i < n; ++i) h.set(i, 0, 0.5, 0);
  for (Round t = 1; t <= upto; ++t) {
    for (TeamId i = 0; i < n; ++i) h.set(i, t, h.rating(i, t - 1), h.games(i, t - 1));
    for (const auto& m : log.matches()) {
      if (m.round != t) continue;
      for (TeamId self : {m.home, m.away}) {
        diff[self] += win_loss_diff(m, self);
        opponents[self] += h.rating(m.opponent(self), t - 1);
        const int games = h.games(self, t - 1) + 1;
        h.set(self, t, (1.0 + diff[self] + opponents[self]) / (2.0 + games), games);
      }
    }
  }
  return h;
}

void EloConfig::check() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ConfigError("Elo kappa must be positive");
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw ConfigError("Elo zeta must be positive");
  if (!std::isfinite(initial)) throw ConfigError("Elo initial rating must be finite");
}

double elo_expectation(double diff, double zeta) { return 1.0 / (1.0 + std::pow(10.0, -diff / zeta)); }

RatingHistory rate_elo(const MatchLog& log, const EloConfig& cfg, double hfa, Round upto) {
  cfg.check();
  if (!std::isfinite(hfa)) throw ConfigError("home-field advantage must be finite");
  if (upto < 0) throw ConfigError("round range must be nonnegative");
  const std::size_t n = log.num_teams();
  RatingHistory h(n, upto);
  for (TeamId i = 0; i < n; ++i) h.set(i, 0, cfg.initial, 0);
  const double update_hfa = cfg.hfa_in_update ? hfa : 0.0;
  for (Round t = 1; t <= upto; ++t) {
    for (TeamId i = 0; i < n; ++i) h.set(i, t, h.rating(i, t - 1), h.games(i, t - 1));
    for (const auto& m : log.matches()) {
      if (m.round != t) continue;
      const double rh = h.rating(m.home, t - 1);
      const double ra = h.rating(m.away, t - 1);
      const double mu = elo_expectation(rh - ra + update_hfa, cfg.zeta);
      const double score = m.home_score > m.away_score ? 1.0 : (m.home_score < m.away_score ? 0.0 : 0.5);
      const double delta = cfg.kappa * (score - mu);
      h.set(m.home, t, rh + delta, h.games(m.home, t - 1) + 1);
      h.set(m.away, t, ra - delta, h.games(m.away, t - 1) + 1);
    }
  }
  return h;
}

WeightVector unit_weights(const MatchLog& log, Round upto) {
  return {std::vector<double>(log.count_upto(upto), 1.0)};
}

WeightVector linear_round_weights(const MatchLog& log, Round upto) {
  WeightVector w;
  for (const auto& m : log.matches())
    if (m.round <= upto) w.w.push_back(static_cast<double>(m.round));
  return w;
}

RatingVector rate_massey_weighted(const MatchLog& log, const WeightVector& w, Round upto) {
  auto sys = build_incidence(log, upto);
  return solve_massey(build_normal(sys, w.w));
}

}  // namespace tmassey
