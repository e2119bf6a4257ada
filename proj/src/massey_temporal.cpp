#include "tmassey/massey_temporal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tmassey/errors.hpp"

namespace tmassey {

namespace {

void check_inputs(const MatchLog& log, const InitialStrengths& rho, Round upto) {
  if (rho.rho.size() != log.num_teams()) {
    throw ConfigError("initial strengths have " + std::to_string(rho.rho.size()) + " entries for " +
                      std::to_string(log.num_teams()) + " teams");
  }
  for (double v : rho.rho) {
    if (!std::isfinite(v)) throw ConfigError("initial strengths must be finite");
  }
  if (upto < 0) throw ConfigError("round range must be nonnegative");
}

using Coefficients = std::map<std::pair<TeamId, Round>, double>;

struct TraceState {
  Coefficients spreads;
  std::vector<double> init;
};

// new = keep * own + share * (E(team, t) + opponent)
TraceState blend_state(const TraceState& own, const TraceState& opponent, TeamId team, Round t, Blend b) {
  TraceState out;
  out.init.resize(own.init.size());
  for (std::size_t k = 0; k < own.init.size(); ++k) out.init[k] = b.keep * own.init[k] + b.share * opponent.init[k];
  for (const auto& [key, c] : own.spreads) {
    if (b.keep != 0.0) out.spreads[key] += b.keep * c;
  }
  for (const auto& [key, c] : opponent.spreads) out.spreads[key] += b.share * c;
  out.spreads[{team, t}] += b.share;
  return out;
}

}  // namespace

RatingHistory::RatingHistory(std::size_t teams, Round rounds)
    : teams_(teams),
      rounds_(rounds),
      values_(teams * static_cast<std::size_t>(rounds + 1), 0.0),
      games_(teams * static_cast<std::size_t>(rounds + 1), 0) {}

std::vector<double> RatingHistory::column(Round t) const {
  auto first = values_.begin() + static_cast<std::ptrdiff_t>(index(0, t));
  return {first, first + static_cast<std::ptrdiff_t>(teams_)};
}

Blend varying_blend(int games) {
  const double m = static_cast<double>(games);
  return {(m - 1.0) / m, 1.0 / m};
}

RatingHistory rate_linear_recurrence(const MatchLog& log, const InitialStrengths& rho, Round upto,
                                     const BlendSchedule& schedule) {
  check_inputs(log, rho, upto);
  const std::size_t n = log.num_teams();
  RatingHistory h(n, upto);
  for (TeamId i = 0; i < n; ++i) h.set(i, 0, rho.rho[i], 0);

  const auto& ms = log.matches();
  auto it = ms.begin();
  for (Round t = 1; t <= upto; ++t) {
    for (TeamId i = 0; i < n; ++i) h.set(i, t, h.rating(i, t - 1), h.games(i, t - 1));
    for (; it != ms.end() && it->round <= t; ++it) {
      if (it->round < t) continue;
      for (TeamId self : {it->home, it->away}) {
        const TeamId opp = it->opponent(self);
        const int m = h.games(self, t - 1) + 1;
        const Blend b = schedule(m, t);
        const double r = b.keep * h.rating(self, t - 1) + b.share * (h.rating(opp, t - 1) + point_spread(*it, self));
        h.set(self, t, r, m);
      }
    }
  }
  return h;
}

RatingHistory rate_temporal(const MatchLog& log, const InitialStrengths& rho, Round upto) {
  return rate_linear_recurrence(log, rho, upto, [](int m, Round) { return varying_blend(m); });
}

PairUpdate step_update(double r_i_prev, double r_j_prev, double s_i, int m_i, int m_j) {
  const Blend bi = varying_blend(m_i);
  const Blend bj = varying_blend(m_j);
  return {bi.keep * r_i_prev + bi.share * (s_i + r_j_prev), bj.keep * r_j_prev + bj.share * (-s_i + r_i_prev)};
}

double CoefficientTrace::coefficient(TeamId k, Round l) const {
  auto it = spread_coeffs.find({k, l});
  return it == spread_coeffs.end() ? 0.0 : it->second;
}

double CoefficientTrace::column_sum(Round l) const {
  double s = 0.0;
  for (const auto& [key, c] : spread_coeffs)
    if (key.second == l) s += c;
  return s;
}

double CoefficientTrace::total_mass() const {
  double s = 0.0;
  for (const auto& [key, c] : spread_coeffs) s += c;
  return s;
}

linalg::Matrix CoefficientTrace::dense(std::size_t teams) const {
  linalg::Matrix out(teams, static_cast<std::size_t>(std::max(round, 0)));
  for (const auto& [key, c] : spread_coeffs) out(key.first, static_cast<std::size_t>(key.second - 1)) = c;
  return out;
}

CoefficientTrace trace_linear_recurrence(const MatchLog& log, TeamId team, Round t, const BlendSchedule& schedule) {
  const std::size_t n = log.num_teams();
  if (team >= n) throw ConfigError("team id " + std::to_string(team) + " out of range");
  if (t < 0) throw ConfigError("round must be nonnegative");

  std::vector<TraceState> states(n);
  std::vector<int> games(n, 0);
  for (TeamId i = 0; i < n; ++i) {
    states[i].init.assign(n, 0.0);
    states[i].init[i] = 1.0;
  }
  for (Round r = 1; r <= t; ++r) {
    auto next = states;
    auto next_games = games;
    for (const auto& m : log.matches()) {
      if (m.round != r) continue;
      for (TeamId self : {m.home, m.away}) {
        const TeamId opp = m.opponent(self);
        const int count = games[self] + 1;
        next[self] = blend_state(states[self], states[opp], self, r, schedule(count, r));
        next_games[self] = count;
      }
    }
    states = std::move(next);
    games = std::move(next_games);
  }
  CoefficientTrace trace;
  trace.team = team;
  trace.round = t;
  trace.spread_coeffs = std::move(states[team].spreads);
  trace.init_coeffs = std::move(states[team].init);
  return trace;
}

CoefficientTrace trace_coefficients(const MatchLog& log, TeamId team, Round t) {
  return trace_linear_recurrence(log, team, t, [](int m, Round) { return varying_blend(m); });
}

double reconstruct_from_trace(const CoefficientTrace& trace, const MatchLog& log, const InitialStrengths& rho) {
  std::map<std::pair<TeamId, Round>, int> spreads;
  for (const auto& m : log.matches()) {
    if (m.round > trace.round) continue;
    spreads[{m.home, m.round}] = point_spread(m, m.home);
    spreads[{m.away, m.round}] = point_spread(m, m.away);
  }
  double r = 0.0;
  for (const auto& [key, c] : trace.spread_coeffs) {
    auto it = spreads.find(key);
    if (it != spreads.end()) r += c * it->second;
  }
  for (std::size_t k = 0; k < trace.init_coeffs.size() && k < rho.rho.size(); ++k) r += trace.init_coeffs[k] * rho.rho[k];
  return r;
}

double harmonic_number(int t) {
  double h = 0.0;
  for (int l = t; l >= 1; --l) h += 1.0 / l;
  return h;
}

HarmonicRange harmonic_range(int t, double min_spread, double max_spread) {
  if (t < 1) throw ConfigError("harmonic range needs t >= 1");
  const double h = harmonic_number(t);
  return {h, h * min_spread, h * max_spread};
}

SpreadExtremes spread_extremes(const MatchLog& log, Round upto) {
  SpreadExtremes e;
  bool any = false;
  for (const auto& m : log.matches()) {
    if (m.round > upto) continue;
    const int s = point_spread(m, m.home);
    const int lo = std::min(s, -s), hi = std::max(s, -s);
    e.min = any ? std::min(e.min, lo) : lo;
    e.max = any ? std::max(e.max, hi) : hi;
    any = true;
  }
  // Idle (team, round) slots carry a zero spread, and spreads come in +/- pairs,
  // so 0 is always inside [min, max].
  e.min = std::min(e.min, 0);
  e.max = std::max(e.max, 0);
  return e;
}

InitialStrengths strengths_from_prior(const MatchLog& log, const std::vector<std::pair<std::string, double>>& prior,
                                      double scale) {
  if (!std::isfinite(scale)) throw ConfigError("strength scale must be finite");
  auto rho = InitialStrengths::zeros(log.num_teams());
  for (const auto& [name, rating] : prior) {
    if (!std::isfinite(rating)) throw ConfigError("prior rating for '" + name + "' is not finite");
    if (auto id = log.find_team(name)) rho.rho[*id] = scale * rating;
  }
  return rho;
}

}  // namespace tmassey
