#include "tmassey/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tmassey/errors.hpp"
#include "tmassey/massey_static.hpp"

namespace tmassey {

namespace {

constexpr std::array<std::pair<MethodId, std::string_view>, 8> kMethodNames{{
    {MethodId::kMassey, "massey"},
    {MethodId::kTemporalMassey, "tmassey"},
    {MethodId::kConstantMassey, "cmassey"},
    {MethodId::kColley, "colley"},
    {MethodId::kTemporalColley, "tcolley"},
    {MethodId::kElo, "elo"},
    {MethodId::kWeightedMassey, "wmassey"},
    {MethodId::kOfficial, "official"},
}};

void fill_column(RatingHistory& h, Round t, const std::vector<double>& values, const MatchLog& log) {
  std::vector<int> games(log.num_teams(), 0);
  for (const auto& m : log.matches()) {
    if (m.round > t) break;
    ++games[m.home];
    ++games[m.away];
  }
  for (TeamId i = 0; i < values.size(); ++i) h.set(i, t, values[i], games[i]);
}

std::vector<double> official_rating(const MatchLog& log, Round t) {
  auto s = official_standings(log, t);
  std::vector<double> out(log.num_teams());
  for (const auto& row : s.rows) out[row.team] = row.points + row.goal_diff / 1000.0;
  return out;
}

}  // namespace

std::string_view method_name(MethodId id) {
  for (const auto& [m, name] : kMethodNames)
    if (m == id) return name;
  return "unknown";
}

std::optional<MethodId> parse_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames)
    if (n == name) return m;
  return std::nullopt;
}

std::vector<MethodId> all_methods() {
  std::vector<MethodId> out;
  for (const auto& [m, n] : kMethodNames) out.push_back(m);
  return out;
}

RatingHistory method_history(const MatchLog& log, const MethodSpec& spec, double hfa, Round upto) {
  const std::size_t n = log.num_teams();
  auto rho = spec.rho.value_or(InitialStrengths::zeros(n));
  switch (spec.id) {
    case MethodId::kTemporalMassey:
      return rate_temporal(log, rho, upto);
    case MethodId::kConstantMassey:
      return rate_constant(log, ConstantCoeffConfig(spec.alpha), rho, upto);
    case MethodId::kTemporalColley:
      return rate_colley_temporal(log, upto);
    case MethodId::kElo:
      return rate_elo(log, spec.elo, hfa, upto);
    default:
      break;
  }
  if (upto < 0) throw ConfigError("round range must be nonnegative");
  RatingHistory h(n, upto);
  for (Round t = 0; t <= upto; ++t) {
    std::vector<double> values;
    switch (spec.id) {
      case MethodId::kMassey:
        values = solve_massey_by_component(build_normal(build_incidence(log, t))).values;
        break;
      case MethodId::kWeightedMassey: {
        auto w = spec.weights == WeightsMode::kLinear ? linear_round_weights(log, t) : unit_weights(log, t);
        values = solve_massey_by_component(build_normal(build_incidence(log, t), w.w)).values;
        break;
      }
      case MethodId::kColley:
        values = rate_colley_static(log, t).values;
        break;
      case MethodId::kOfficial:
        values = official_rating(log, t);
        break;
      default:
        throw ConfigError("unhandled method");
    }
    fill_column(h, t, values, log);
  }
  return h;
}

std::vector<int> competition_ranks(const std::vector<double>& ratings, double tol) {
  std::vector<int> ranks(ratings.size());
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    int better = 0;
    for (std::size_t j = 0; j < ratings.size(); ++j)
      if (ratings[j] > ratings[i] + tol) ++better;
    ranks[i] = better + 1;
  }
  return ranks;
}

RankingSnapshot ranking_snapshot(const MatchLog& log, const MethodSpec& spec, const RatingHistory& history, Round t) {
  RankingSnapshot snap;
  snap.method = std::string(method_name(spec.id));
  snap.round = t;
  if (spec.id == MethodId::kOfficial) {
    auto s = official_standings(log, t);
    std::vector<double> points(log.num_teams());
    for (const auto& row : s.rows) points[row.team] = row.points;
    snap.ranks = competition_ranks(points, 0.5);
  } else {
    snap.ranks = competition_ranks(history.column(t));
  }
  return snap;
}

double kendall_tau(const RankingSnapshot& a, const RankingSnapshot& b) {
  const std::size_t n = a.ranks.size();
  if (b.ranks.size() != n) throw ConfigError("rankings cover different team sets");
  if (n < 2) throw ConfigError("Kendall tau needs at least 2 teams");
  long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int da = a.ranks[i] - a.ranks[j];
      const int db = b.ranks[i] - b.ranks[j];
      if (da == 0) ++ties_a;
      if (db == 0) ++ties_b;
      if (da == 0 || db == 0) continue;
      if ((da > 0) == (db > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double denom = std::sqrt((pairs - static_cast<double>(ties_a)) * (pairs - static_cast<double>(ties_b)));
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(concordant - discordant) / denom;
}

KendallSeries correlation_series(const MatchLog& log, const std::vector<MethodSpec>& methods, Round from, Round to) {
  if (from < 1) throw ConfigError("correlation series starts at round 1 or later");
  KendallSeries series;
  std::vector<RatingHistory> histories;
  for (const auto& m : methods) histories.push_back(method_history(log, m, 0.0, std::max(to, 0)));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < methods.size(); ++a)
    for (std::size_t b = a + 1; b < methods.size(); ++b) {
      pairs.emplace_back(a, b);
      series.pairs.push_back(std::string(method_name(methods[a].id)) + "-" + std::string(method_name(methods[b].id)));
    }
  series.tau.resize(pairs.size());
  for (Round t = from; t <= to; ++t) {
    series.rounds.push_back(t);
    std::vector<RankingSnapshot> snaps;
    for (std::size_t k = 0; k < methods.size(); ++k) snaps.push_back(ranking_snapshot(log, methods[k], histories[k], t));
    for (std::size_t p = 0; p < pairs.size(); ++p)
      series.tau[p].push_back(kendall_tau(snaps[pairs[p].first], snaps[pairs[p].second]));
  }
  return series;
}

int AccuracyReport::total_correct() const {
  int s = 0;
  for (const auto& r : per_round) s += r.correct;
  return s;
}

int AccuracyReport::total_decisive() const {
  int s = 0;
  for (const auto& r : per_round) s += r.decisive;
  return s;
}

double AccuracyReport::aggregate() const {
  const int d = total_decisive();
  return d == 0 ? 0.0 : static_cast<double>(total_correct()) / d;
}

AccuracyReport score_predictions(const MatchLog& log, const RatingHistory& history, double hfa, Round warmup) {
  if (warmup < 0) throw ConfigError("warmup must be nonnegative");
  AccuracyReport rep;
  rep.hfa = hfa;
  rep.warmup = warmup;
  const Round last = std::min(log.rounds(), history.rounds());
  for (Round t = std::max(1, warmup + 1); t <= last; ++t) rep.per_round.push_back({t, 0, 0, 0});
  const auto& ms = log.matches();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto& m = ms[k];
    if (m.round <= warmup || m.round > last) continue;
    auto& bucket = rep.per_round[static_cast<std::size_t>(m.round - std::max(1, warmup + 1))];
    ++bucket.matches;
    PredictionOutcome o;
    o.round = m.round;
    o.match_index = k;
    const bool home_pick = history.rating(m.home, m.round - 1) + hfa >=
                           history.rating(m.away, m.round - 1) - kRatingTieTolerance;
    o.predicted_winner = home_pick ? m.home : m.away;
    if (m.is_draw()) {
      o.actual = PredictionOutcome::Result::kDraw;
    } else {
      const bool home_won = m.home_score > m.away_score;
      o.actual = home_won ? PredictionOutcome::Result::kHomeWin : PredictionOutcome::Result::kAwayWin;
      o.correct = home_won == home_pick;
      ++bucket.decisive;
      if (*o.correct) ++bucket.correct;
    }
    rep.outcomes.push_back(o);
  }
  return rep;
}

AccuracyReport foresight_accuracy(const MatchLog& log, const MethodSpec& spec, double hfa, Round warmup) {
  auto rep = score_predictions(log, method_history(log, spec, hfa, log.rounds()), hfa, warmup);
  rep.method = std::string(method_name(spec.id));
  return rep;
}

std::vector<double> HfaGrid::points() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) throw ConfigError("HFA grid must be finite");
  if (max < min) throw ConfigError("HFA grid is empty (max < min)");
  if (max == min) return {min};
  if (!(step > 0.0)) throw ConfigError("HFA grid step must be positive");
  const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = min + static_cast<double>(k) * step;
  return out;
}

HfaGrid default_hfa_grid(MethodId id) {
  switch (id) {
    case MethodId::kElo:
      return {0.0, 200.0, 1.0};
    case MethodId::kColley:
    case MethodId::kTemporalColley:
      return {0.0, 0.2, 0.001};
    case MethodId::kOfficial:
      return {0.0, 10.0, 0.01};
    default:
      return {0.0, 2.0, 0.01};
  }
}

Calibration calibrate_hfa(const MatchLog& log, const MethodSpec& spec, const HfaGrid& grid, Round warmup) {
  const auto points = grid.points();
  const bool refit = spec.id == MethodId::kElo && spec.elo.hfa_in_update;
  std::optional<RatingHistory> fixed;
  if (!refit) fixed = method_history(log, spec, 0.0, log.rounds());
  Calibration best;
  best.grid_points = points.size();
  bool first = true;
  for (double h : points) {
    const double acc = refit ? foresight_accuracy(log, spec, h, warmup).aggregate()
                             : score_predictions(log, *fixed, h, warmup).aggregate();
    if (first || acc > best.accuracy) {
      best.h_star = h;
      best.accuracy = acc;
      first = false;
    }
  }
  return best;
}

AccuracyHistogram accuracy_histogram(const AccuracyReport& report) {
  if (report.per_round.empty()) throw ConfigError("histogram needs at least one predicted round");
  AccuracyHistogram hist;
  for (const auto& r : report.per_round) {
    if (r.decisive == 0) {
      ++hist.skipped_rounds;
      continue;
    }
    // Integer arithmetic keeps bin edges exact (0.7 lands in [0.7, 0.8)).
    const int bin = std::min(9, (10 * r.correct) / r.decisive);
    ++hist.counts[static_cast<std::size_t>(bin)];
    if (r.correct == r.decisive) ++hist.perfect_rounds;
    if (2 * r.correct < r.decisive) ++hist.below_half_rounds;
  }
  return hist;
}

std::vector<Trajectory> trajectory(const MatchLog& log, const MethodSpec& spec, const std::vector<std::string>& teams,
                                   Round from, Round to) {
  if (teams.empty()) throw ConfigError("trajectory needs at least one team");
  if (from < 0 || to < from) throw ConfigError("invalid round range for trajectory");
  std::vector<Trajectory> out;
  for (const auto& name : teams) {
    auto id = log.find_team(name);
    if (!id) throw ConfigError("unknown team '" + name + "'");
    out.push_back({*id, log.team_name(*id), {}});
  }
  auto history = method_history(log, spec, 0.0, to);
  for (Round t = from; t <= to; ++t) {
    auto snap = ranking_snapshot(log, spec, history, t);
    for (auto& tr : out) tr.points.push_back({t, history.rating(tr.team, t), snap.ranks[tr.team]});
  }
  return out;
}

std::vector<std::vector<std::pair<TeamId, TeamId>>> circle_schedule(std::size_t n, bool double_round) {
  if (n < 2 || n % 2 != 0) throw ConfigError("round-robin schedule needs an even team count >= 2");
  std::vector<TeamId> ring(n);
  for (TeamId i = 0; i < n; ++i) ring[i] = i;
  std::vector<std::vector<std::pair<TeamId, TeamId>>> rounds;
  for (std::size_t r = 0; r + 1 < n; ++r) {
    std::vector<std::pair<TeamId, TeamId>> games;
    for (std::size_t i = 0; i < n / 2; ++i) {
      TeamId a = ring[i], b = ring[n - 1 - i];
      if ((r + i) % 2 == 1) std::swap(a, b);
      games.emplace_back(a, b);
    }
    rounds.push_back(std::move(games));
    // Team in slot 0 stays put; the rest rotate one step clockwise.
    std::rotate(ring.begin() + 1, ring.end() - 1, ring.end());
  }
  if (double_round) {
    const std::size_t half = rounds.size();
    for (std::size_t r = 0; r < half; ++r) {
      auto mirrored = rounds[r];
      for (auto& g : mirrored) std::swap(g.first, g.second);
      rounds.push_back(std::move(mirrored));
    }
  }
  return rounds;
}

MatchLog synthetic_roundrobin(const SyntheticSpec& spec) {
  const std::size_t n = spec.teams;
  auto schedule = circle_schedule(n, spec.double_round);
  if (!spec.strengths.empty() && spec.strengths.size() != n) {
    throw ConfigError("expected " + std::to_string(n) + " strengths, got " + std::to_string(spec.strengths.size()));
  }
  if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) throw ConfigError("noise must be a nonnegative number");

  // mt19937_64 output is fixed by the standard; the transforms below are
  // written out so logs are identical across standard libraries.
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  auto normal = [&] {
    const double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };

  const int width = static_cast<int>(std::to_string(n).size());
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i + 1);
    names[i] = "T" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits;
  }
  auto strength = [&](TeamId i) { return spec.strengths.empty() ? 0.0 : spec.strengths[i]; };

  std::vector<MatchRecord> matches;
  for (std::size_t r = 0; r < schedule.size(); ++r) {
    for (const auto& [home, away] : schedule[r]) {
      const double z = normal();
      const auto margin = static_cast<int>(std::lround(strength(home) - strength(away) + spec.noise * z));
      const int base = static_cast<int>(rng() % 3);
      MatchRecord m;
      m.round = static_cast<Round>(r + 1);
      m.home = home;
      m.away = away;
      m.home_score = base + std::max(margin, 0);
      m.away_score = base + std::max(-margin, 0);
      matches.push_back(m);
    }
  }
  return MatchLog(std::move(names), std::move(matches));
}

}  // namespace tmassey
