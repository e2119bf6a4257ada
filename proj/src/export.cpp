#include "tmassey/export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "tmassey/errors.hpp"

namespace tmassey::io {

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Team names are written verbatim unless they need quoting.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string fixed6(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string log_csv(const MatchLog& log) {
  std::ostringstream os;
  os << "round,date,home,away,home_goals,away_goals\n";
  for (const auto& m : log.matches()) {
    os << m.round << ',' << m.date.value_or("") << ',' << csv_field(log.team_name(m.home)) << ','
       << csv_field(log.team_name(m.away)) << ',' << m.home_score << ',' << m.away_score << '\n';
  }
  return os.str();
}

std::string ratings_csv(const MatchLog& log, const RatingVector& r) {
  std::ostringstream os;
  os << "team,rating\n";
  for (TeamId i = 0; i < r.size(); ++i) os << csv_field(log.team_name(i)) << ',' << fixed6(r[i]) << '\n';
  return os.str();
}

json ratings_json(const MatchLog& log, const RatingVector& r) {
  json arr = json::array();
  for (TeamId i = 0; i < r.size(); ++i) arr.push_back({{"team", log.team_name(i)}, {"rating", number(r[i])}});
  return arr;
}

std::string history_csv(const MatchLog& log, const RatingHistory& h) {
  std::ostringstream os;
  os << "team,round,rating,games\n";
  for (TeamId i = 0; i < h.num_teams(); ++i)
    for (Round t = 0; t <= h.rounds(); ++t)
      os << csv_field(log.team_name(i)) << ',' << t << ',' << fixed6(h.rating(i, t)) << ',' << h.games(i, t) << '\n';
  return os.str();
}

json history_json(const MatchLog& log, const RatingHistory& h) {
  json arr = json::array();
  for (TeamId i = 0; i < h.num_teams(); ++i) {
    json ratings = json::array(), games = json::array();
    for (Round t = 0; t <= h.rounds(); ++t) {
      ratings.push_back(number(h.rating(i, t)));
      games.push_back(h.games(i, t));
    }
    arr.push_back({{"team", log.team_name(i)}, {"ratings", ratings}, {"games", games}});
  }
  return arr;
}

std::string standings_csv(const MatchLog& log, const Standings& s) {
  std::ostringstream os;
  os << "team,points,goal_diff,goals_for,rank\n";
  for (TeamId id : s.order()) {
    const auto& r = s.rows[id];
    os << csv_field(log.team_name(id)) << ',' << r.points << ',' << r.goal_diff << ',' << r.goals_for << ',' << r.rank
       << '\n';
  }
  return os.str();
}

json standings_json(const MatchLog& log, const Standings& s) {
  json arr = json::array();
  for (TeamId id : s.order()) {
    const auto& r = s.rows[id];
    arr.push_back({{"team", log.team_name(id)},
                   {"points", r.points},
                   {"goal_diff", r.goal_diff},
                   {"goals_for", r.goals_for},
                   {"rank", r.rank}});
  }
  return arr;
}

std::string trace_csv(const MatchLog& log, const CoefficientTrace& trace) {
  std::ostringstream os;
  os << "team,round,coefficient\n";
  for (const auto& [key, c] : trace.spread_coeffs)
    os << csv_field(log.team_name(key.first)) << ',' << key.second << ',' << fixed6(c) << '\n';
  return os.str();
}

json init_coeffs_json(const MatchLog& log, const CoefficientTrace& trace) {
  json init = json::object();
  for (TeamId k = 0; k < trace.init_coeffs.size(); ++k) init[log.team_name(k)] = number(trace.init_coeffs[k]);
  return {{"team", log.team_name(trace.team)}, {"round", trace.round}, {"init_coeffs", init}};
}

json trace_json(const MatchLog& log, const CoefficientTrace& trace) {
  json out = init_coeffs_json(log, trace);
  json coeffs = json::array();
  for (const auto& [key, c] : trace.spread_coeffs)
    coeffs.push_back({{"team", log.team_name(key.first)}, {"round", key.second}, {"coefficient", number(c)}});
  out["spread_coeffs"] = coeffs;
  return out;
}

json spectral_json(const SpectralReport& rep) {
  json eig = json::array();
  for (double l : rep.eigenvalues) eig.push_back(number(l));
  return {{"eigenvalues", eig},
          {"algebraic_connectivity", number(rep.algebraic_connectivity)},
          {"bound_rhs", number(rep.bound_rhs)},
          {"deviation", number(rep.deviation)},
          {"connected", rep.connected},
          {"zero_eigenvalues", rep.zero_eigenvalues},
          {"jacobi_sweeps", rep.sweeps}};
}

std::string accuracy_csv(const AccuracyReport& rep) {
  std::ostringstream os;
  os << "round,correct,decisive,accuracy\n";
  for (const auto& r : rep.per_round) {
    const double acc = r.decisive == 0 ? std::nan("") : static_cast<double>(r.correct) / r.decisive;
    os << r.round << ',' << r.correct << ',' << r.decisive << ',' << fixed6(acc) << '\n';
  }
  return os.str();
}

json accuracy_json(const AccuracyReport& rep) {
  json rounds = json::array();
  for (const auto& r : rep.per_round) {
    rounds.push_back({{"round", r.round}, {"correct", r.correct}, {"decisive", r.decisive}, {"matches", r.matches}});
  }
  return {{"method", rep.method},
          {"hfa", number(rep.hfa)},
          {"warmup", rep.warmup},
          {"correct", rep.total_correct()},
          {"decisive", rep.total_decisive()},
          {"aggregate", number(rep.aggregate())},
          {"per_round", rounds}};
}

std::string correlation_csv(const KendallSeries& s) {
  std::ostringstream os;
  os << "round,pair,tau\n";
  for (std::size_t k = 0; k < s.rounds.size(); ++k)
    for (std::size_t p = 0; p < s.pairs.size(); ++p) os << s.rounds[k] << ',' << s.pairs[p] << ',' << fixed6(s.tau[p][k]) << '\n';
  return os.str();
}

json correlation_json(const KendallSeries& s) {
  json out = json::object();
  out["rounds"] = s.rounds;
  json pairs = json::object();
  for (std::size_t p = 0; p < s.pairs.size(); ++p) {
    json series = json::array();
    for (double v : s.tau[p]) series.push_back(number(v));
    pairs[s.pairs[p]] = series;
  }
  out["tau"] = pairs;
  return out;
}

std::string histogram_csv(const AccuracyHistogram& h) {
  std::ostringstream os;
  os << "bin_low,bin_high,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    os << fixed6(static_cast<double>(b) / 10.0) << ',' << fixed6(static_cast<double>(b + 1) / 10.0) << ','
       << h.counts[b] << '\n';
  }
  return os.str();
}

json histogram_json(const AccuracyHistogram& h) {
  json bins = json::array();
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    bins.push_back({{"bin_low", static_cast<double>(b) / 10.0},
                    {"bin_high", static_cast<double>(b + 1) / 10.0},
                    {"count", h.counts[b]}});
  }
  return {{"bins", bins},
          {"skipped_rounds", h.skipped_rounds},
          {"perfect_rounds", h.perfect_rounds},
          {"below_half_rounds", h.below_half_rounds}};
}

std::string trajectory_csv(const std::vector<Trajectory>& ts) {
  std::ostringstream os;
  os << "team,round,rating,rank\n";
  for (const auto& t : ts)
    for (const auto& p : t.points) os << csv_field(t.name) << ',' << p.round << ',' << fixed6(p.rating) << ',' << p.rank << '\n';
  return os.str();
}

json trajectory_json(const std::vector<Trajectory>& ts) {
  json arr = json::array();
  for (const auto& t : ts) {
    json pts = json::array();
    for (const auto& p : t.points) pts.push_back({{"round", p.round}, {"rating", number(p.rating)}, {"rank", p.rank}});
    arr.push_back({{"team", t.name}, {"series", pts}});
  }
  return arr;
}

std::vector<std::pair<std::string, double>> parse_ratings_csv(std::string_view text) {
  std::vector<std::pair<std::string, double>> out;
  std::size_t row = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++row;
    if (row == 1) {
      if (line != "team,rating") throw ParseError(1, "expected header 'team,rating'");
      continue;
    }
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto comma = line.rfind(',');
    if (comma == std::string_view::npos) throw ParseError(row, "expected 'team,rating'");
    std::string name(trim(line.substr(0, comma)));
    std::string value(trim(line.substr(comma + 1)));
    char* stop = nullptr;
    const double v = std::strtod(value.c_str(), &stop);
    if (name.empty() || value.empty() || *stop != '\0' || !std::isfinite(v)) throw ParseError(row, "bad rating value");
    out.emplace_back(std::move(name), v);
    if (end == text.size()) break;
  }
  if (row == 0) throw ParseError(1, "expected header 'team,rating'");
  return out;
}

}  // namespace tmassey::io
