#include "tmassey/matchlog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

#include "tmassey/errors.hpp"

namespace tmassey {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits text into lines, accepting LF and CRLF. A trailing empty line is dropped.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

// Comma split with minimal double-quote support (no embedded newlines).
std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::optional<int> parse_nonneg(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || value < 0) return std::nullopt;
  return value;
}

// Assigns dense ids in first-appearance order, keyed by normalized name.
class TeamRegistry {
 public:
  TeamId intern(std::string_view raw) {
    std::string key = normalize_team_name(raw);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    TeamId id = names_.size();
    ids_.emplace(std::move(key), id);
    names_.emplace_back(trim(raw));
    return id;
  }
  std::vector<std::string> take_names() { return std::move(names_); }

 private:
  std::unordered_map<std::string, TeamId> ids_;
  std::vector<std::string> names_;
};

// Converts dd/mm/yy, dd/mm/yyyy or yyyy-mm-dd into yyyy-mm-dd.
std::optional<std::string> to_iso_date(std::string_view raw) {
  raw = trim(raw);
  auto num = [](std::string_view s) -> std::optional<int> { return parse_nonneg(s); };
  char buf[16];
  if (raw.size() == 10 && raw[4] == '-' && raw[7] == '-') {
    auto y = num(raw.substr(0, 4)), m = num(raw.substr(5, 2)), d = num(raw.substr(8, 2));
    if (!y || !m || !d) return std::nullopt;
    return std::string(raw);
  }
  auto first = raw.find('/');
  auto second = first == std::string_view::npos ? first : raw.find('/', first + 1);
  if (second == std::string_view::npos) return std::nullopt;
  auto d = num(raw.substr(0, first));
  auto m = num(raw.substr(first + 1, second - first - 1));
  std::string_view ys = raw.substr(second + 1);
  auto y = num(ys);
  if (!d || !m || !y || *m < 1 || *m > 12 || *d < 1 || *d > 31) return std::nullopt;
  int year = *y;
  if (ys.size() <= 2) year += year < 70 ? 2000 : 1900;
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, *m, *d);
  return std::string(buf);
}

constexpr std::string_view kCanonicalHeader = "round,date,home,away,home_goals,away_goals";

}  // namespace

std::string normalize_team_name(std::string_view name) {
  std::string out;
  for (char c : trim(name)) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

MatchLog::MatchLog(std::vector<std::string> team_names, std::vector<MatchRecord> matches)
    : teams_(std::move(team_names)), matches_(std::move(matches)) {
  std::stable_sort(matches_.begin(), matches_.end(),
                   [](const MatchRecord& a, const MatchRecord& b) { return a.round < b.round; });
  for (const auto& m : matches_) rounds_ = std::max(rounds_, m.round);
}

std::optional<TeamId> MatchLog::find_team(std::string_view name) const {
  std::string key = normalize_team_name(name);
  for (TeamId i = 0; i < teams_.size(); ++i) {
    if (normalize_team_name(teams_[i]) == key) return i;
  }
  return std::nullopt;
}

std::vector<MatchRecord> MatchLog::matches_in_round(Round r) const {
  std::vector<MatchRecord> out;
  for (const auto& m : matches_) {
    if (m.round == r) out.push_back(m);
  }
  return out;
}

std::size_t MatchLog::count_upto(Round upto) const {
  return static_cast<std::size_t>(std::count_if(
      matches_.begin(), matches_.end(), [upto](const MatchRecord& m) { return m.round <= upto; }));
}

MatchLog parse_csv(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, "missing header");
  std::string header;
  for (char c : trim(lines[0])) {
    if (!std::isspace(static_cast<unsigned char>(c))) header.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) header.erase(0, 3);
  if (header != kCanonicalHeader) {
    throw ParseError(1, "unknown header, expected '" + std::string(kCanonicalHeader) + "'");
  }

  TeamRegistry registry;
  std::vector<MatchRecord> matches;
  std::set<std::pair<TeamId, Round>> seen;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li + 1;
    if (trim(lines[li]).empty()) continue;
    auto fields = split_fields(lines[li]);
    if (fields.size() != 6) {
      throw ParseError(row, "expected 6 fields, found " + std::to_string(fields.size()));
    }
    auto round = parse_nonneg(fields[0]);
    if (!round || *round < 1) throw ParseError(row, "round must be an integer >= 1");
    std::string_view home = trim(fields[2]);
    std::string_view away = trim(fields[3]);
    if (home.empty() || away.empty()) throw ParseError(row, "empty team name");
    auto hs = parse_nonneg(fields[4]);
    auto as = parse_nonneg(fields[5]);
    if (!hs || !as) throw ParseError(row, "score is not a nonnegative integer");

    MatchRecord m;
    m.round = *round;
    m.home = registry.intern(home);
    m.away = registry.intern(away);
    m.home_score = *hs;
    m.away_score = *as;
    if (auto date = trim(fields[1]); !date.empty()) m.date = std::string(date);
    if (m.home == m.away) throw InvariantError("row " + std::to_string(row) + ": team plays itself");
    for (TeamId t : {m.home, m.away}) {
      if (!seen.emplace(t, m.round).second) {
        throw InvariantError("row " + std::to_string(row) + ": team '" + std::string(t == m.home ? home : away) +
                             "' appears twice in round " + std::to_string(m.round));
      }
    }
    matches.push_back(std::move(m));
  }
  return MatchLog(registry.take_names(), std::move(matches));
}

MatchLog infer_rounds(const std::vector<UnroundedMatch>& matches) {
  TeamRegistry registry;
  std::vector<Round> last_round;
  std::vector<MatchRecord> records;
  records.reserve(matches.size());
  for (const auto& u : matches) {
    MatchRecord m;
    m.home = registry.intern(u.home);
    m.away = registry.intern(u.away);
    last_round.resize(std::max({last_round.size(), m.home + 1, m.away + 1}), 0);
    m.home_score = u.home_score;
    m.away_score = u.away_score;
    m.date = u.date;
    m.round = std::max(last_round[m.home], last_round[m.away]) + 1;
    last_round[m.home] = m.round;
    last_round[m.away] = m.round;
    records.push_back(std::move(m));
  }
  return MatchLog(registry.take_names(), std::move(records));
}

MatchLog parse_fixture_csv(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, "missing header");
  auto header = split_fields(lines[0]);
  auto column = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::string_view h = trim(header[i]);
      if (i == 0 && h.size() >= 3 && h.substr(0, 3) == "\xEF\xBB\xBF") h.remove_prefix(3);
      if (h == name) return i;
    }
    throw ParseError(1, "fixture header lacks column '" + std::string(name) + "'");
  };
  const std::size_t c_date = column("Date"), c_home = column("HomeTeam"), c_away = column("AwayTeam"),
                    c_hg = column("FTHG"), c_ag = column("FTAG");
  const std::size_t needed = std::max({c_date, c_home, c_away, c_hg, c_ag}) + 1;

  std::vector<std::pair<std::string, UnroundedMatch>> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li + 1;
    auto fields = split_fields(lines[li]);
    bool blank = std::all_of(fields.begin(), fields.end(), [](const std::string& f) { return trim(f).empty(); });
    if (blank) continue;
    if (fields.size() < needed) throw ParseError(row, "too few fields");
    auto iso = to_iso_date(fields[c_date]);
    if (!iso) throw ParseError(row, "unrecognized date '" + fields[c_date] + "'");
    auto hs = parse_nonneg(fields[c_hg]);
    auto as = parse_nonneg(fields[c_ag]);
    if (!hs || !as) throw ParseError(row, "score is not a nonnegative integer");
    UnroundedMatch u{std::string(trim(fields[c_home])), std::string(trim(fields[c_away])), *hs, *as, *iso};
    if (u.home.empty() || u.away.empty()) throw ParseError(row, "empty team name");
    if (normalize_team_name(u.home) == normalize_team_name(u.away)) {
      throw InvariantError("row " + std::to_string(row) + ": team plays itself");
    }
    rows.emplace_back(*iso, std::move(u));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<UnroundedMatch> ordered;
  ordered.reserve(rows.size());
  for (auto& r : rows) ordered.push_back(std::move(r.second));
  return infer_rounds(ordered);
}

MatchLog parse_any_csv(std::string_view text) {
  auto lines = split_lines(text);
  if (!lines.empty()) {
    std::string first = normalize_team_name(lines[0]);
    if (first.size() >= 3 && first.compare(0, 3, "\xEF\xBB\xBF") == 0) first.erase(0, 3);
    if (first.rfind("round,", 0) == 0) return parse_csv(text);
  }
  return parse_fixture_csv(text);
}

int point_spread(const MatchRecord& m, TeamId team) {
  if (team == m.home) return m.home_score - m.away_score;
  if (team == m.away) return m.away_score - m.home_score;
  return 0;
}

std::vector<TeamId> Standings::order() const {
  std::vector<TeamId> ids(rows.size());
  for (const auto& r : rows) ids.at(static_cast<std::size_t>(r.rank - 1)) = r.team;
  return ids;
}

Standings official_standings(const MatchLog& log, Round upto) {
  Standings s;
  s.rows.resize(log.num_teams());
  for (TeamId i = 0; i < log.num_teams(); ++i) s.rows[i].team = i;
  for (const auto& m : log.matches()) {
    if (m.round > upto) continue;
    auto& h = s.rows[m.home];
    auto& a = s.rows[m.away];
    h.goals_for += m.home_score;
    a.goals_for += m.away_score;
    h.goal_diff += m.home_score - m.away_score;
    a.goal_diff += m.away_score - m.home_score;
    if (m.home_score > m.away_score) {
      h.points += 3;
      ++h.wins;
      ++a.losses;
    } else if (m.home_score < m.away_score) {
      a.points += 3;
      ++a.wins;
      ++h.losses;
    } else {
      h.points += 1;
      a.points += 1;
      ++h.draws;
      ++a.draws;
    }
  }
  std::vector<TeamId> order(log.num_teams());
  std::iota(order.begin(), order.end(), TeamId{0});
  std::sort(order.begin(), order.end(), [&](TeamId x, TeamId y) {
    const auto& a = s.rows[x];
    const auto& b = s.rows[y];
    if (a.points != b.points) return a.points > b.points;
    if (a.goal_diff != b.goal_diff) return a.goal_diff > b.goal_diff;
    if (a.goals_for != b.goals_for) return a.goals_for > b.goals_for;
    return x < y;
  });
  for (std::size_t r = 0; r < order.size(); ++r) s.rows[order[r]].rank = static_cast<int>(r + 1);
  return s;
}

std::vector<Violation> validate(const MatchLog& log) {
  std::vector<Violation> out;
  std::set<std::pair<TeamId, Round>> seen;
  const std::size_t n = log.num_teams();
  Round prev_round = 0;
  const auto& ms = log.matches();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto& m = ms[k];
    auto add = [&](Violation::Kind kind, std::optional<TeamId> team, std::string msg) {
      out.push_back(Violation{kind, k, team, m.round, std::move(msg)});
    };
    if (m.round < 1) add(Violation::Kind::kBadRound, std::nullopt, "round index below 1");
    if (m.round < prev_round) add(Violation::Kind::kUnordered, std::nullopt, "rounds out of order");
    prev_round = std::max(prev_round, m.round);
    if (m.home_score < 0 || m.away_score < 0) add(Violation::Kind::kNegativeScore, std::nullopt, "negative score");
    bool known = true;
    for (TeamId t : {m.home, m.away}) {
      if (t >= n) {
        add(Violation::Kind::kUnknownTeam, t, "unknown team id " + std::to_string(t));
        known = false;
      }
    }
    if (m.home == m.away) {
      add(Violation::Kind::kSelfMatch, m.home, "team plays itself");
      continue;
    }
    if (!known) continue;
    for (TeamId t : {m.home, m.away}) {
      if (!seen.emplace(t, m.round).second) {
        add(Violation::Kind::kTeamTwiceInRound, t,
            "team '" + log.team_name(t) + "' plays twice in round " + std::to_string(m.round));
      }
    }
  }
  return out;
}

}  // namespace tmassey
