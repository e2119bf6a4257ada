#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tmassey {

using TeamId = std::size_t;

// Discrete time step. Round 0 is the pre-season state; matches start at 1.
using Round = int;

struct MatchRecord {
  Round round = 1;
  TeamId home = 0;
  TeamId away = 0;
  int home_score = 0;
  int away_score = 0;
  std::optional<std::string> date;

  bool is_draw() const { return home_score == away_score; }
  bool involves(TeamId team) const { return team == home || team == away; }
  TeamId opponent(TeamId team) const { return team == home ? away : home; }
};

// A temporal sequence of matches. Teams are dense ids 0..n-1; matches are
// ordered by round, then by input order within a round.
class MatchLog {
 public:
  MatchLog() = default;
  MatchLog(std::vector<std::string> team_names, std::vector<MatchRecord> matches);

  std::size_t num_teams() const { return teams_.size(); }
  const std::vector<std::string>& teams() const { return teams_; }
  const std::string& team_name(TeamId id) const { return teams_.at(id); }
  const std::vector<MatchRecord>& matches() const { return matches_; }

  // Highest round index present, 0 for an empty log.
  Round rounds() const { return rounds_; }

  // Lookup by normalized name (trimmed, case-insensitive).
  std::optional<TeamId> find_team(std::string_view name) const;

  // Matches with round == r, in log order.
  std::vector<MatchRecord> matches_in_round(Round r) const;

  // Number of matches with round <= upto.
  std::size_t count_upto(Round upto) const;

 private:
  std::vector<std::string> teams_;
  std::vector<MatchRecord> matches_;
  Round rounds_ = 0;
};

std::string normalize_team_name(std::string_view name);

// Canonical CSV: header `round,date,home,away,home_goals,away_goals`.
// Throws ParseError or InvariantError; row numbers are 1-based file lines.
MatchLog parse_csv(std::string_view text);

struct UnroundedMatch {
  std::string home;
  std::string away;
  int home_score = 0;
  int away_score = 0;
  std::optional<std::string> date;
};

// Greedy round assignment for date-ordered feeds: each match lands in the
// round after the latest round of either participant.
MatchLog infer_rounds(const std::vector<UnroundedMatch>& matches);

// Adapter for the common public fixture layout (columns Date, HomeTeam,
// AwayTeam, FTHG, FTAG; any other columns ignored). Dates may be dd/mm/yy,
// dd/mm/yyyy or yyyy-mm-dd. Rows are stably sorted by date and passed
// through infer_rounds.
MatchLog parse_fixture_csv(std::string_view text);

// Reads either the canonical layout or the fixture layout, by header.
MatchLog parse_any_csv(std::string_view text);

// Signed margin for `team` in match `m`; 0 when the team is not involved.
int point_spread(const MatchRecord& m, TeamId team);

struct StandingRow {
  TeamId team = 0;
  int points = 0;
  int goal_diff = 0;
  int goals_for = 0;
  int wins = 0;
  int draws = 0;
  int losses = 0;
  int rank = 0;
};

// One row per team, indexed by TeamId (not by rank).
struct Standings {
  std::vector<StandingRow> rows;

  // Team ids ordered by rank.
  std::vector<TeamId> order() const;
};

// 3-1-0 points over matches with round <= upto. Ranked by points, goal
// difference, goals scored, then team id.
Standings official_standings(const MatchLog& log, Round upto);

struct Violation {
  enum class Kind { kSelfMatch, kNegativeScore, kUnknownTeam, kTeamTwiceInRound, kBadRound, kUnordered };
  Kind kind;
  std::size_t match_index = 0;
  std::optional<TeamId> team;
  Round round = 0;
  std::string message;
};

std::vector<Violation> validate(const MatchLog& log);

}  // namespace tmassey
