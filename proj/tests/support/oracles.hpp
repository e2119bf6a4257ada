#pragma once

// Independent reference computations used by the unit and acceptance suites.
// None of these call the library routine they are compared against.

#include <random>
#include <string>
#include <vector>

#include "tmassey/linalg.hpp"
#include "tmassey/matchlog.hpp"
#include "tmassey/massey_temporal.hpp"

namespace oracle {

using tmassey::MatchLog;
using tmassey::Round;

// The 4-team, 6-match worked example (teams A, B, C, D; days 1-3).
std::string example_csv();
MatchLog example_log();
// Same schedule extended with day 4 rematches A-C and B-D.
MatchLog example_log_round4();

// Random schedule: each round pairs a random subset of teams. With
// `ragged` false every team plays every round (n must be even).
MatchLog random_log(std::mt19937_64& rng, std::size_t n, Round rounds, bool ragged, int max_goals = 4);

// Single round robin (n even), rounds in random order, random scores.
MatchLog random_round_robin(std::mt19937_64& rng, std::size_t n);

// Random log whose match graph is connected by the last round.
MatchLog random_connected_log(std::mt19937_64& rng, std::size_t n, Round rounds);

// As above, but no pair of teams meets twice (a simple match graph).
MatchLog random_connected_simple_log(std::mt19937_64& rng, std::size_t n, Round rounds);

struct NormalEquations {
  tmassey::linalg::Matrix m;
  std::vector<double> p;
};

// Accumulates M and p match by match from the raw scores.
NormalEquations brute_normal(const MatchLog& log, Round upto);

// table[t][i]: r_i(t) from the mean form, recomputing every historical term.
std::vector<std::vector<double>> direct_temporal(const MatchLog& log, const std::vector<double>& rho, Round upto);

// table[t][i] from the closed-form constant-coefficient expansion.
std::vector<std::vector<double>> constant_expansion(const MatchLog& log, double alpha, const std::vector<double>& rho,
                                                    Round upto);

// Tau-b from sign products and tie-group sizes.
double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y);

// Cumulative spread of every team after each round: table[t][i].
std::vector<std::vector<int>> cumulative_spreads(const MatchLog& log, Round upto);

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace oracle
