#include "tmassey/massey_static.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tmassey/errors.hpp"

namespace tmassey {

double RatingVector::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

IncidenceSystem build_incidence(const MatchLog& log, Round upto) {
  IncidenceSystem sys;
  sys.upto = upto;
  const std::size_t n = log.num_teams();
  sys.x = linalg::Matrix(log.count_upto(upto), n);
  std::size_t row = 0;
  const auto& ms = log.matches();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto& m = ms[k];
    if (m.round > upto) continue;
    const bool away_wins = m.away_score > m.home_score;
    const TeamId plus = away_wins ? m.away : m.home;
    const TeamId minus = away_wins ? m.home : m.away;
    sys.x(row, plus) = 1.0;
    sys.x(row, minus) = -1.0;
    sys.y.push_back(std::abs(m.home_score - m.away_score));
    sys.match_index.push_back(k);
    ++row;
  }
  return sys;
}

MasseySystem build_normal(const IncidenceSystem& sys, std::span<const double> weights) {
  if (!weights.empty() && weights.size() != sys.y.size()) {
    throw ConfigError("expected " + std::to_string(sys.y.size()) + " weights, got " +
                      std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("match weights must be positive and finite");
  }
  MasseySystem out;
  out.m = linalg::gram(sys.x, sys.x, weights);
  const std::size_t n = sys.x.cols();
  out.p.assign(n, 0.0);
  for (std::size_t k = 0; k < sys.x.rows(); ++k) {
    const double wy = (weights.empty() ? 1.0 : weights[k]) * sys.y[k];
    for (std::size_t i = 0; i < n; ++i) out.p[i] += sys.x(k, i) * wy;
  }
  out.games.resize(n);
  out.adjacency = linalg::Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.games[i] = out.m(i, i);
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.adjacency(i, j) = -out.m(i, j);
  }
  return out;
}

std::vector<std::size_t> component_labels(const MasseySystem& sys) {
  const std::size_t n = sys.num_teams();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (sys.adjacency(i, j) > 0.0) parent[find(i)] = find(j);
  // Relabel roots densely in order of first member.
  std::vector<std::size_t> label(n), root_label(n, n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (root_label[r] == n) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

std::size_t count_components(const MasseySystem& sys) {
  auto labels = component_labels(sys);
  std::size_t c = 0;
  for (auto l : labels) c = std::max(c, l + 1);
  return c;
}

namespace {

std::vector<double> constrained_solve(const linalg::Matrix& m, std::span<const double> p) {
  const std::size_t n = p.size();
  if (n == 0) return {};
  if (n == 1) return {0.0};
  linalg::Matrix replaced = m;
  std::vector<double> rhs(p.begin(), p.end());
  for (std::size_t j = 0; j < n; ++j) replaced(n - 1, j) = 1.0;
  rhs[n - 1] = 0.0;
  return linalg::solve(replaced, rhs);
}

}  // namespace

double massey_residual(const MasseySystem& sys, const RatingVector& r) {
  auto mr = linalg::multiply(sys.m, r.values);
  for (std::size_t i = 0; i < mr.size(); ++i) mr[i] -= sys.p[i];
  return linalg::norm2(mr);
}

RatingVector solve_massey(const MasseySystem& sys) {
  const std::size_t components = count_components(sys);
  if (components > 1) throw DisconnectedGraph(components);
  RatingVector r{constrained_solve(sys.m, sys.p)};
  const double tol = 1e-9 * std::max(1.0, linalg::norm2(sys.p));
  if (double res = massey_residual(sys, r); !(res <= tol)) {
    throw NumericError("Massey residual " + std::to_string(res) + " exceeds tolerance");
  }
  return r;
}

RatingVector solve_massey_by_component(const MasseySystem& sys) {
  const std::size_t n = sys.num_teams();
  auto labels = component_labels(sys);
  RatingVector r{std::vector<double>(n, 0.0)};
  const std::size_t count = count_components(sys);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (labels[i] == c) members.push_back(i);
    if (members.size() < 2) continue;
    linalg::Matrix sub(members.size(), members.size());
    std::vector<double> p(members.size());
    for (std::size_t a = 0; a < members.size(); ++a) {
      p[a] = sys.p[members[a]];
      for (std::size_t b = 0; b < members.size(); ++b) sub(a, b) = sys.m(members[a], members[b]);
    }
    auto x = constrained_solve(sub, p);
    for (std::size_t a = 0; a < members.size(); ++a) r.values[members[a]] = x[a];
  }
  return r;
}

RatingDecomposition decompose_rating(const MasseySystem& sys, const RatingVector& r) {
  const std::size_t n = sys.num_teams();
  RatingDecomposition d;
  d.opponents.resize(n);
  d.spread.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double games = sys.games[i];
    if (games <= 0.0) throw TeamWithoutMatches("team " + std::to_string(i) + " has played no matches");
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += sys.adjacency(i, j) * r[j];
    d.opponents[i] = acc / games;
    d.spread[i] = sys.p[i] / games;
  }
  return d;
}

SpectralReport spectral_report(const MasseySystem& sys, const RatingVector& r) {
  const std::size_t n = sys.num_teams();
  SpectralReport rep;
  auto eig = linalg::symmetric_eigen(sys.m);
  rep.eigenvalues = std::move(eig.values);
  rep.sweeps = eig.sweeps;
  for (double l : rep.eigenvalues)
    if (l < kConnectivityThreshold) ++rep.zero_eigenvalues;

  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = r[i] - sys.p[i] / static_cast<double>(n);
  rep.deviation = linalg::norm2(diff);

  if (n < 2) {
    rep.connected = n == 1;
    return rep;
  }
  rep.algebraic_connectivity = rep.eigenvalues[1];
  rep.connected = rep.algebraic_connectivity > kConnectivityThreshold;
  if (rep.connected) {
    // max_k |1/l_k - 1/n| over k >= 2 is attained at l_2 or l_n. On simple
    // match graphs l_n <= n, so this is |p| (n - l_2) / (n l_2); repeated
    // pairings can push l_n past n and the l_n end then matters.
    const double nd = static_cast<double>(n);
    const double low = std::abs(1.0 / rep.algebraic_connectivity - 1.0 / nd);
    const double high = std::abs(1.0 / rep.eigenvalues.back() - 1.0 / nd);
    rep.bound_rhs = linalg::norm2(sys.p) * std::max(low, high);
  } else {
    rep.bound_rhs = std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace tmassey
