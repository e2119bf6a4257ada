#pragma once

#include <span>
#include <vector>

#include "tmassey/linalg.hpp"
#include "tmassey/matchlog.hpp"

namespace tmassey {

// Row k of x has +1 for the winner (home on a draw) and -1 for the other
// side; y[k] is the nonnegative margin.
struct IncidenceSystem {
  linalg::Matrix x;
  std::vector<double> y;
  Round upto = 0;
  std::vector<std::size_t> match_index;  // row -> position in MatchLog::matches()
};

// Normal equations m r = p with m = D - A.
struct MasseySystem {
  linalg::Matrix m;
  std::vector<double> p;
  std::vector<double> games;  // diagonal of D
  linalg::Matrix adjacency;   // A, zero diagonal

  std::size_t num_teams() const { return p.size(); }
};

struct RatingVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double sum() const;
};

IncidenceSystem build_incidence(const MatchLog& log, Round upto);

// Unweighted when `weights` is empty; otherwise one positive weight per row.
MasseySystem build_normal(const IncidenceSystem& sys, std::span<const double> weights = {});

// Connected components of the match graph (isolated teams count).
std::vector<std::size_t> component_labels(const MasseySystem& sys);
std::size_t count_components(const MasseySystem& sys);

// Zero-sum solution of m r = p via the row-replacement constraint.
// Throws DisconnectedGraph when the match graph is not connected, and
// NumericError if the residual exceeds 1e-9 * max(1, |p|).
RatingVector solve_massey(const MasseySystem& sys);

// Same normalization applied to each connected component independently.
// Teams without matches get 0. Never throws on disconnected graphs.
RatingVector solve_massey_by_component(const MasseySystem& sys);

double massey_residual(const MasseySystem& sys, const RatingVector& r);

struct RatingDecomposition {
  std::vector<double> opponents;  // mean rating of the teams faced
  std::vector<double> spread;     // mean point spread
};

// Throws TeamWithoutMatches if any team has zero games.
RatingDecomposition decompose_rating(const MasseySystem& sys, const RatingVector& r);

struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending
  double algebraic_connectivity = 0.0;
  double bound_rhs = 0.0;  // |p| max_k |1/l_k - 1/n|; +inf when disconnected
  double deviation = 0.0;  // |r - p/n|
  bool connected = false;
  std::size_t zero_eigenvalues = 0;
  int sweeps = 0;
};

inline constexpr double kConnectivityThreshold = 1e-8;

SpectralReport spectral_report(const MasseySystem& sys, const RatingVector& r);

}  // namespace tmassey
