#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tmassey/eval.hpp"
#include "tmassey/massey_static.hpp"
#include "tmassey/massey_temporal.hpp"
#include "tmassey/matchlog.hpp"

// CSV and JSON renderings of every artifact. CSV numbers carry 6 decimals;
// JSON keeps full double precision (non-finite values become null).
namespace tmassey::io {

using nlohmann::json;

std::string fixed6(double v);

std::string log_csv(const MatchLog& log);

std::string ratings_csv(const MatchLog& log, const RatingVector& r);
json ratings_json(const MatchLog& log, const RatingVector& r);

std::string history_csv(const MatchLog& log, const RatingHistory& h);
json history_json(const MatchLog& log, const RatingHistory& h);

std::string standings_csv(const MatchLog& log, const Standings& s);
json standings_json(const MatchLog& log, const Standings& s);

std::string trace_csv(const MatchLog& log, const CoefficientTrace& trace);
json init_coeffs_json(const MatchLog& log, const CoefficientTrace& trace);
json trace_json(const MatchLog& log, const CoefficientTrace& trace);

json spectral_json(const SpectralReport& rep);

std::string accuracy_csv(const AccuracyReport& rep);
json accuracy_json(const AccuracyReport& rep);

std::string correlation_csv(const KendallSeries& s);
json correlation_json(const KendallSeries& s);

std::string histogram_csv(const AccuracyHistogram& h);
json histogram_json(const AccuracyHistogram& h);

std::string trajectory_csv(const std::vector<Trajectory>& t);
json trajectory_json(const std::vector<Trajectory>& t);

// `team,rating` rows (header required), e.g. a previous season's output.
std::vector<std::pair<std::string, double>> parse_ratings_csv(std::string_view text);

}  // namespace tmassey::io
