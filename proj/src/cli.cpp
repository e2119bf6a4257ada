#include "tmassey/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tmassey/errors.hpp"
#include "tmassey/eval.hpp"
#include "tmassey/export.hpp"
#include "tmassey/massey_static.hpp"
#include "tmassey/massey_temporal.hpp"
#include "tmassey/variants.hpp"

namespace tmassey::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::string input;
  std::string method = "tmassey";
  double alpha = 0.9;
  double kappa = 25.0;
  double zeta = 400.0;
  double elo_initial = 0.0;
  bool no_hfa_update = false;
  double hfa = 0.0;
  std::string weights = "linear";
  std::optional<int> upto;
  std::optional<int> from;
  std::optional<int> to;
  std::string rho_path;
  double rho_scale = 1.0;
  std::string output;
  std::string format = "csv";
  bool by_component = false;
  // trace
  std::string team;
  // evaluate / calibrate
  int warmup = 1;
  bool calibrate = false;
  bool all_methods = false;
  std::string report = "accuracy";
  std::optional<double> grid_min, grid_max, grid_step;
  // trajectory
  std::vector<std::string> teams;
  // simulate
  std::size_t sim_teams = 4;
  bool sim_double = false;
  std::vector<double> strengths;
  double noise = 1.0;
  std::uint64_t seed = 1;
  std::istream* in = &std::cin;
};

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open input '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::filesystem::path path(cfg.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("TMASSEY_OUTPUT_DIR"); dir != nullptr && *dir != '\0') path = std::filesystem::path(dir) / path;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output '" + path.string() + "'");
  f << text;
  f.flush();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

MethodSpec method_spec(const RunConfig& cfg, const MatchLog& log, std::optional<MethodId> override_id = {}) {
  MethodSpec spec;
  if (override_id) {
    spec.id = *override_id;
  } else {
    auto id = parse_method(cfg.method);
    if (!id) throw ConfigError("unknown method '" + cfg.method + "'");
    spec.id = *id;
  }
  spec.alpha = cfg.alpha;
  if (spec.id == MethodId::kConstantMassey) ConstantCoeffConfig check(cfg.alpha);
  spec.elo.kappa = cfg.kappa;
  spec.elo.zeta = cfg.zeta;
  spec.elo.initial = cfg.elo_initial;
  spec.elo.hfa_in_update = !cfg.no_hfa_update;
  spec.elo.check();
  if (cfg.weights == "unit") {
    spec.weights = WeightsMode::kUnit;
  } else if (cfg.weights == "linear") {
    spec.weights = WeightsMode::kLinear;
  } else {
    throw ConfigError("weights must be 'unit' or 'linear'");
  }
  if (!cfg.rho_path.empty()) {
    auto prior = io::parse_ratings_csv(read_input(cfg.rho_path, *cfg.in));
    spec.rho = strengths_from_prior(log, prior, cfg.rho_scale);
  }
  return spec;
}

Round resolve_upto(const RunConfig& cfg, const MatchLog& log) {
  const Round upto = cfg.upto.value_or(log.rounds());
  if (upto < 0) throw ConfigError("--upto must be nonnegative");
  if (upto > log.rounds()) {
    throw ConfigError("--upto " + std::to_string(upto) + " exceeds the last round " + std::to_string(log.rounds()));
  }
  return upto;
}

bool json_format(const RunConfig& cfg) { return cfg.format == "json"; }

std::string cmd_rate(const RunConfig& cfg, const MatchLog& log) {
  const Round upto = resolve_upto(cfg, log);
  const MethodSpec spec = method_spec(cfg, log);
  const auto rho = spec.rho.value_or(InitialStrengths::zeros(log.num_teams()));
  switch (spec.id) {
    case MethodId::kMassey: {
      auto sys = build_normal(build_incidence(log, upto));
      auto r = cfg.by_component ? solve_massey_by_component(sys) : solve_massey(sys);
      return json_format(cfg) ? dump(io::ratings_json(log, r)) : io::ratings_csv(log, r);
    }
    case MethodId::kWeightedMassey: {
      auto w = spec.weights == WeightsMode::kLinear ? linear_round_weights(log, upto) : unit_weights(log, upto);
      auto r = rate_massey_weighted(log, w, upto);
      return json_format(cfg) ? dump(io::ratings_json(log, r)) : io::ratings_csv(log, r);
    }
    case MethodId::kColley: {
      auto r = rate_colley_static(log, upto);
      return json_format(cfg) ? dump(io::ratings_json(log, r)) : io::ratings_csv(log, r);
    }
    case MethodId::kOfficial: {
      auto s = official_standings(log, upto);
      return json_format(cfg) ? dump(io::standings_json(log, s)) : io::standings_csv(log, s);
    }
    case MethodId::kTemporalMassey:
    case MethodId::kConstantMassey:
    case MethodId::kTemporalColley:
    case MethodId::kElo: {
      auto h = method_history(log, spec, cfg.hfa, upto);
      return json_format(cfg) ? dump(io::history_json(log, h)) : io::history_csv(log, h);
    }
  }
  throw ConfigError("unhandled method");
}

std::string cmd_trace(const RunConfig& cfg, const MatchLog& log) {
  const Round t = resolve_upto(cfg, log);
  auto team = log.find_team(cfg.team);
  if (!team) throw ConfigError("unknown team '" + cfg.team + "'");
  CoefficientTrace trace;
  if (cfg.method == "tmassey") {
    trace = trace_coefficients(log, *team, t);
  } else if (cfg.method == "cmassey") {
    trace = trace_constant_coefficients(log, ConstantCoeffConfig(cfg.alpha), *team, t);
  } else {
    throw ConfigError("trace supports methods 'tmassey' and 'cmassey'");
  }
  if (json_format(cfg)) return dump(io::trace_json(log, trace));
  return io::trace_csv(log, trace) + "# init_coeffs " + io::init_coeffs_json(log, trace).dump() + "\n";
}

std::string cmd_spectral(const RunConfig& cfg, const MatchLog& log) {
  const Round upto = resolve_upto(cfg, log);
  auto sys = build_normal(build_incidence(log, upto));
  const bool connected = count_components(sys) <= 1;
  auto r = connected ? solve_massey(sys) : solve_massey_by_component(sys);
  return dump(io::spectral_json(spectral_report(sys, r)));
}

HfaGrid grid_for(const RunConfig& cfg, MethodId id) {
  HfaGrid g = default_hfa_grid(id);
  if (cfg.grid_min) g.min = *cfg.grid_min;
  if (cfg.grid_max) g.max = *cfg.grid_max;
  if (cfg.grid_step) g.step = *cfg.grid_step;
  return g;
}

std::string cmd_evaluate(const RunConfig& cfg, const MatchLog& log) {
  if (cfg.all_methods || cfg.report == "table") {
    io::json rows = io::json::array();
    std::ostringstream csv;
    csv << "method,accuracy_no_hfa,hfa,accuracy_hfa\n";
    for (MethodId id : all_methods()) {
      const MethodSpec spec = method_spec(cfg, log, id);
      const double plain = foresight_accuracy(log, spec, 0.0, cfg.warmup).aggregate();
      const auto cal = calibrate_hfa(log, spec, grid_for(cfg, id), cfg.warmup);
      rows.push_back({{"method", method_name(id)},
                      {"accuracy_no_hfa", plain},
                      {"hfa", cal.h_star},
                      {"accuracy_hfa", cal.accuracy}});
      csv << method_name(id) << ',' << io::fixed6(plain) << ',' << io::fixed6(cal.h_star) << ','
          << io::fixed6(cal.accuracy) << '\n';
    }
    return json_format(cfg) ? dump(rows) : csv.str();
  }
  if (cfg.report == "correlation") {
    const Round from = cfg.from.value_or(1);
    const Round to = cfg.to.value_or(log.rounds());
    if (to > log.rounds()) throw ConfigError("--to exceeds the last round");
    std::vector<MethodSpec> methods{method_spec(cfg, log, MethodId::kTemporalMassey),
                                    method_spec(cfg, log, MethodId::kMassey),
                                    method_spec(cfg, log, MethodId::kOfficial)};
    auto series = correlation_series(log, methods, from, to);
    return json_format(cfg) ? dump(io::correlation_json(series)) : io::correlation_csv(series);
  }
  const MethodSpec spec = method_spec(cfg, log);
  double hfa = cfg.hfa;
  if (cfg.calibrate) hfa = calibrate_hfa(log, spec, grid_for(cfg, spec.id), cfg.warmup).h_star;
  auto report = foresight_accuracy(log, spec, hfa, cfg.warmup);
  if (cfg.report == "histogram") {
    auto hist = accuracy_histogram(report);
    return json_format(cfg) ? dump(io::histogram_json(hist)) : io::histogram_csv(hist);
  }
  if (cfg.report != "accuracy") throw ConfigError("unknown report '" + cfg.report + "'");
  return json_format(cfg) ? dump(io::accuracy_json(report)) : io::accuracy_csv(report);
}

std::string cmd_calibrate(const RunConfig& cfg, const MatchLog& log) {
  const MethodSpec spec = method_spec(cfg, log);
  const auto cal = calibrate_hfa(log, spec, grid_for(cfg, spec.id), cfg.warmup);
  if (json_format(cfg)) {
    return dump({{"method", method_name(spec.id)},
                 {"h_star", cal.h_star},
                 {"accuracy", cal.accuracy},
                 {"grid_points", cal.grid_points}});
  }
  std::ostringstream os;
  os << "method,h_star,accuracy,grid_points\n"
     << method_name(spec.id) << ',' << io::fixed6(cal.h_star) << ',' << io::fixed6(cal.accuracy) << ','
     << cal.grid_points << '\n';
  return os.str();
}

std::string cmd_trajectory(const RunConfig& cfg, const MatchLog& log) {
  const MethodSpec spec = method_spec(cfg, log);
  const Round from = cfg.from.value_or(0);
  const Round to = cfg.to.value_or(log.rounds());
  if (to > log.rounds()) throw ConfigError("--to exceeds the last round");
  auto ts = trajectory(log, spec, cfg.teams, from, to);
  return json_format(cfg) ? dump(io::trajectory_json(ts)) : io::trajectory_csv(ts);
}

std::string cmd_simulate(const RunConfig& cfg) {
  SyntheticSpec spec;
  spec.teams = cfg.sim_teams;
  spec.double_round = cfg.sim_double;
  spec.strengths = cfg.strengths;
  spec.noise = cfg.noise;
  spec.seed = cfg.seed;
  return io::log_csv(synthetic_roundrobin(spec));
}

void add_input(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-i,--input", cfg.input, "Match CSV (canonical or fixture layout); '-' for stdin")->required();
}

void add_output(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-o,--output", cfg.output, "Output file (relative paths honor TMASSEY_OUTPUT_DIR)");
  sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_method(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-m,--method", cfg.method,
                  "massey | tmassey | cmassey | colley | tcolley | elo | wmassey | official");
  sub->add_option("--alpha", cfg.alpha, "Constant-coefficient keep weight, in (0,1)");
  sub->add_option("--kappa", cfg.kappa, "Elo update gain");
  sub->add_option("--zeta", cfg.zeta, "Elo logistic scale");
  sub->add_option("--elo-initial", cfg.elo_initial, "Elo starting rating");
  sub->add_flag("--no-hfa-update", cfg.no_hfa_update, "Elo: home-field term affects prediction only");
  sub->add_option("--weights", cfg.weights, "Weighted Massey weights: unit or linear");
  sub->add_option("--rho", cfg.rho_path, "Prior ratings CSV (team,rating) seeding initial strengths");
  sub->add_option("--rho-scale", cfg.rho_scale, "Multiplier applied to prior ratings");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.in = &in;
  CLI::App app{"Massey-family sports ratings, diagnostics and backtests"};
  app.require_subcommand(1);

  auto* rate = app.add_subcommand("rate", "Rating vector or per-round history");
  add_input(rate, cfg);
  add_output(rate, cfg);
  add_method(rate, cfg);
  rate->add_option("--upto", cfg.upto, "Last round included");
  rate->add_option("--hfa", cfg.hfa, "Elo home-field term");
  rate->add_flag("--by-component", cfg.by_component, "Massey: rate disconnected components separately");

  auto* trace = app.add_subcommand("trace", "Spread coefficients of one team's rating");
  add_input(trace, cfg);
  add_output(trace, cfg);
  trace->add_option("-m,--method", cfg.method, "tmassey or cmassey");
  trace->add_option("--alpha", cfg.alpha, "Constant-coefficient keep weight");
  trace->add_option("--team", cfg.team, "Team name")->required();
  trace->add_option("--round,--upto", cfg.upto, "Round of the traced rating");

  auto* spectral = app.add_subcommand("spectral", "Laplacian spectrum and the r ~ p/n bound (JSON)");
  add_input(spectral, cfg);
  spectral->add_option("-o,--output", cfg.output, "Output file");
  spectral->add_option("--upto", cfg.upto, "Last round included");

  auto* evaluate = app.add_subcommand("evaluate", "Foresight accuracy, histograms and Kendall series");
  add_input(evaluate, cfg);
  add_output(evaluate, cfg);
  add_method(evaluate, cfg);
  evaluate->add_option("--hfa", cfg.hfa, "Home-field advantage added to the home rating");
  evaluate->add_flag("--calibrate", cfg.calibrate, "Use the grid-calibrated home-field advantage");
  evaluate->add_option("--warmup", cfg.warmup, "Rounds not predicted at the start")->check(CLI::NonNegativeNumber);
  evaluate->add_option("--report", cfg.report, "accuracy | histogram | correlation | table")
      ->check(CLI::IsMember({"accuracy", "histogram", "correlation", "table"}));
  evaluate->add_flag("--all-methods", cfg.all_methods, "Accuracy table for every method, with and without HFA");
  evaluate->add_option("--from", cfg.from, "First round of the correlation series");
  evaluate->add_option("--to", cfg.to, "Last round of the correlation series");
  evaluate->add_option("--grid-min", cfg.grid_min, "HFA grid start");
  evaluate->add_option("--grid-max", cfg.grid_max, "HFA grid end");
  evaluate->add_option("--grid-step", cfg.grid_step, "HFA grid step");

  auto* calibrate = app.add_subcommand("calibrate", "Grid search for the home-field advantage");
  add_input(calibrate, cfg);
  add_output(calibrate, cfg);
  add_method(calibrate, cfg);
  calibrate->add_option("--warmup", cfg.warmup, "Rounds not predicted at the start")->check(CLI::NonNegativeNumber);
  calibrate->add_option("--grid-min", cfg.grid_min, "HFA grid start");
  calibrate->add_option("--grid-max", cfg.grid_max, "HFA grid end");
  calibrate->add_option("--grid-step", cfg.grid_step, "HFA grid step");

  auto* traj = app.add_subcommand("trajectory", "Per-team rating and rank series");
  add_input(traj, cfg);
  add_output(traj, cfg);
  add_method(traj, cfg);
  traj->add_option("--teams", cfg.teams, "Comma-separated team names")->required()->delimiter(',');
  traj->add_option("--from", cfg.from, "First round");
  traj->add_option("--to", cfg.to, "Last round");

  auto* simulate = app.add_subcommand("simulate", "Seeded synthetic round-robin season (canonical CSV)");
  simulate->add_option("-o,--output", cfg.output, "Output file");
  simulate->add_option("--teams", cfg.sim_teams, "Even number of teams");
  simulate->add_flag("--double", cfg.sim_double, "Double round robin");
  simulate->add_option("--strengths", cfg.strengths, "Comma-separated team strengths")->delimiter(',');
  simulate->add_option("--noise", cfg.noise, "Standard deviation of the margin noise");
  simulate->add_option("--seed", cfg.seed, "Generator seed");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    std::string text;
    if (simulate->parsed()) {
      text = cmd_simulate(cfg);
    } else {
      const MatchLog log = parse_any_csv(read_input(cfg.input, in));
      if (rate->parsed()) text = cmd_rate(cfg, log);
      if (trace->parsed()) text = cmd_trace(cfg, log);
      if (spectral->parsed()) text = cmd_spectral(cfg, log);
      if (evaluate->parsed()) text = cmd_evaluate(cfg, log);
      if (calibrate->parsed()) text = cmd_calibrate(cfg, log);
      if (traj->parsed()) text = cmd_trajectory(cfg, log);
    }
    emit(cfg, text, out);
    return kOk;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InvariantError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataInvariant;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace tmassey::cli
