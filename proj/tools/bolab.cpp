// bolab: batch front end for the solvers and experiments.
//
//   bolab <command> [--config run.json] [--out dir] [--seed n] [-p key=value]...
//
// Exit status: 0 when the report verdict passes, 2 when it fails, 1 on error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "bolab/errors.hpp"
#include "bolab/experiments.hpp"
#include "bolab/gauge.hpp"
#include "bolab/invariants.hpp"
#include "bolab/random.hpp"
#include "bolab/trajectory_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bolab;

namespace {

constexpr const char* kVersion = "0.1.0";

const std::set<std::string> kCommands{"evolve",   "gauge-check", "illposed", "approx", "strichartz",
                                      "counting", "scaling",     "galilean", "drift"};

class UsageError : public Error {
 public:
  using Error::Error;
};

// Flat parameter map; every key must be consumed by the command it is given to.
class Params {
 public:
  explicit Params(json j) : j_(std::move(j)) {}

  template <class T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    if (!j_.contains(key)) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError("invalid parameter '" + key + "': " + j_.at(key).dump());
    }
  }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }
  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) throw ConfigError("invalid parameter '" + k + "' for this command");
  }
  json echo() const { return j_; }

 private:
  json j_;
  std::set<std::string> used_;
};

json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    return text;
  }
}

Dealias parse_dealias(const std::string& s) {
  if (s == "two_thirds") return Dealias::two_thirds;
  if (s == "none") return Dealias::none;
  throw ConfigError("invalid parameter 'dealias': " + s);
}

Integrator parse_integrator(const std::string& s) {
  if (s == "etdrk4") return Integrator::etdrk4;
  if (s == "ifrk4") return Integrator::ifrk4;
  throw ConfigError("invalid parameter 'integrator': " + s);
}

EvolutionConfig evolution_params(Params& p, double T_default = 1.0, Index n_default = 256) {
  EvolutionConfig e;
  e.alpha = p.get("alpha", 0.5);
  e.grid = Grid(p.get("lambda", 1.0), p.get<Index>("N", n_default));
  e.dt = p.get("dt", 1e-3);
  e.t_final = p.get("T", T_default);
  e.integrator = parse_integrator(p.get<std::string>("integrator", "etdrk4"));
  e.dealias = parse_dealias(p.get<std::string>("dealias", "two_thirds"));
  e.nonlinearity = p.get<std::string>("nonlinearity", "advective") == "conservative" ? Nonlinearity::conservative
                                                                                     : Nonlinearity::advective;
  e.snapshot_stride = p.get<Index>("stride", 1);
  e.validate();
  return e;
}

// Physical frequency k maps to lattice index k * lambda.
Index lattice(const Grid& g, double k) {
  const double j = k * g.lambda();
  if (std::abs(j - std::round(j)) > 1e-9) throw ConfigError("u0: frequency not on the lattice of this torus");
  return static_cast<Index>(std::llround(j));
}

Field initial_profile(Params& p, const Grid& g, std::uint64_t seed,
                      const std::string& fallback = "cos+0.3cos2") {
  const json spec = p.has("u0") ? p.raw("u0") : json(fallback);
  Field u = Field::zero(g);
  if (spec.is_string()) {
    const std::string name = spec.get<std::string>();
    if (name == "cos") u = Field::trig(g, lattice(g, 1), 1.0, 0.0);
    else if (name == "sin") u = Field::trig(g, lattice(g, 1), 0.0, 1.0);
    else if (name == "zero") u = Field::zero(g);
    else if (name == "cos+0.3cos2") u = Field::trig(g, lattice(g, 1), 1.0, 0.0) + Field::trig(g, lattice(g, 2), 0.3, 0.0);
    else if (name == "random") {
      // Gaussian modes on 1..max_mode, rescaled to the requested L^2 norm.
      SplitMix64 rng(seed);
      u = random_real_field(g, p.get<Index>("max_mode", g.size() / 8), rng);
      u *= p.get("l2", 1.0) / u.l2_norm();
    } else {
      throw ConfigError("invalid parameter 'u0': unknown profile " + name);
    }
  } else if (spec.is_object() && spec.contains("modes")) {
    // {"modes": [[k, a, b], ...]} gives sum a cos(k x) + b sin(k x)
    for (const auto& m : spec.at("modes")) {
      if (!m.is_array() || m.size() != 3) throw ConfigError("invalid parameter 'u0': modes entries are [k, a, b]");
      u += Field::trig(g, lattice(g, m[0].get<double>()), m[1].get<double>(), m[2].get<double>());
    }
  } else {
    throw ConfigError("invalid parameter 'u0': expected a profile name or {\"modes\": [...]}");
  }
  const double mean = p.get("mean", 0.0);
  if (mean != 0.0) u += Field::constant(g, mean);
  return u;
}

struct Outcome {
  ExperimentReport report;
  std::vector<std::string> files;
};

json evolution_echo(const EvolutionConfig& e) {
  return {{"alpha", e.alpha}, {"lambda", e.grid.lambda()}, {"N", e.grid.size()}, {"dt", e.dt},
          {"T", e.t_final}, {"snapshot_stride", e.snapshot_stride}};
}

Outcome run_evolve(Params& p, const fs::path& out, std::uint64_t seed, bool with_trajectory) {
  EvolutionConfig e = evolution_params(p);
  const Field u0 = initial_profile(p, e.grid, seed);
  const double tol = p.get("drift_tol", 1e-6);
  const double sign = p.get("cubic_sign", -1.0);
  const bool binary = p.get("binary", false);
  p.finish();

  Outcome o;
  o.report.name = with_trajectory ? "evolve" : "drift";
  o.report.config = evolution_echo(e);
  o.report.config["drift_tol"] = tol;
  o.report.config["cubic_sign"] = sign;
  const Trajectory traj = evolve(u0, e);

  o.report.rows.columns = {"quantity", "max_relative_drift"};
  double worst = 0.0;
  for (const Quantity& q : {Quantity::mean(), Quantity::momentum(), Quantity::energy(sign < 0 ? -1 : 1)}) {
    const DriftReport d = drift(traj, q);
    const std::string file = "drift_" + std::string(q.kind == Quantity::Kind::energy ? "energy" : d.quantity) + ".csv";
    write_csv(drift_table(d), out / file);
    o.files.push_back(file);
    o.report.rows.add({d.quantity, d.max_relative_drift});
    if (q.kind != Quantity::Kind::energy) worst = std::max(worst, d.max_relative_drift);
  }
  if (with_trajectory) {
    write_csv(trajectory_table(traj), out / "trajectory.csv");
    o.files.push_back("trajectory.csv");
    if (binary) {
      write_snapshots(traj, out / "trajectory.bin");
      o.files.push_back("trajectory.bin");
    }
  }
  o.report.summary = {{"snapshots", traj.size()}, {"max_conserved_drift", worst}};
  o.report.passed = worst <= tol;
  return o;
}

Outcome run_gauge(Params& p, const fs::path& out, std::uint64_t seed) {
  EvolutionConfig e = evolution_params(p, 0.1);
  const Field u0 = initial_profile(p, e.grid, seed, "random");
  const double tol = p.get("tol", 1e-6);
  const double recon_tol = p.get("reconstruction_tol", 1e-8);
  p.finish();

  Outcome o;
  o.report.name = "gauge-check";
  o.report.config = evolution_echo(e);
  o.report.config["tol"] = tol;
  o.report.config["reconstruction_tol"] = recon_tol;

  const auto [v0, m] = mean_shift(u0);
  const Trajectory traj = evolve(v0, e);
  const ResidualSeries f_exact = f_equation_residual(traj);
  const ResidualSeries w_exact = w_equation_residual(traj);
  write_csv(residual_table(f_exact), out / "gauge_f_residuals.csv");
  write_csv(residual_table(w_exact), out / "gauge_w_residuals.csv");
  o.files = {"gauge_f_residuals.csv", "gauge_w_residuals.csv"};
  double fd_f = std::nan(""), fd_w = std::nan("");
  if (traj.size() >= 3) {
    const ResidualSeries f_fd = f_equation_residual(traj, TimeDerivativeMode::finite_difference);
    const ResidualSeries w_fd = w_equation_residual(traj, TimeDerivativeMode::finite_difference);
    write_csv(residual_table(f_fd), out / "gauge_f_residuals_fd.csv");
    write_csv(residual_table(w_fd), out / "gauge_w_residuals_fd.csv");
    o.files.insert(o.files.end(), {"gauge_f_residuals_fd.csv", "gauge_w_residuals_fd.csv"});
    fd_f = f_fd.max();
    fd_w = w_fd.max();
  }
  double a3 = 0.0, a4 = 0.0;
  for (const Field& snapshot : traj.states) {
    // Same 2x padding as the residuals: the gauge exponential is not band-limited.
    const Field v = resample(snapshot, 2 * snapshot.grid().size());
    const GaugeState gs = build_gauge(v);
    a3 = std::max(a3, (reconstruct_u(gs) - v).l2_norm() / v.l2_norm());
    const Field high = project(v, Projection::gt(1.0));
    a4 = std::max(a4, (reconstruct_high_modes(gs) - high).l2_norm() / std::max(high.l2_norm(), 1e-300));
  }
  auto& rows = o.report.rows;
  rows.columns = {"check", "value", "tolerance", "pass"};
  rows.add({std::string("f_residual_exact"), f_exact.max(), tol, f_exact.max() <= tol});
  rows.add({std::string("w_residual_exact"), w_exact.max(), tol, w_exact.max() <= tol});
  rows.add({std::string("reconstruct_u_rel"), a3, recon_tol, a3 <= recon_tol});
  rows.add({std::string("reconstruct_high_rel"), a4, recon_tol, a4 <= recon_tol});
  o.report.summary = {{"mean_removed", m}, {"f_residual_fd_max", fd_f}, {"w_residual_fd_max", fd_w}};
  o.report.passed = true;
  for (const auto& r : rows.rows) o.report.passed = o.report.passed && std::get<bool>(r[3]);
  return o;
}

IllposednessConfig illposed_params(Params& p) {
  IllposednessConfig c;
  c.alpha = p.get("alpha", c.alpha);
  c.s = p.get("s", c.s);
  c.lambdas = p.get("lambdas", c.lambdas);
  c.delta = p.get("delta", c.delta);
  c.dt_scale = p.get("dt_scale", c.dt_scale);
  c.modes_per_lambda = p.get("modes_per_lambda", c.modes_per_lambda);
  c.integrator = parse_integrator(p.get<std::string>("integrator", "etdrk4"));
  c.dealias = parse_dealias(p.get<std::string>("dealias", "two_thirds"));
  c.cross_check = p.get("cross_check", c.cross_check);
  c.validate();
  for (double l : c.lambdas) t_lambda(c, l);
  return c;
}

Outcome dispatch(const std::string& command, Params& p, const fs::path& out, std::uint64_t seed) {
  if (command == "evolve") return run_evolve(p, out, seed, true);
  if (command == "drift") return run_evolve(p, out, seed, false);
  if (command == "gauge-check") return run_gauge(p, out, seed);
  if (command == "illposed") {
    const auto c = illposed_params(p);
    p.finish();
    return {nonuniform_continuity_demo(c), {}};
  }
  if (command == "approx") {
    const auto c = illposed_params(p);
    const double tol = p.get("slope_tol", 0.3);
    p.finish();
    return {free_approximation_check(c, tol), {}};
  }
  if (command == "strichartz") {
    StrichartzSurveyConfig c;
    c.resolutions = p.get("resolutions", c.resolutions);
    c.samples = p.get("samples", c.samples);
    c.duration = p.get("T", c.duration);
    c.slope_tol = p.get("slope_tol", c.slope_tol);
    c.max_modulation = p.get("max_modulation", c.max_modulation);
    c.seed = seed;
    p.finish();
    return {strichartz_survey(c), {}};
  }
  if (command == "counting") {
    const auto Mmax = p.get<std::int64_t>("Mmax", 64);
    const auto n_range = p.get<std::int64_t>("n_range", 64);
    p.finish();
    return {counting_experiment(Mmax, n_range), {}};
  }
  if (command == "scaling" || command == "galilean") {
    SymmetryCheckOptions o;
    o.evolution = evolution_params(p);
    const Field u0 = initial_profile(p, o.evolution.grid, seed);
    o.tolerance = p.get("tol", o.tolerance);
    if (command == "scaling") {
      const int scale = p.get("scale", 2);
      p.finish();
      return {scaling_symmetry_check(u0, scale, o), {}};
    }
    const double omega = p.get("omega", 0.3);
    p.finish();
    return {galilean_symmetry_check(u0, omega, o), {}};
  }
  throw UsageError("unknown command '" + command + "'");
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path);
  try {
    json j = json::parse(is);
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benjamin-Ono numerical laboratory"};
  std::string command, config_path, out_dir = "bolab-out";
  std::uint64_t seed = 1;
  std::vector<std::string> overrides;
  app.add_option("command", command, "evolve | gauge-check | illposed | approx | strichartz | counting | "
                                     "scaling | galilean | drift");
  app.add_option("--config", config_path, "JSON file with the command and its parameters");
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "seed for random data and surveys");
  app.add_option("-p,--param", overrides, "parameter override key=value (value parsed as JSON when possible)");
  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  try {
    json params = load_config(config_path);
    if (params.contains("command")) {
      if (command.empty()) command = params.at("command").get<std::string>();
      params.erase("command");
    }
    if (params.contains("seed")) {
      if (!seed_opt->count()) seed = params.at("seed").get<std::uint64_t>();
      params.erase("seed");
    }
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("invalid parameter override '" + kv + "'");
      params[kv.substr(0, eq)] = parse_value(kv.substr(eq + 1));
    }
    if (command.empty()) throw UsageError("no command given");
    if (!kCommands.count(command)) throw UsageError("unknown command '" + command + "'");

    const fs::path out(out_dir);
    fs::create_directories(out);
    Params p(params);
    Outcome o = dispatch(command, p, out, seed);
    write_report(o.report, out);
    o.files.push_back(o.report.name + ".csv");
    o.files.push_back(o.report.name + ".json");

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json manifest = {{"command", command},
                     {"config", params},
                     {"seed", seed},
                     {"outputs", o.files},
                     {"verdict", o.report.passed ? "pass" : "fail"},
                     {"versions",
                      {{"bolab", kVersion},
                       {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                     "." + std::to_string(EIGEN_MINOR_VERSION)},
                       {"compiler", __VERSION__}}},
                     {"wall_time_s", wall}};
    std::ofstream(out / "manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
    std::cout << o.report.name << ": " << (o.report.passed ? "pass" : "fail") << " " << o.report.summary.dump()
              << "\n";
    return o.report.passed ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const ConfigError& e) {
    std::cerr << "error: configuration: " << e.what() << "\n";
  } catch (const DivergenceError& e) {
    std::cerr << "error: solver diverged: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
