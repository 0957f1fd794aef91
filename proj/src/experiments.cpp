#include "bolab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "bolab/errors.hpp"
#include "bolab/invariants.hpp"
#include "bolab/random.hpp"

namespace bolab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string integrator_name(Integrator i) { return i == Integrator::etdrk4 ? "etdrk4" : "ifrk4"; }

Index next_pow2(double x) {
  Index n = 1;
  while (static_cast<double>(n) < x) n *= 2;
  return n;
}

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InsufficientDataError("loglog_slope: need two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw InsufficientDataError("loglog_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / den;
}

// ---- ill-posedness construction -----------------------------------------------

void IllposednessConfig::validate() const {
  if (!(s > 0.0)) throw ConfigError("illposed: s must be positive");
  if (!(alpha > 0.0)) throw ConfigError("illposed: alpha must be positive");
  if (lambdas.size() < 2) throw ConfigError("illposed: need at least two lambda values");
  for (double l : lambdas)
    if (!(l >= 2.0) || std::floor(l) != l) throw ConfigError("illposed: lambda values must be integers >= 2");
  if (!(delta > 0.0) || !(dt_scale > 0.0)) throw ConfigError("illposed: delta and dt_scale must be positive");
  if (modes_per_lambda < 3) throw ConfigError("illposed: modes_per_lambda must be >= 3");
}

nlohmann::json IllposednessConfig::to_json() const {
  return {{"alpha", alpha},
          {"s", s},
          {"lambdas", lambdas},
          {"delta", delta},
          {"dt_scale", dt_scale},
          {"modes_per_lambda", modes_per_lambda},
          {"integrator", integrator_name(integrator)},
          {"dealias", dealias == Dealias::two_thirds ? "two_thirds" : "none"},
          {"cross_check", cross_check},
          {"t_rule", "mid_window"}};
}

double t_lambda(const IllposednessConfig& cfg, double lambda) {
  const double lo = std::pow(lambda, -1.0 + cfg.delta);
  double hi;
  if (cfg.s > 0.5) {
    hi = std::pow(lambda, cfg.s - 1.5 - cfg.delta);
  } else if (cfg.alpha >= 0.5) {
    hi = std::pow(lambda, cfg.s - 1.0);
  } else {
    throw ConfigError("illposed: no admissible time window for s <= 1/2 with alpha < 1/2");
  }
  if (!(hi > lo))
    throw ConfigError("illposed: t_lambda window is empty for s = " + std::to_string(cfg.s) +
                      "; use s <= 1/2 with alpha >= 1/2, where the window is "
                      "[lambda^(-1+delta), lambda^(s-1)]");
  return std::sqrt(lo * hi);
}

EvolutionConfig illposedness_evolution(const IllposednessConfig& cfg, double lambda) {
  EvolutionConfig e;
  e.alpha = cfg.alpha;
  const auto n = static_cast<Index>(lambda) * cfg.modes_per_lambda;
  e.grid = Grid(1.0, std::max<Index>(64, next_pow2(static_cast<double>(n))));
  e.dt = cfg.dt_scale / std::pow(lambda, 2.0 * cfg.alpha + 1.0);
  e.t_final = t_lambda(cfg, lambda);
  e.integrator = cfg.integrator;
  e.dealias = cfg.dealias;
  e.snapshot_stride = e.steps();
  return e;
}

namespace {

Field phi_lambda(const Grid& g, double lambda, double s) {
  return Field::trig(g, static_cast<Index>(lambda), 0.0, std::pow(lambda, -s));
}

}  // namespace

ExperimentReport free_approximation_check(const IllposednessConfig& cfg, double slope_tol) {
  cfg.validate();
  ExperimentReport rep;
  rep.name = "approx";
  rep.config = cfg.to_json();
  rep.config["slope_tol"] = slope_tol;

  struct Row {
    Index n;
    double dt, t, forcing0, forcing_end, predicted, max_ratio, sup_v, at_t;
  };
  std::vector<Row> out(cfg.lambdas.size());
  parallel_for(cfg.lambdas.size(), [&](std::size_t i) {
    const double lambda = cfg.lambdas[i];
    const EvolutionConfig e = illposedness_evolution(cfg, lambda);
    const Field phi = phi_lambda(e.grid, lambda, cfg.s);
    auto forcing = [&](double t) {
      const Field w = free_propagate(phi, t, cfg.alpha);
      return multiply(w, dx(w), Dealias::none).l2_norm();
    };
    Row r{e.grid.size(), e.effective_dt(), e.t_final, forcing(0.0), forcing(e.t_final),
          0.5 * std::pow(lambda, 1.0 - 2.0 * cfg.s) * std::sqrt(kPi), 0.0, 0.0, 0.0};
    evolve(phi, e, [&](double t, const Field& u) {
      const double v = (u - free_propagate(phi, t, cfg.alpha)).l2_norm();
      r.max_ratio = std::max(r.max_ratio, v / t);
      r.sup_v = std::max(r.sup_v, v);
      r.at_t = v;
    });
    out[i] = r;
  });

  rep.rows.columns = {"lambda", "N", "dt", "t_lambda", "forcing_L2_t0", "forcing_L2_tlambda",
                      "forcing_predicted", "max_v_over_t", "sup_v", "v_at_tlambda",
                      "gronwall_scale", "sup_v_over_scale"};
  std::vector<double> ratios;
  double forcing_err = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Row& r = out[i];
    const double lambda = cfg.lambdas[i];
    const double scale = std::pow(lambda, 1.0 - 2.0 * cfg.s) * r.t;
    forcing_err = std::max({forcing_err, std::abs(r.forcing0 / r.predicted - 1.0),
                            std::abs(r.forcing_end / r.predicted - 1.0)});
    ratios.push_back(r.max_ratio);
    rep.rows.add({lambda, static_cast<std::int64_t>(r.n), r.dt, r.t, r.forcing0, r.forcing_end,
                  r.predicted, r.max_ratio, r.sup_v, r.at_t, scale, r.sup_v / scale});
  }
  const double slope = loglog_slope(cfg.lambdas, ratios);
  const double expected = 1.0 - 2.0 * cfg.s;
  rep.summary = {{"slope", slope},
                 {"expected_slope", expected},
                 {"forcing_relative_error", forcing_err}};
  rep.passed = std::abs(slope - expected) <= slope_tol && forcing_err <= 1e-8;
  rep.notes.push_back("v = u - U(t) phi; max_v_over_t is taken over every solver step");
  return rep;
}

ExperimentReport nonuniform_continuity_demo(const IllposednessConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  rep.name = "illposed";
  rep.config = cfg.to_json();

  struct Row {
    double t, omega, initial, initial_pred, separation, predicted, cross;
  };
  std::vector<Row> out(cfg.lambdas.size());
  parallel_for(cfg.lambdas.size(), [&](std::size_t i) {
    const double lambda = cfg.lambdas[i];
    const EvolutionConfig e = illposedness_evolution(cfg, lambda);
    const Grid& g = e.grid;
    const double t = e.t_final;
    const double omega = kPi / (2.0 * lambda * t);
    const Field phi = phi_lambda(g, lambda, cfg.s);
    const Field u = evolve(phi, e).back();

    auto boosted = [&](const Field& f, double w) { return translate(f, w * t) + Field::constant(g, w); };
    const Field u1 = boosted(u, omega);
    const Field u2 = boosted(u, -omega);
    const Field d0 = (phi + Field::constant(g, omega)) - (phi + Field::constant(g, -omega));

    Row r{};
    r.t = t;
    r.omega = omega;
    r.initial = sobolev_norm(d0, cfg.s);
    r.initial_pred = kPi * std::sqrt(2.0 * kPi) / (lambda * t);
    r.separation = sobolev_norm(u1 - u2, cfg.s);
    r.predicted = sobolev_norm(Field::trig(g, static_cast<Index>(lambda), 2.0 * std::pow(lambda, -cfg.s), 0.0), cfg.s);
    r.cross = std::nan("");
    if (cfg.cross_check) {
      EvolutionConfig direct = e;
      const Field v = evolve(phi + Field::constant(g, omega), direct).back();
      r.cross = (v - u1).l2_norm() / u1.l2_norm();
    }
    out[i] = r;
  });

  rep.rows.columns = {"lambda", "t_lambda", "omega1", "omega2", "initial_distance",
                      "initial_predicted", "separation", "separation_predicted", "ratio",
                      "separation_over_initial", "cross_check_rel_error"};
  std::vector<double> lt, initial;
  bool ratios_ok = true, initial_decreasing = true, growth = true, cross_ok = true;
  double max_initial_err = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Row& r = out[i];
    const double lambda = cfg.lambdas[i];
    const double ratio = r.separation / r.predicted;
    rep.rows.add({lambda, r.t, r.omega, -r.omega, r.initial, r.initial_pred, r.separation, r.predicted,
                  ratio, r.separation / r.initial, r.cross});
    lt.push_back(lambda * r.t);
    initial.push_back(r.initial);
    ratios_ok = ratios_ok && ratio >= 0.5 && ratio <= 2.0;
    max_initial_err = std::max(max_initial_err, std::abs(r.initial / r.initial_pred - 1.0));
    if (cfg.cross_check) cross_ok = cross_ok && r.cross <= 1e-8;
    if (i > 0) {
      initial_decreasing = initial_decreasing && r.initial < out[i - 1].initial;
      growth = growth && r.separation / r.initial > out[i - 1].separation / out[i - 1].initial;
    }
  }
  const double slope = loglog_slope(lt, initial);
  rep.summary = {{"initial_distance_slope", slope},
                 {"initial_distance_relative_error", max_initial_err},
                 {"ratios_within_band", ratios_ok},
                 {"initial_decreasing", initial_decreasing},
                 {"separation_over_initial_increasing", growth},
                 {"cross_check_ok", cross_ok}};
  rep.passed = std::abs(slope + 1.0) <= 0.1 && ratios_ok && initial_decreasing && growth && cross_ok;
  rep.notes.push_back("slope is d log(initial_distance) / d log(lambda t_lambda)");
  return rep;
}

// ---- symmetries ---------------------------------------------------------------

namespace {

nlohmann::json evolution_json(const EvolutionConfig& e) {
  return {{"alpha", e.alpha},
          {"lambda", e.grid.lambda()},
          {"N", e.grid.size()},
          {"dt", e.dt},
          {"T", e.t_final},
          {"integrator", integrator_name(e.integrator)},
          {"snapshot_stride", e.snapshot_stride}};
}

ExperimentReport compare_trajectories(const std::string& name, const Trajectory& a, const Trajectory& b,
                                      double tol) {
  if (a.size() != b.size()) throw SizeError(name + ": snapshot counts differ");
  ExperimentReport rep;
  rep.name = name;
  rep.rows.columns = {"t", "l2_discrepancy"};
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-9 * std::max(1.0, std::abs(a.times[i])))
      throw SizeError(name + ": snapshot times differ");
    const double d = (a.states[i] - b.states[i]).l2_norm();
    worst = std::max(worst, d);
    rep.rows.add({a.times[i], d});
  }
  rep.summary = {{"max_l2_discrepancy", worst}, {"tolerance", tol}};
  rep.passed = worst <= tol;
  return rep;
}

}  // namespace

ExperimentReport scaling_symmetry_check(const Field& u0, int lambda, const SymmetryCheckOptions& opt) {
  if (lambda < 2) throw ConfigError("scaling: lambda must be an integer >= 2");
  const EvolutionConfig& e = opt.evolution;
  const Trajectory small = evolve(u0, e);

  EvolutionConfig big = e;
  big.grid = Grid(e.grid.lambda() * lambda, e.grid.size());
  big.t_final = e.t_final * lambda * lambda;
  big.snapshot_stride = e.snapshot_stride * lambda * lambda;
  if (big.steps() != e.steps() * lambda * lambda)
    throw ConfigError("scaling: T / dt must be a whole number of steps");
  const Trajectory large = evolve(dilate(u0, lambda), big);

  ExperimentReport rep = compare_trajectories("scaling", dilate(small, lambda), large, opt.tolerance);
  rep.config = evolution_json(e);
  rep.config["scale"] = lambda;
  return rep;
}

ExperimentReport galilean_symmetry_check(const Field& u0, double omega, const SymmetryCheckOptions& opt) {
  const EvolutionConfig& e = opt.evolution;
  const Trajectory base = evolve(u0, e);
  const Trajectory boosted = evolve(u0 + Field::constant(e.grid, omega), e);
  ExperimentReport rep = compare_trajectories("galilean", galilean_shift(base, omega), boosted, opt.tolerance);
  rep.config = evolution_json(e);
  rep.config["omega"] = omega;
  return rep;
}

// ---- Strichartz survey --------------------------------------------------------

WindowedField modulated_wave(const Grid& g, double T, Index n_time, const ComplexVector<double>& c,
                             const RealVector<double>& beta) {
  if (c.size() != g.size() || beta.size() != g.size()) throw SizeError("modulated_wave: vector length");
  Eigen::MatrixXcd s(n_time, g.size());
  Eigen::VectorXd psi(n_time);
  const double dt = T / static_cast<double>(n_time);
  for (Index m = 0; m < n_time; ++m) {
    const double t = dt * static_cast<double>(m);
    psi(m) = window_cutoff(t, T);
    ComplexVector<double> ct(g.size());
    for (Index j = 0; j < g.size(); ++j) {
      const double xi = g.frequency(j);
      ct(j) = c(j) * std::polar(1.0, (-xi * std::abs(xi) + beta(j)) * t);
    }
    s.row(m) = from_spectral(Field(g, std::move(ct), false)).transpose();
  }
  return WindowedField(g, T, std::move(s), std::move(psi), true);
}

Index survey_time_samples(Index N) {
  return std::max<Index>(64, next_pow2(static_cast<double>(N * N) / 4.0));
}

double strichartz_baseline(Index N, double T) {
  const Grid g(1.0, N);
  ComplexVector<double> c = ComplexVector<double>::Zero(N);
  c(g.index_of(1)) = 1.0;
  return strichartz_ratio(modulated_wave(g, T, survey_time_samples(N), c, RealVector<double>::Zero(N)));
}

namespace {

// Draws one survey field; the family rotates with the sample id.
void draw_survey_field(const Grid& g, SplitMix64& rng, std::size_t id, double max_beta,
                       ComplexVector<double>& c, RealVector<double>& beta) {
  const Index N = g.size();
  const std::int64_t kmax = N / 2 - 1;
  c.setZero(N);
  beta.setZero(N);
  auto put = [&](std::int64_t k, std::complex<double> a, double b) {
    const Index j = g.index_of(static_cast<Index>(k));
    c(j) = a;
    beta(j) = b;
  };
  auto gaussian = [&] { return std::complex<double>(rng.normal(), rng.normal()); };
  switch (id % 4) {
    case 0: {  // Gaussian coefficients on a random band, independent modulations
      const std::int64_t a = rng.integer(-kmax, kmax);
      const std::int64_t b = rng.integer(-kmax, kmax);
      for (std::int64_t k = std::min(a, b); k <= std::max(a, b); ++k)
        put(k, gaussian(), rng.uniform(-max_beta, max_beta));
      break;
    }
    case 1: {  // flat Dirichlet block, one common modulation
      const std::int64_t a = rng.integer(-kmax, kmax);
      const std::int64_t b = rng.integer(-kmax, kmax);
      const double shift = rng.uniform(-max_beta, max_beta);
      for (std::int64_t k = std::min(a, b); k <= std::max(a, b); ++k) put(k, 1.0, shift);
      break;
    }
    case 2: {  // a few modes
      const std::int64_t count = rng.integer(1, 3);
      for (std::int64_t i = 0; i < count; ++i)
        put(rng.integer(-kmax, kmax), gaussian(), rng.uniform(-max_beta, max_beta));
      break;
    }
    default:  // full band, on the dispersion curve
      for (std::int64_t k = -kmax; k <= kmax; ++k) put(k, gaussian(), 0.0);
      break;
  }
}

}  // namespace

ExperimentReport strichartz_survey(const StrichartzSurveyConfig& cfg) {
  if (cfg.resolutions.size() < 2) throw ConfigError("strichartz: need at least two resolutions");
  if (cfg.samples < 1) throw ConfigError("strichartz: samples must be positive");
  if (!(cfg.duration > 0.0)) throw ConfigError("strichartz: T must be positive");
  for (Index N : cfg.resolutions)
    if (N < 8 || N % 2) throw ConfigError("strichartz: resolutions must be even and >= 8");

  ExperimentReport rep;
  rep.name = "strichartz";
  rep.config = {{"resolutions", cfg.resolutions}, {"samples", cfg.samples}, {"T", cfg.duration},
                {"seed", cfg.seed}, {"slope_tol", cfg.slope_tol}, {"max_modulation", cfg.max_modulation}};
  rep.rows.columns = {"sample_id", "N", "T", "ratio", "bound", "ratio_over_bound"};

  std::vector<double> ns, maxima;
  nlohmann::json per_n = nlohmann::json::array();
  for (Index N : cfg.resolutions) {
    const Grid g(1.0, N);
    const Index n_time = survey_time_samples(N);
    const double r0 = strichartz_baseline(N, cfg.duration);
    std::vector<double> ratio(static_cast<std::size_t>(cfg.samples));
    parallel_for(ratio.size(), [&](std::size_t i) {
      SplitMix64 rng = SplitMix64::stream(cfg.seed ^ static_cast<std::uint64_t>(N), i);
      ComplexVector<double> c;
      RealVector<double> beta;
      draw_survey_field(g, rng, i, cfg.max_modulation, c, beta);
      ratio[i] = strichartz_ratio(modulated_wave(g, cfg.duration, n_time, c, beta));
    });
    for (std::size_t i = 0; i < ratio.size(); ++i)
      rep.rows.add({static_cast<std::int64_t>(i), static_cast<std::int64_t>(N), cfg.duration, ratio[i], r0,
                    ratio[i] / r0});
    const double mx = *std::max_element(ratio.begin(), ratio.end());
    ns.push_back(static_cast<double>(N));
    maxima.push_back(mx);
    per_n.push_back({{"N", N}, {"n_time", n_time}, {"baseline", r0}, {"max_ratio", mx}});
  }
  const double slope = loglog_slope(ns, maxima);
  rep.summary = {{"per_resolution", per_n}, {"max_ratio_slope", slope}};
  rep.passed = slope <= cfg.slope_tol;
  rep.notes.push_back("bound is the single free wave ratio r0 at the same resolution");
  return rep;
}

// ---- counting and bilinear blocks --------------------------------------------

ExperimentReport counting_experiment(std::int64_t Mmax, std::int64_t n_range) {
  if (Mmax < 1 || (Mmax & (Mmax - 1))) throw ConfigError("counting: Mmax must be a power of two");
  if (n_range < 0) throw ConfigError("counting: n_range must be >= 0");
  ExperimentReport rep;
  rep.name = "counting";
  rep.config = {{"Mmax", Mmax}, {"n_range", n_range}};
  rep.rows.columns = {"M1", "M2", "max_alpha", "arg_tau", "arg_n", "bound", "ratio"};
  const auto cells = counting_sweep(Mmax, n_range);
  double C = 0.0;
  for (const auto& c : cells) {
    rep.rows.add({c.M1, c.M2, c.max_alpha, c.arg_tau, c.arg_n, c.bound, c.ratio});
    C = std::max(C, c.ratio);
  }
  const std::int64_t hand = counting_alpha(0, 0, 1, 1, 0);
  rep.summary = {{"C", C}, {"reference_C", kCountingConstant}, {"hand_cell", hand}};
  rep.passed = hand == 3 && C <= kCountingConstant;
  rep.notes.push_back("pairs with M1 > M2 are omitted: the maximal count is symmetric in (M1, M2)");
  return rep;
}

namespace {

WindowedField random_block(std::int64_t M, std::int64_t n_max, Index n_x, Index n_time, SplitMix64& rng) {
  const Grid g(1.0, n_x);
  const ModulationShell shell(M);
  const auto wrap = [](std::int64_t k, Index n) { return static_cast<Index>(((k % n) + n) % n); };
  // Coefficients on the (tau, n) lattice, then an unnormalized inverse DFT in both variables.
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n_time, n_x);
  for (std::int64_t n = -n_max; n <= n_max; ++n)
    for (std::int64_t a = -shell.outer; a <= shell.outer; ++a)
      if (shell.contains(a)) c(wrap(n * n + a, n_time), wrap(n, n_x)) = {rng.normal(), rng.normal()};
  auto& fft = detail::fft_engine<double>();
  Eigen::VectorXcd in, out;
  for (Index l = 0; l < n_x; ++l) {
    in = c.col(l);
    fft.inv(out, in);
    c.col(l) = out * static_cast<double>(n_time);
  }
  for (Index m = 0; m < n_time; ++m) {
    in = c.row(m).transpose();
    fft.inv(out, in);
    c.row(m) = out.transpose() * static_cast<double>(n_x);
  }
  return WindowedField::periodic(g, 2.0 * kPi, std::move(c));
}

}  // namespace

ExperimentReport bilinear_survey(const BilinearSurveyConfig& cfg) {
  if (cfg.Mmax < 1 || cfg.n_max < 0 || cfg.trials < 1) throw ConfigError("bilinear: invalid parameters");
  const std::int64_t outer = ModulationShell(cfg.Mmax).outer;
  // Product frequencies span [-2 n_max, 2 n_max] in space and
  // [-2 outer, 2 (n_max^2 + outer)] in time; both grids must hold them unaliased.
  const Index n_x = next_pow2(static_cast<double>(4 * cfg.n_max + 2));
  const Index n_time = next_pow2(static_cast<double>(2 * cfg.n_max * cfg.n_max + 4 * outer + 2));

  std::vector<std::int64_t> scales;
  for (std::int64_t M = 1; M <= cfg.Mmax; M *= 2) scales.push_back(M);
  std::vector<WindowedField> blocks;
  const std::size_t per_scale = static_cast<std::size_t>(2 * cfg.trials);
  for (std::size_t i = 0; i < scales.size(); ++i)
    for (std::size_t k = 0; k < per_scale; ++k) {
      SplitMix64 rng = SplitMix64::stream(cfg.seed, i * per_scale + k);
      blocks.push_back(random_block(scales[i], cfg.n_max, n_x, n_time, rng));
    }

  ExperimentReport rep;
  rep.name = "bilinear";
  rep.config = {{"Mmax", cfg.Mmax}, {"n_max", cfg.n_max}, {"trials", cfg.trials}, {"seed", cfg.seed},
                {"n_x", n_x}, {"n_time", n_time}};
  rep.rows.columns = {"M1", "M2", "trial", "ratio", "bound", "ratio_over_bound"};
  double C = 0.0;
  for (std::size_t i = 0; i < scales.size(); ++i)
    for (std::size_t j = i; j < scales.size(); ++j)
      for (Index t = 0; t < cfg.trials; ++t) {
        const auto& v1 = blocks[i * per_scale + static_cast<std::size_t>(t)];
        const auto& v2 = blocks[j * per_scale + static_cast<std::size_t>(cfg.trials + t)];
        const double r = bilinear_block_norm(v1, v2);
        const double lo = static_cast<double>(scales[i]), hi = static_cast<double>(scales[j]);
        const double bound = std::sqrt(lo) * std::pow(hi, 0.25);
        C = std::max(C, r / bound);
        rep.rows.add({scales[i], scales[j], static_cast<std::int64_t>(t), r, bound, r / bound});
      }
  rep.summary = {{"C", C}};
  rep.passed = std::isfinite(C);
  return rep;
}

}  // namespace bolab
