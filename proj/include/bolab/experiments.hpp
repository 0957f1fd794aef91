#pragma once

// Scripted runs that each produce an ExperimentReport with a pass/fail verdict.

#include <cstdint>
#include <vector>

#include "bolab/bourgain.hpp"
#include "bolab/evolution.hpp"
#include "bolab/report.hpp"

namespace bolab {

/// Setting of the high-frequency ill-posedness construction with
/// phi_lambda = lambda^{-s} sin(lambda x) on the 2 pi torus.
struct IllposednessConfig {
  double alpha = 0.5;
  double s = 1.0;
  std::vector<double> lambdas{8, 16, 32, 64};
  double delta = 0.05;  // margin inside the admissible window for t_lambda
  double dt_scale = 0.02;  // dt_lambda = dt_scale / lambda^{2 alpha + 1}
  Index modes_per_lambda = 8;  // grid size N = max(64, modes_per_lambda * lambda)
  Integrator integrator = Integrator::etdrk4;
  Dealias dealias = Dealias::two_thirds;
  bool cross_check = true;  // also evolve phi + omega directly

  void validate() const;
  nlohmann::json to_json() const;
};

/// Geometric midpoint of [lambda^{-1+delta}, lambda^{s-3/2-delta}] for s > 1/2, or
/// of [lambda^{-1+delta}, lambda^{s-1}] for s <= 1/2 and alpha >= 1/2.
/// Throws ConfigError when the window is empty.
double t_lambda(const IllposednessConfig& cfg, double lambda);

/// Evolution settings used for one lambda of the construction.
EvolutionConfig illposedness_evolution(const IllposednessConfig& cfg, double lambda);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// v = u - U(t) phi against the forcing scale lambda^{1-2s}; passes when the slope of
/// max_t ||v(t)|| / t in lambda is 1 - 2s within slope_tol.
ExperimentReport free_approximation_check(const IllposednessConfig& cfg, double slope_tol = 0.3);

/// Two Galilean boosts omega = +-pi / (2 lambda t_lambda) of one evolution.
ExperimentReport nonuniform_continuity_demo(const IllposednessConfig& cfg);

struct SymmetryCheckOptions {
  EvolutionConfig evolution;
  double tolerance = 1e-7;
};

/// dilate(evolve(u0)) against evolve(dilate(u0)) on the lambda-fold torus.
ExperimentReport scaling_symmetry_check(const Field& u0, int lambda, const SymmetryCheckOptions& opt);

/// evolve(u0 + omega) against galilean_shift(evolve(u0), omega).
ExperimentReport galilean_symmetry_check(const Field& u0, double omega, const SymmetryCheckOptions& opt);

struct StrichartzSurveyConfig {
  std::vector<Index> resolutions{32, 64, 128};
  Index samples = 500;
  double duration = 1.0;
  std::uint64_t seed = 20240601;
  double slope_tol = 0.05;
  double max_modulation = 4.0;  // random offsets beta in [-max, max] added to the phase
};

/// Samples a free Benjamin-Ono superposition sum_k c_k e^{i(k x - k|k| t + beta_k t)};
/// coefficient and beta vectors are indexed in FFT order.
WindowedField modulated_wave(const Grid& g, double T, Index n_time, const ComplexVector<double>& c,
                             const RealVector<double>& beta);

/// Time samples used for resolution N: a power of two >= max(64, N^2 / 4).
Index survey_time_samples(Index N);

/// Single free wave e^{i(x - t)}: the baseline ratio r0 at resolution N.
double strichartz_baseline(Index N, double T);

ExperimentReport strichartz_survey(const StrichartzSurveyConfig& cfg);

/// Exhaustive lattice counting sweep over dyadic M1 <= M2 <= Mmax.
ExperimentReport counting_experiment(std::int64_t Mmax, std::int64_t n_range);

/// Largest count ratio alpha / ((M1 ^ M2)(M1 v M2)^{1/2}) of the reference sweep
/// (Mmax = 64, n_range = 64), attained at M1 = M2 = 1.
inline constexpr double kCountingConstant = 7.0;

struct BilinearSurveyConfig {
  std::int64_t Mmax = 32;
  std::int64_t n_max = 12;
  Index trials = 4;
  std::uint64_t seed = 7;
};

/// Random modulation blocks on T^2 (Schrodinger phase), ratio of ||v1 v2|| to
/// (M1 ^ M2)^{1/2} (M1 v M2)^{1/4} ||v1|| ||v2||.
ExperimentReport bilinear_survey(const BilinearSurveyConfig& cfg);

/// Runs body(i) for i in [0, n) on the available hardware threads. Results must be
/// written to per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bolab
