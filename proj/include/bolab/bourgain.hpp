#pragma once

// Discrete space-time norms on windowed samples.
//
// A WindowedField holds u(t_j, x_l) on t_j = j T / n_time (j < n_time) and the
// collocation points of a PeriodicGrid. Transforms multiply by the cutoff
// psi(t / T), optionally zero-pad the time axis to 2 n_time samples, then take
//   hat{u}(tau, xi) = sum_j sum_l exp(-i (tau t_j + xi x_l)) psi_j u_jl dt dx
// on tau in (2 pi / T_pad) Z. Norms are normalized so that X^{0,0} equals the
// space-time L^2 norm of psi u (Parseval).

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bolab/spectral.hpp"

namespace bolab {

/// Modulation variable sigma: tau + xi |xi| for Benjamin-Ono, tau - xi^2 for
/// the Schrodinger phase used on T^2.
enum class Phase { benjamin_ono, schrodinger };

double japanese(double x);

/// C^infinity time cutoff on [0, T]: 0 at the ends, 1 on [T/4, 3T/4].
double window_cutoff(double t, double T);

struct WindowedField {
  Grid grid;
  double duration;
  Eigen::MatrixXcd samples;  // n_time x N
  Eigen::VectorXd cutoff;    // one weight per time sample
  bool pad = true;

  WindowedField(Grid g, double T, Eigen::MatrixXcd s, Eigen::VectorXd psi, bool padded);

  /// Samples fn(t, x) with the smooth cutoff and 2x zero padding.
  static WindowedField sample(const Grid& g, double T, Index n_time,
                              const std::function<std::complex<double>(double, double)>& fn);

  /// t -> U_alpha(t) f on [0, T).
  static WindowedField free_evolution(const Field& f, double T, Index n_time, double alpha);

  /// Periodic window: cutoff identically one, no padding (T^2 setting when T = 2 pi).
  static WindowedField periodic(const Grid& g, double T, Eigen::MatrixXcd s);

  Index n_time() const { return samples.rows(); }
  double time_step() const { return duration / static_cast<double>(n_time()); }
  double padded_duration() const { return pad ? 2.0 * duration : duration; }
  Eigen::MatrixXcd weighted() const;
};

struct SpacetimeSpectrum {
  Grid grid;
  double padded_duration;
  Eigen::MatrixXcd coeffs;  // (time frequencies) x N, both in FFT order

  double tau(Index m) const;
  double xi(Index j) const { return grid.frequency(j); }
  double sigma(Index m, Index j, Phase phase) const;
};

SpacetimeSpectrum spacetime_transform(const WindowedField& w);

/// Samples on the full (padded) time grid of the inverse transform; the result
/// is a periodic window of duration padded_duration.
WindowedField to_windowed(const SpacetimeSpectrum& spec);

struct NormSpec {
  enum class Flavor { X, Z, Y, LpLq };
  Flavor flavor;
  double b = 0.0;
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  Phase phase = Phase::benjamin_ono;

  static NormSpec X(double b, double s, Phase ph = Phase::benjamin_ono) { return {Flavor::X, b, s, 2, 2, ph}; }
  static NormSpec Z(double b, double s, Phase ph = Phase::benjamin_ono) { return {Flavor::Z, b, s, 2, 2, ph}; }
  static NormSpec Y(double s, Phase ph = Phase::benjamin_ono) { return {Flavor::Y, 0.5, s, 2, 2, ph}; }
  static NormSpec LpLq(double p, double q) { return {Flavor::LpLq, 0, 0, p, q}; }
};

double bourgain_norm(const SpacetimeSpectrum& spec, const NormSpec& norm);
double bourgain_norm(const WindowedField& w, const NormSpec& norm);

/// Mixed norm (int_0^T ||u(t)||_{L^q}^p dt)^{1/p} of the raw samples (no cutoff);
/// p or q = infinity gives the max.
double lp_lq_norm(const WindowedField& w, double p, double q);

/// || psi u ||_{L^4_{t,x}} by quadrature on the sample grid.
double l4_norm(const WindowedField& w);

/// || psi u ||_{L^2_{t,x}}.
double l2_norm(const WindowedField& w);

/// ||psi v||_{L^4} / ||v||_{X^{3/8,0}}. With split_halves the denominator is
/// ||P_+ v|| + ||P_0 v|| + ||P_- v|| in X^{3/8,0}.
double strichartz_ratio(const WindowedField& w, bool split_halves = true);

// ---- Littlewood-Paley ------------------------------------------------------

/// eta(xi) = phi(xi) - phi(2 xi), phi = 1 on |xi| <= 1, 0 on |xi| >= 2, with a
/// septic smoothstep in between. sum_k eta(2^{-k} xi) = 1 for xi != 0.
double lp_eta(double xi);

/// Dyadic indices k whose blocks can touch the grid's nonzero frequencies.
std::pair<int, int> dyadic_range(const Grid& g);

/// Delta_k f: multiplier eta(2^{-k} xi).
Field littlewood_paley(const Field& f, int k);

/// Modulation block v_M: keeps <sigma> in [M, 2M) (M = 1, 2, 4, ...).
SpacetimeSpectrum modulation_block(const SpacetimeSpectrum& spec, double M, Phase phase);
WindowedField littlewood_paley(const WindowedField& w, double M, Phase phase);

/// ||v1 v2||_{L^2} / (||v1||_{L^2} ||v2||_{L^2}) on the common sample grid. The
/// grid must resolve the product for the value to be exact.
double bilinear_block_norm(const WindowedField& v1, const WindowedField& v2);

// ---- lattice counting ------------------------------------------------------

/// Integers a with <a> in [M, 2M), i.e. M^2 - 1 <= a^2 < 4 M^2 - 1, as
/// [-outer, -inner] u [inner, outer].
struct ModulationShell {
  std::int64_t inner;
  std::int64_t outer;
  explicit ModulationShell(std::int64_t M);
  std::int64_t size() const { return inner == 0 ? 2 * outer + 1 : 2 * (outer - inner + 1); }
  bool contains(std::int64_t a) const;
};

/// #{a in shell1 : c - a in shell2}.
std::int64_t shell_convolution(const ModulationShell& s1, const ModulationShell& s2, std::int64_t c);

/// #{(tau1, n1) : |n1| <= n_range, <tau1 - n1^2> in [M1, 2M1),
///                <tau - tau1 - (n - n1)^2> in [M2, 2M2)}.
std::int64_t counting_alpha(std::int64_t tau, std::int64_t n, std::int64_t M1, std::int64_t M2,
                            std::int64_t n_range);

struct CountingCell {
  std::int64_t M1, M2;
  std::int64_t max_alpha;
  std::int64_t arg_tau, arg_n;
  double bound;  // (M1 ^ M2) (M1 v M2)^{1/2}
  double ratio;
};

/// Exhaustive maximum of counting_alpha over every (tau, n) with |n| <= n_range
/// for one pair of dyadic scales.
CountingCell counting_max(std::int64_t M1, std::int64_t M2, std::int64_t n_range);

/// All pairs M1 <= M2 of dyadic scales up to Mmax (the count is symmetric).
std::vector<CountingCell> counting_sweep(std::int64_t Mmax, std::int64_t n_range);

}  // namespace bolab
