#pragma once

// Time integration of u_t + d_x D^{2 alpha} u = u u_x on the (2 pi lambda)-torus.
// alpha = 1/2 is Benjamin-Ono (d_x D = H d_x^2), alpha = 1 is KdV.

#include <functional>
#include <utility>
#include <vector>

#include "bolab/spectral.hpp"

namespace bolab {

enum class Integrator { etdrk4, ifrk4 };

/// Form of the quadratic term: u * u_x, or (1/2) d_x (u^2).
enum class Nonlinearity { advective, conservative };

struct EvolutionConfig {
  double alpha = 0.5;
  Grid grid{1.0, 256};
  double dt = 1e-3;
  double t_final = 1.0;
  Integrator integrator = Integrator::etdrk4;
  Dealias dealias = Dealias::two_thirds;
  Nonlinearity nonlinearity = Nonlinearity::advective;
  Index snapshot_stride = 1;

  /// Throws ConfigError. With u0 given, also applies the advective step guard
  /// dt * k_max * max|u0| <= kMaxCourant.
  void validate() const;
  void validate(const Field& u0) const;

  /// Number of steps and the step actually taken (t_final / steps).
  Index steps() const;
  double effective_dt() const;

  static constexpr double kMaxCourant = 2.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
  EvolutionConfig config;

  std::size_t size() const { return states.size(); }
  const Field& back() const { return states.back(); }
};

/// Symbol of the linear part: -i |xi|^{2 alpha} xi (zero at Nyquist).
std::complex<double> linear_symbol(double xi, double alpha);

/// Free group U_alpha(t): hat{f}(xi) * exp(-i |xi|^{2 alpha} xi t).
Field free_propagate(const Field& f, double t, double alpha);

/// Quadratic term u u_x (or (1/2)(u^2)_x), dealiased, with zero mean mode.
Field nonlinear_term(const Field& u, Dealias rule, Nonlinearity form = Nonlinearity::advective);

/// u_t = -d_x D^{2 alpha} u + u u_x evaluated at u.
Field time_derivative(const Field& u, double alpha, Dealias rule,
                      Nonlinearity form = Nonlinearity::advective);

Trajectory evolve(const Field& u0, const EvolutionConfig& cfg);

/// Called after every step with (t, u(t)), independent of the snapshot stride.
using StepObserver = std::function<void(double, const Field&)>;
Trajectory evolve(const Field& u0, const EvolutionConfig& cfg, const StepObserver& observe);

/// (u0 - P_0 u0, P_0 u0).
std::pair<Field, double> mean_shift(const Field& u0);

/// Rebuilds u(t, x) = v(t, x + t m) + m from a mean-zero trajectory v.
Trajectory unshift(const Trajectory& v, double mean);

/// u(t, x) -> u(t, x + omega t) + omega.
Trajectory galilean_shift(const Trajectory& traj, double omega);

/// u(t, x) -> lambda^{-1} u(lambda^{-2} t, lambda^{-1} x) on the (2 pi lambda)-torus.
/// Integer lambda only.
Field dilate(const Field& f, double lambda);
Trajectory dilate(const Trajectory& traj, double lambda);

}  // namespace bolab
