#pragma once

// Gauge chain for mean-zero real u:
//   F = d_x^{-1} u,  W = P_+(exp(-i F / 2)),  w = W_x.
// Residual checks of the F and w equations along trajectories, and the two
// reconstructions of u from (F, w).

#include <string>
#include <vector>

#include "bolab/evolution.hpp"

namespace bolab {

struct GaugeState {
  Field u;
  Field F;
  Field W;
  Field w;
  /// || w - (-i/2) P_+(exp(-iF/2) u) ||_2 measured when the state was built.
  double w_identity_residual = 0.0;
};

GaugeState build_gauge(const Field& u, double mean_tol = 1e-10);

enum class TimeDerivativeMode {
  exact,              // u_t substituted from the PDE and pushed through the chain
  finite_difference,  // centered, second order in the snapshot spacing
};

std::string to_string(TimeDerivativeMode mode);

struct ResidualSeries {
  TimeDerivativeMode mode;
  std::vector<double> times;
  std::vector<double> residuals;

  double max() const;
};

/// || F_t + H F_xx - F_x^2 / 2 + P_0(F_x^2) / 2 ||_2 per snapshot. Snapshots are
/// zero-padded to pad_factor * N modes before the chain is evaluated.
ResidualSeries f_equation_residual(const Trajectory& traj,
                                   TimeDerivativeMode mode = TimeDerivativeMode::exact,
                                   Index pad_factor = 2);

/// || w_t - i w_xx + d_x P_+(W P_-(u_x)) - (i/4) P_0(F_x^2) w ||_2 per snapshot.
ResidualSeries w_equation_residual(const Trajectory& traj,
                                   TimeDerivativeMode mode = TimeDerivativeMode::exact,
                                   Index pad_factor = 2);

/// 2i e^{iF/2} w + 2i e^{iF/2} d_x P_-(e^{-iF/2}); equals u.
Field reconstruct_u(const GaugeState& state);

/// The xi > 1 part: 2i P_{>1}(e^{iF/2} w) + 2i P_{>1}(P_{>1}(e^{iF/2}) d_x P_-(e^{-iF/2})),
/// with P_{>1} the one-sided projection on xi > 1.
Field reconstruct_high_modes_one_sided(const GaugeState& state);

/// The one-sided reconstruction completed by conjugate symmetry; equals
/// P_{|xi|>1} u for real u.
Field reconstruct_high_modes(const GaugeState& state);

}  // namespace bolab
