#pragma once

#include <string>
#include <vector>

#include "bolab/evolution.hpp"

namespace bolab {

/// M(u) = int u^2 over one period.
double momentum(const Field& u);

/// (1/2) int |D^alpha u|^2 + cubic_sign (1/6) int u^3. The conserved functional
/// of u_t + d_x D^{2 alpha} u = u u_x has cubic_sign = -1.
double energy(const Field& u, int cubic_sign = -1, double alpha = 0.5);

/// int u^3, evaluated on a 3/2-padded grid so that it is exact for band-limited u.
double cubic_integral(const Field& u);

/// || <xi>^s hat{u} ||, normalized so that s = 0 gives the L^2_lambda norm.
double sobolev_norm(const Field& u, double s);

struct Quantity {
  enum class Kind { mean, momentum, energy, h_norm };
  Kind kind;
  double parameter = 0.0;  // cubic sign for energy, s for h_norm

  static Quantity mean() { return {Kind::mean}; }
  static Quantity momentum() { return {Kind::momentum}; }
  static Quantity energy(int cubic_sign = -1) { return {Kind::energy, double(cubic_sign)}; }
  static Quantity h_norm(double s) { return {Kind::h_norm, s}; }

  std::string name() const;
  double evaluate(const Field& u, double alpha) const;
};

/// Per-snapshot values of a quantity and their drift from t = 0.
/// Relative drift is |q(t) - q(0)| / |q(0)|, except for the mean, whose
/// natural value is often zero: there it is |q(t) - q(0)| / (1 + |q(0)|).
struct DriftReport {
  std::string quantity;
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> relative_drift;
  double max_relative_drift = 0.0;
};

DriftReport drift(const Trajectory& traj, const Quantity& q);

}  // namespace bolab
