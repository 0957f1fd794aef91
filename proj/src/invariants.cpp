#include "bolab/invariants.hpp"

#include <cmath>
#include <sstream>

namespace bolab {

double momentum(const Field& u) { return u.coeffs().squaredNorm() / u.grid().length(); }

double cubic_integral(const Field& u) {
  Index padded = (3 * u.grid().size() + 1) / 2;
  padded += padded % 2;
  const Field p = resample(u, padded);
  const RealVector<double> v = real_samples(p);
  return v.array().cube().sum() * p.grid().spacing();
}

double energy(const Field& u, int cubic_sign, double alpha) {
  if (cubic_sign != 1 && cubic_sign != -1) throw PreconditionError("energy: cubic_sign must be +-1");
  const Field d = frac_deriv(u, Derivative::D(alpha));
  return 0.5 * momentum(d) + cubic_sign * cubic_integral(u) / 6.0;
}

double sobolev_norm(const Field& u, double s) {
  const auto& g = u.grid();
  double acc = 0.0;
  for (Index j = 0; j < g.size(); ++j) {
    const double xi = g.frequency(j);
    acc += std::pow(1.0 + xi * xi, s) * std::norm(u.coeffs()(j));
  }
  return std::sqrt(acc / g.length());
}

std::string Quantity::name() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::mean: return "mean";
    case Kind::momentum: return "momentum";
    case Kind::energy: os << "energy(" << (parameter < 0 ? "-" : "+") << ")"; return os.str();
    case Kind::h_norm: os << "h_norm(" << parameter << ")"; return os.str();
  }
  return "unknown";
}

double Quantity::evaluate(const Field& u, double alpha) const {
  switch (kind) {
    case Kind::mean: return u.mean();
    case Kind::momentum: return bolab::momentum(u);
    case Kind::energy: return bolab::energy(u, parameter < 0 ? -1 : 1, alpha);
    case Kind::h_norm: return sobolev_norm(u, parameter);
  }
  return 0.0;
}

DriftReport drift(const Trajectory& traj, const Quantity& q) {
  if (traj.size() == 0) throw PreconditionError("drift: empty trajectory");
  DriftReport r;
  r.quantity = q.name();
  r.times = traj.times;
  for (const auto& s : traj.states) r.values.push_back(q.evaluate(s, traj.config.alpha));
  const double q0 = r.values.front();
  const double scale = q.kind == Quantity::Kind::mean ? 1.0 + std::abs(q0) : std::abs(q0);
  for (double v : r.values) {
    const double diff = std::abs(v - q0);
    const double rel = scale > 0.0 ? diff / scale : diff;
    r.relative_drift.push_back(rel);
    r.max_relative_drift = std::max(r.max_relative_drift, rel);
  }
  return r;
}

}  // namespace bolab
