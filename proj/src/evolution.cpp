#include "bolab/evolution.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bolab {

namespace {

using Coeffs = ComplexVector<double>;
using C = std::complex<double>;

double integer_scale(double lambda) {
  const double r = std::round(lambda);
  if (!(lambda >= 1.0) || std::abs(lambda - r) > 1e-12) {
    std::ostringstream os;
    os << "dilate: scale " << lambda << " is not an integer >= 1";
    throw UnsupportedScaleError(os.str());
  }
  return r;
}

Coeffs linear_coeffs(const Grid& g, double alpha) {
  Coeffs L(g.size());
  for (Index j = 0; j < g.size(); ++j) L(j) = linear_symbol(g.frequency(j), alpha);
  L(g.nyquist()) = 0;
  return L;
}

void check_finite(const Field& u, double t) {
  const auto& c = u.coeffs();
  for (Index j = 0; j < c.size(); ++j) {
    if (!std::isfinite(c(j).real()) || !std::isfinite(c(j).imag()) || std::abs(c(j)) > 1e150) {
      std::ostringstream os;
      os << "evolve: solution diverged at t = " << t;
      throw DivergenceError(os.str(), t);
    }
  }
}

// phi-type functions of the ETDRK4 scheme, averaged over a circle of radius 1
// around each z = L h (Kassam & Trefethen 2005).
struct Etdrk4Coefficients {
  Coeffs E, E2, Q, f1, f2, f3;

  Etdrk4Coefficients(const Coeffs& L, double h) {
    constexpr int kContour = 32;
    const Index n = L.size();
    E.resize(n);
    E2.resize(n);
    Q.resize(n);
    f1.resize(n);
    f2.resize(n);
    f3.resize(n);
    for (Index j = 0; j < n; ++j) {
      const C z = L(j) * h;
      E(j) = std::exp(z);
      E2(j) = std::exp(z / 2.0);
      C q = 0, a = 0, b = 0, c = 0;
      for (int m = 0; m < kContour; ++m) {
        const double theta = 2.0 * std::numbers::pi * (m + 0.5) / kContour;
        const C r = z + std::exp(C(0, theta));
        const C er = std::exp(r);
        const C r2 = r * r, r3 = r2 * r;
        q += (std::exp(r / 2.0) - 1.0) / r;
        a += (-4.0 - r + er * (4.0 - 3.0 * r + r2)) / r3;
        b += (2.0 + r + er * (r - 2.0)) / r3;
        c += (-4.0 - 3.0 * r - r2 + er * (4.0 - r)) / r3;
      }
      Q(j) = h * q / double(kContour);
      f1(j) = h * a / double(kContour);
      f2(j) = h * b / double(kContour);
      f3(j) = h * c / double(kContour);
    }
  }
};

Field with_coeffs(const Field& like, Coeffs c) {
  Field f(like.grid(), std::move(c), true);
  enforce_conjugate_symmetry(f);
  return f;
}

}  // namespace

void EvolutionConfig::validate() const {
  if (!(alpha >= 0.0)) throw ConfigError("evolve: alpha must be >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("evolve: dt must be > 0");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigError("evolve: t_final must be >= 0");
  if (snapshot_stride < 1) throw ConfigError("evolve: snapshot_stride must be >= 1");
}

void EvolutionConfig::validate(const Field& u0) const {
  validate();
  if (!(u0.grid() == grid)) throw SizeError("evolve: initial data lives on a different grid");
  const double kmax = dealias == Dealias::two_thirds ? grid.size() / (3.0 * grid.lambda())
                                                     : grid.max_frequency();
  const double courant = effective_dt() * kmax * max_abs(u0);
  if (courant > kMaxCourant) {
    std::ostringstream os;
    os << "evolve: step too large, dt * k_max * max|u0| = " << courant << " exceeds "
       << kMaxCourant;
    throw ConfigError(os.str());
  }
}

Index EvolutionConfig::steps() const {
  if (t_final == 0.0) return 0;
  return static_cast<Index>(std::ceil(t_final / dt - 1e-9));
}

double EvolutionConfig::effective_dt() const {
  const Index n = steps();
  return n == 0 ? dt : t_final / static_cast<double>(n);
}

C linear_symbol(double xi, double alpha) {
  const double a = std::abs(xi);
  const double mag = a == 0.0 ? 0.0 : std::pow(a, 2.0 * alpha) * xi;
  return C(0, -mag);
}

Field free_propagate(const Field& f, double t, double alpha) {
  return apply_multiplier(f, [&](double xi) { return std::exp(linear_symbol(xi, alpha) * t); },
                          false);
}

Field nonlinear_term(const Field& u, Dealias rule, Nonlinearity form) {
  Field n = form == Nonlinearity::advective ? multiply(u, dx(u), rule)
                                            : 0.5 * dx(multiply(u, u, rule));
  n.coeffs()(0) = 0;
  return n;
}

Field time_derivative(const Field& u, double alpha, Dealias rule, Nonlinearity form) {
  Field lin = apply_multiplier(u, [&](double xi) { return linear_symbol(xi, alpha); }, true);
  return lin + nonlinear_term(u, rule, form);
}

Trajectory evolve(const Field& u0, const EvolutionConfig& cfg) { return evolve(u0, cfg, StepObserver{}); }

Trajectory evolve(const Field& u0, const EvolutionConfig& cfg, const StepObserver& observe) {
  cfg.validate(u0);
  if (!u0.is_real()) throw PreconditionError("evolve: initial data must be real-valued");

  Trajectory traj;
  traj.config = cfg;
  Field u = u0;
  enforce_conjugate_symmetry(u);
  traj.times.push_back(0.0);
  traj.states.push_back(u);

  const Index n_steps = cfg.steps();
  if (n_steps == 0) return traj;
  const double h = cfg.effective_dt();
  const Coeffs L = linear_coeffs(cfg.grid, cfg.alpha);
  auto N = [&](const Coeffs& c) {
    return nonlinear_term(with_coeffs(u, c), cfg.dealias, cfg.nonlinearity).coeffs();
  };

  if (cfg.integrator == Integrator::etdrk4) {
    const Etdrk4Coefficients k(L, h);
    for (Index step = 1; step <= n_steps; ++step) {
      const Coeffs& v = u.coeffs();
      const Coeffs Nv = N(v);
      const Coeffs a = k.E2.cwiseProduct(v) + k.Q.cwiseProduct(Nv);
      const Coeffs Na = N(a);
      const Coeffs b = k.E2.cwiseProduct(v) + k.Q.cwiseProduct(Na);
      const Coeffs Nb = N(b);
      const Coeffs c = k.E2.cwiseProduct(a) + k.Q.cwiseProduct(2.0 * Nb - Nv);
      const Coeffs Nc = N(c);
      Coeffs next = k.E.cwiseProduct(v) + k.f1.cwiseProduct(Nv) +
                    2.0 * k.f2.cwiseProduct(Na + Nb) + k.f3.cwiseProduct(Nc);
      u = with_coeffs(u, std::move(next));
      const double t = (step == n_steps) ? cfg.t_final : h * static_cast<double>(step);
      check_finite(u, t);
      if (observe) observe(t, u);
      if (step % cfg.snapshot_stride == 0 || step == n_steps) {
        traj.times.push_back(t);
        traj.states.push_back(u);
      }
    }
  } else {
    const Coeffs E = (L * h).array().exp().matrix();
    const Coeffs E2 = (L * (h / 2)).array().exp().matrix();
    for (Index step = 1; step <= n_steps; ++step) {
      const Coeffs& v = u.coeffs();
      const Coeffs k1 = N(v);
      const Coeffs k2 = N(E2.cwiseProduct(v + (h / 2) * k1));
      const Coeffs k3 = N(E2.cwiseProduct(v) + (h / 2) * k2);
      const Coeffs k4 = N(E.cwiseProduct(v) + h * E2.cwiseProduct(k3));
      Coeffs next = E.cwiseProduct(v) +
                    (h / 6) * (E.cwiseProduct(k1) + 2.0 * E2.cwiseProduct(k2 + k3) + k4);
      u = with_coeffs(u, std::move(next));
      const double t = (step == n_steps) ? cfg.t_final : h * static_cast<double>(step);
      check_finite(u, t);
      if (observe) observe(t, u);
      if (step % cfg.snapshot_stride == 0 || step == n_steps) {
        traj.times.push_back(t);
        traj.states.push_back(u);
      }
    }
  }
  return traj;
}

std::pair<Field, double> mean_shift(const Field& u0) {
  const double m = u0.mean();
  return {u0 - Field::constant(u0.grid(), m), m};
}

Trajectory unshift(const Trajectory& v, double mean) { return galilean_shift(v, mean); }

Trajectory galilean_shift(const Trajectory& traj, double omega) {
  Trajectory out = traj;
  for (std::size_t i = 0; i < out.size(); ++i) {
    Field s = translate(traj.states[i], omega * traj.times[i]);
    s += Field::constant(s.grid(), omega);
    s.set_real(traj.states[i].is_real());
    out.states[i] = std::move(s);
  }
  return out;
}

Field dilate(const Field& f, double lambda) {
  const double s = integer_scale(lambda);
  const Grid big(f.grid().lambda() * s, f.grid().size());
  // hat{u_lambda}(xi) = hat{u}(lambda xi): same coefficient at the same index.
  return Field(big, f.coeffs(), f.is_real());
}

Trajectory dilate(const Trajectory& traj, double lambda) {
  const double s = integer_scale(lambda);
  Trajectory out;
  out.config = traj.config;
  out.config.grid = Grid(traj.config.grid.lambda() * s, traj.config.grid.size());
  out.config.dt *= s * s;
  out.config.t_final *= s * s;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out.times.push_back(traj.times[i] * s * s);
    out.states.push_back(dilate(traj.states[i], s));
  }
  return out;
}

}  // namespace bolab
