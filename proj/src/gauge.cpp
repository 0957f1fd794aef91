#include "bolab/gauge.hpp"

#include "bolab/errors.hpp"

#include <algorithm>
#include <functional>

namespace bolab {

namespace {

using C = std::complex<double>;

const C kHalfI(0, 0.5);

Field times_i(const Field& f, double s) { return C(0, s) * f; }

// Centered derivative on a possibly nonuniform stencil t_{j-1} < t_j < t_{j+1}.
Field centered_derivative(const Field& prev, const Field& mid, const Field& next, double hm,
                          double hp) {
  const double denom = hm * hp * (hm + hp);
  Field d = (hm * hm / denom) * next - (hp * hp / denom) * prev;
  d += ((hp * hp - hm * hm) / denom) * mid;
  return d;
}

template <typename Chain, typename Residual>
ResidualSeries residual_series(const Trajectory& traj, TimeDerivativeMode mode, Index pad_factor,
                               Chain chain, Residual residual) {
  if (traj.size() < 3)
    throw InsufficientDataError("gauge residual: need at least 3 snapshots");
  if (pad_factor < 1) throw PreconditionError("gauge residual: pad_factor must be >= 1");
  ResidualSeries out{mode, {}, {}};
  // Products of the chain are collocated on a grid pad_factor times finer, so
  // that they are resolved for the band-limited snapshots.
  std::vector<Field> states;
  states.reserve(traj.size());
  for (const auto& u : traj.states) states.push_back(resample(u, u.grid().size() * pad_factor));
  using Value = decltype(chain(states[0]));
  std::vector<Value> values;
  values.reserve(states.size());
  for (const auto& u : states) values.push_back(chain(u));

  if (mode == TimeDerivativeMode::exact) {
    for (std::size_t j = 0; j < traj.size(); ++j) {
      out.times.push_back(traj.times[j]);
      out.residuals.push_back(residual(states[j], values[j], nullptr));
    }
  } else {
    for (std::size_t j = 1; j + 1 < traj.size(); ++j) {
      const double hm = traj.times[j] - traj.times[j - 1];
      const double hp = traj.times[j + 1] - traj.times[j];
      const Field dt = centered_derivative(values[j - 1].primary(), values[j].primary(),
                                           values[j + 1].primary(), hm, hp);
      out.times.push_back(traj.times[j]);
      out.residuals.push_back(residual(states[j], values[j], &dt));
    }
  }
  return out;
}

struct FChain {
  Field F;
  const Field& primary() const { return F; }
};

struct WChain {
  Field F, E, W, w;
  const Field& primary() const { return w; }
};

WChain w_chain(const Field& u) {
  Field F = antiderivative(u);
  Field E = gauge_exponential(F, 1);
  Field W = project(E, Projection::plus());
  Field w = dx(W);
  return {std::move(F), std::move(E), std::move(W), std::move(w)};
}

}  // namespace

std::string to_string(TimeDerivativeMode mode) {
  return mode == TimeDerivativeMode::exact ? "exact" : "finite_difference";
}

double ResidualSeries::max() const {
  return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

GaugeState build_gauge(const Field& u, double mean_tol) {
  if (!u.is_real()) throw PreconditionError("build_gauge: u must be real-valued");
  GaugeState s{u, antiderivative(u, mean_tol), Field::zero(u.grid()), Field::zero(u.grid()), 0.0};
  const Field E = gauge_exponential(s.F, 1);
  s.W = project(E, Projection::plus());
  s.w = dx(s.W);
  const Field alt = -kHalfI * project(multiply(E, u, Dealias::none), Projection::plus());
  s.w_identity_residual = (s.w - alt).l2_norm();
  return s;
}

ResidualSeries f_equation_residual(const Trajectory& traj, TimeDerivativeMode mode, Index pad_factor) {
  const double alpha = traj.config.alpha;
  auto chain = [](const Field& u) { return FChain{antiderivative(u)}; };
  auto residual = [&](const Field& u, const FChain& c, const Field* Ft_fd) {
    const Field Ft = Ft_fd ? *Ft_fd : antiderivative(time_derivative(u, alpha, Dealias::none));
    const Field Fx = dx(c.F);
    const Field Fx2 = multiply(Fx, Fx, Dealias::none);
    Field r = Ft + hilbert(dx(Fx));
    r -= 0.5 * Fx2;
    r += 0.5 * project(Fx2, Projection::zero());
    return r.l2_norm();
  };
  return residual_series(traj, mode, pad_factor, chain, residual);
}

ResidualSeries w_equation_residual(const Trajectory& traj, TimeDerivativeMode mode, Index pad_factor) {
  const double alpha = traj.config.alpha;
  auto residual = [&](const Field& u, const WChain& c, const Field* wt_fd) {
    Field wt = Field::zero(u.grid());
    if (wt_fd) {
      wt = *wt_fd;
    } else {
      const Field Ft = antiderivative(time_derivative(u, alpha, Dealias::none));
      const Field Et = -kHalfI * multiply(c.E, Ft, Dealias::none);
      wt = dx(project(Et, Projection::plus()));
    }
    const Field Fx = dx(c.F);
    const double zero_mode = multiply(Fx, Fx, Dealias::none).mean();
    const Field ux_minus = project(dx(u), Projection::minus());
    Field r = wt - times_i(dx(dx(c.w)), 1.0);
    r += dx(project(multiply(c.W, ux_minus, Dealias::none), Projection::plus()));
    r -= times_i(c.w, 0.25 * zero_mode);
    return r.l2_norm();
  };
  return residual_series(traj, mode, pad_factor, w_chain, residual);
}

Field reconstruct_u(const GaugeState& s) {
  const Field Ep = gauge_exponential(s.F, -1);
  const Field Em = gauge_exponential(s.F, 1);
  Field r = multiply(Ep, s.w, Dealias::none);
  r += multiply(Ep, dx(project(Em, Projection::minus())), Dealias::none);
  return times_i(r, 2.0);
}

Field reconstruct_high_modes_one_sided(const GaugeState& s) {
  const auto high = Projection::above(1.0);
  const Field Ep = gauge_exponential(s.F, -1);
  const Field Em = gauge_exponential(s.F, 1);
  Field r = project(multiply(Ep, s.w, Dealias::none), high);
  r += project(multiply(project(Ep, high), dx(project(Em, Projection::minus())), Dealias::none),
               high);
  return times_i(r, 2.0);
}

Field reconstruct_high_modes(const GaugeState& s) {
  Field r = reconstruct_high_modes_one_sided(s);
  auto& c = r.coeffs();
  const auto& g = r.grid();
  for (Index k = 1; k < g.size() / 2; ++k) c(g.index_of(-k)) = std::conj(c(g.index_of(k)));
  c(g.nyquist()) = 0;
  r.set_real(true);
  return r;
}

}  // namespace bolab
