#include <cmath>

#include "bolab/evolution.hpp"
#include "bolab/gauge.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bolab;
using namespace testing;

namespace {

Trajectory run(const Field& u0, double T, double dt, Index stride) {
  EvolutionConfig c;
  c.grid = u0.grid();
  c.t_final = T;
  c.dt = dt;
  c.snapshot_stride = stride;
  return evolve(u0, c);
}

}  // namespace

TEST_CASE("gauge state") {
  const Grid g(1.0, 128);
  const GaugeState zero = build_gauge(Field::zero(g));
  CHECK(zero.F.l2_norm() == 0.0);
  CHECK(zero.W.l2_norm() == 0.0);
  CHECK(zero.w.l2_norm() == 0.0);

  const GaugeState s = build_gauge(cos_field(g));
  CHECK(coeff_distance(s.F, sin_field(g)) < 1e-15);
  // exp(-i sin(x) / 2) = sum_n J_n(-1/2) e^{inx}, and J_n(-z) = (-1)^n J_n(z)
  for (Index n = 1; n < 10; ++n) {
    const double jn = std::pow(-1.0, double(n)) * std::cyl_bessel_j(double(n), 0.5);
    CHECK(std::abs(s.W.at(n) - 2 * kPi * jn) < 1e-12);
  }
  for (Index j = 0; j < g.size(); ++j)
    if (g.wavenumber(j) <= 0) CHECK(s.W.coeffs()(j) == std::complex<double>(0));
  CHECK(coeff_distance(s.w, dx(s.W)) == 0.0);
  CHECK_THROWS_AS(build_gauge(cos_field(g) + Field::constant(g, 1.0)), PreconditionError);

  SplitMix64 rng(12);
  const Grid fine(1.0, 256);
  const GaugeState r = build_gauge(unit_random(fine, 32, rng));
  CHECK(r.w_identity_residual < 1e-10);
}

TEST_CASE("reconstructions") {
  const Grid g(1.0, 256);
  CHECK(reconstruct_u(build_gauge(Field::zero(g))).l2_norm() == 0.0);
  CHECK(reconstruct_high_modes(build_gauge(Field::zero(g))).l2_norm() == 0.0);

  const Field c = cos_field(g);
  CHECK(rel_l2(reconstruct_u(build_gauge(c)), c) < 1e-10);
  CHECK(reconstruct_high_modes(build_gauge(c)).l2_norm() < 1e-10);

  SplitMix64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const Field u = unit_random(g, 8, rng);
    const GaugeState s = build_gauge(u);
    CHECK(rel_l2(reconstruct_u(s), u) < 1e-10);
    CHECK(rel_l2(reconstruct_high_modes(s), project(u, Projection::gt(1.0))) < 1e-10);
  }
}

TEST_CASE("one-sided reading of the high-mode identity") {
  const Grid g(1.0, 256);
  SplitMix64 rng(5);
  const Field u = unit_random(g, 8, rng);
  const Field one_sided = reconstruct_high_modes_one_sided(build_gauge(u));
  CHECK(rel_l2(one_sided, project(u, Projection::above(1.0))) < 1e-10);
}

TEST_CASE("equation residuals, exact mode") {
  const Grid g(1.0, 256);
  const Trajectory zero = run(Field::zero(g), 0.01, 1e-3, 1);
  CHECK(f_equation_residual(zero).max() == 0.0);
  CHECK(w_equation_residual(zero).max() == 0.0);

  const Trajectory tr = run(cos_field(g), 1.0, 1e-3, 50);
  CHECK(f_equation_residual(tr).max() < 1e-6);
  CHECK(w_equation_residual(tr).max() < 1e-6);

  Trajectory two = tr;
  two.times.erase(two.times.begin() + 2, two.times.end());
  two.states.erase(two.states.begin() + 2, two.states.end());
  CHECK_THROWS_AS(f_equation_residual(two), InsufficientDataError);
  CHECK_THROWS_AS(w_equation_residual(two), InsufficientDataError);
}

TEST_CASE("finite difference residuals are second order") {
  const Grid g(1.0, 256);
  SplitMix64 rng(1);
  const Field u0 = unit_random(g, 32, rng);
  double prev_f = 0, prev_w = 0;
  for (Index stride : {4, 2, 1}) {
    const Trajectory tr = run(u0, 0.016, 2.5e-4, stride);
    const double f = f_equation_residual(tr, TimeDerivativeMode::finite_difference).max();
    const double w = w_equation_residual(tr, TimeDerivativeMode::finite_difference).max();
    if (prev_f > 0) {
      CHECK(prev_f / f == doctest::Approx(4.0).epsilon(0.15));
      CHECK(prev_w / w == doctest::Approx(4.0).epsilon(0.15));
    }
    prev_f = f;
    prev_w = w;
  }
}

TEST_CASE("gauge exponential is Lipschitz from L2 to sup norm") {
  SplitMix64 rng(99);
  double worst = 0;
  for (double lambda : {1.0, 2.0, 4.0}) {
    const Grid g(lambda, 256);
    for (int trial = 0; trial < 20; ++trial) {
      const Field u1 = unit_random(g, 30, rng);
      Field du = random_real_field(g, 30, rng);
      du *= 1e-3 * (1 + trial) / du.l2_norm();
      const Field u2 = u1 + du;
      const auto e1 = from_spectral(gauge_exponential(antiderivative(u1), 1));
      const auto e2 = from_spectral(gauge_exponential(antiderivative(u2), 1));
      const double sup = (e1 - e2).cwiseAbs().maxCoeff();
      worst = std::max(worst, sup / (std::sqrt(lambda) * du.l2_norm()));
    }
  }
  MESSAGE("observed Lipschitz constant " << worst);
  CHECK(worst <= 1.0);
}
