#include <cmath>
#include <complex>

#include "bolab/bourgain.hpp"
#include "bolab/errors.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bolab;
using namespace testing;
using cd = std::complex<double>;

namespace {

WindowedField free_wave(const Grid& g, double xi0, double T, Index n_time) {
  return WindowedField::sample(g, T, n_time, [xi0](double t, double x) {
    return std::polar(1.0, xi0 * x - xi0 * std::abs(xi0) * t);
  });
}

WindowedField random_window(const Grid& g, double T, Index n_time, SplitMix64& rng) {
  Eigen::MatrixXcd s(n_time, g.size());
  for (Index j = 0; j < n_time; ++j)
    for (Index l = 0; l < g.size(); ++l) s(j, l) = cd(rng.normal(), rng.normal());
  Eigen::VectorXd psi(n_time);
  for (Index j = 0; j < n_time; ++j) psi(j) = window_cutoff(double(j) * T / double(n_time), T);
  return {g, T, s, psi, true};
}

WindowedField scaled(const WindowedField& w, cd c) {
  return {w.grid, w.duration, w.samples * c, w.cutoff, w.pad};
}

WindowedField sum(const WindowedField& a, const WindowedField& b) {
  return {a.grid, a.duration, a.samples + b.samples, a.cutoff, a.pad};
}

// Fraction of squared mass of the transform on cells satisfying pred(m, j).
template <class Pred>
double mass_fraction(const SpacetimeSpectrum& s, Pred pred) {
  double in = 0, all = 0;
  for (Index m = 0; m < s.coeffs.rows(); ++m)
    for (Index j = 0; j < s.coeffs.cols(); ++j) {
      const double a = std::norm(s.coeffs(m, j));
      all += a;
      if (pred(m, j)) in += a;
    }
  return in / all;
}

bool in_shell(std::int64_t a, std::int64_t M) { return M * M - 1 <= a * a && a * a < 4 * M * M - 1; }

// Direct enumeration over a tau1 range wide enough to contain both shells.
std::int64_t brute_alpha(std::int64_t tau, std::int64_t n, std::int64_t M1, std::int64_t M2, std::int64_t n_range) {
  std::int64_t count = 0;
  for (std::int64_t n1 = -n_range; n1 <= n_range; ++n1) {
    const std::int64_t centre = n1 * n1;
    for (std::int64_t tau1 = centre - 2 * M1; tau1 <= centre + 2 * M1; ++tau1)
      if (in_shell(tau1 - n1 * n1, M1) && in_shell(tau - tau1 - (n - n1) * (n - n1), M2)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("window cutoff") {
  CHECK(window_cutoff(0.0, 1.0) == 0.0);
  CHECK(window_cutoff(0.25, 1.0) == 1.0);
  CHECK(window_cutoff(0.5, 1.0) == 1.0);
  CHECK(window_cutoff(0.75, 1.0) == 1.0);
  for (double t = 0; t <= 1.0; t += 0.01) {
    CHECK(window_cutoff(t, 1.0) >= 0.0);
    CHECK(window_cutoff(t, 1.0) <= 1.0);
  }
  CHECK_THROWS_AS(WindowedField(Grid(1.0, 8), 1.0, Eigen::MatrixXcd::Zero(3, 8), Eigen::VectorXd::Ones(3), true),
                  ConfigError);
}

TEST_CASE("space-time transform") {
  const Grid g(1.0, 16);
  const double T = 2.0;
  const Index n_time = 64;

  const WindowedField zero = WindowedField::sample(g, T, n_time, [](double, double) { return cd(0); });
  CHECK(spacetime_transform(zero).coeffs.cwiseAbs().maxCoeff() == 0.0);

  const WindowedField flat = WindowedField::sample(g, T, n_time, [](double, double x) { return cd(std::cos(x)); });
  const SpacetimeSpectrum fs = spacetime_transform(flat);
  // The cutoff's transform keeps 94% of its mass within two padded lattice steps
  // and 99% within six, whatever T is.
  constexpr double kLeakSteps = 6;
  const double step = 2 * kPi / fs.padded_duration;
  CHECK(mass_fraction(fs, [&](Index m, Index) { return std::abs(fs.tau(m)) <= kLeakSteps * step + 1e-12; }) >= 0.99);

  const WindowedField wave = free_wave(g, 3.0, T, n_time);
  const SpacetimeSpectrum ws = spacetime_transform(wave);
  CHECK(mass_fraction(ws, [&](Index m, Index j) {
          return std::abs(ws.sigma(m, j, Phase::benjamin_ono)) <= kLeakSteps * step + 1e-12;
        }) >= 0.99);

  // Inverse transform recovers psi u on the first half of the padded window.
  const WindowedField back = to_windowed(fs);
  CHECK(back.n_time() == 2 * n_time);
  const Eigen::MatrixXcd diff = back.samples.topRows(n_time) - flat.weighted();
  CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("norm values") {
  const Grid g(1.0, 16);
  const WindowedField zero = WindowedField::sample(g, 1.0, 32, [](double, double) { return cd(0); });
  for (const NormSpec& n : {NormSpec::X(0.5, 1), NormSpec::Z(0, 1), NormSpec::Y(1), NormSpec::LpLq(2, 4)})
    CHECK(bourgain_norm(zero, n) == 0.0);
  CHECK_THROWS_AS(strichartz_ratio(zero), PreconditionError);

  SplitMix64 rng(3);
  const WindowedField r = random_window(g, 1.0, 32, rng);
  CHECK(bourgain_norm(r, NormSpec::X(0, 0)) == doctest::Approx(l2_norm(r)).epsilon(1e-12));

  const WindowedField one = WindowedField::sample(g, 1.0, 32, [](double, double) { return cd(1); });
  CHECK(lp_lq_norm(one, 2, 2) == doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-12));
  CHECK(lp_lq_norm(scaled(r, 3.0), 3, 5) == doctest::Approx(3 * lp_lq_norm(r, 3, 5)).epsilon(1e-12));
  CHECK_THROWS_AS(lp_lq_norm(r, 0.5, 2), PreconditionError);

  // sigma spreads over about 2 pi / T, so b-independence needs a long window.
  const WindowedField wave = free_wave(g, 1.0, 64.0, 512);
  const double x0 = bourgain_norm(wave, NormSpec::X(0, 0));
  for (double b : {0.25, 0.375, 0.5}) CHECK(std::abs(bourgain_norm(wave, NormSpec::X(b, 0)) / x0 - 1) <= 0.01);

  const double r0 = strichartz_ratio(free_wave(g, 1.0, 1.0, 64));
  MESSAGE("single-wave Strichartz ratio " << r0);
  CHECK(std::isfinite(r0));
  CHECK(r0 > 0);
}

TEST_CASE("norm axioms and monotonicity") {
  const Grid g(1.0, 16);
  SplitMix64 rng(11);
  const std::vector<NormSpec> specs{NormSpec::X(0.375, 0), NormSpec::X(0.5, 1), NormSpec::Z(0, 0.5),
                                    NormSpec::Y(0.25),     NormSpec::LpLq(4, 4), NormSpec::LpLq(2, 8)};
  for (int trial = 0; trial < 5; ++trial) {
    const WindowedField a = random_window(g, 1.0, 32, rng);
    const WindowedField b = random_window(g, 1.0, 32, rng);
    const cd c(-1.7, 0.4);
    for (const NormSpec& n : specs) {
      const double na = bourgain_norm(a, n);
      CHECK(std::abs(bourgain_norm(scaled(a, c), n) - std::abs(c) * na) <= 1e-10 * na);
      CHECK(bourgain_norm(sum(a, b), n) <= na + bourgain_norm(b, n) + 1e-10);
    }
    double prev = 0;
    for (double bb : {0.0, 0.25, 0.5, 0.75}) {
      const double v = bourgain_norm(a, NormSpec::X(bb, 0.5));
      CHECK(v >= prev);
      prev = v;
    }
    prev = 0;
    for (double s : {-1.0, 0.0, 0.5, 1.0}) {
      const double v = bourgain_norm(a, NormSpec::X(0.25, s));
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("time localization trend") {
  // ||v||_{X^{b,0}_T} / ||v||_{X^{1/2,0}_T} shrinks with T for b < 1/2.
  const Grid g(1.0, 16);
  for (double b : {0.0, 0.25, 0.375}) {
    double prev = 1e300;
    for (double T : {1.0, 0.5, 0.25, 0.125}) {
      const WindowedField w = free_wave(g, 2.0, T, 128);
      const double r = bourgain_norm(w, NormSpec::X(b, 0)) / bourgain_norm(w, NormSpec::X(0.5, 0));
      CHECK(r < prev);
      prev = r;
    }
  }
}

TEST_CASE("littlewood-paley on fields") {
  CHECK(lp_eta(0.0) == 0.0);
  double total_max = 0;
  for (double xi = 0.1; xi < 500; xi *= 1.07) {
    double total = 0;
    for (int k = -6; k < 12; ++k) total += lp_eta(std::ldexp(xi, -k));
    total_max = std::max(total_max, std::abs(total - 1));
  }
  CHECK(total_max < 1e-14);

  const Grid g(1.0, 256);
  SplitMix64 rng(21);
  const Field f = random_complex_field(g, 120, rng) + Field::constant(g, 4.0);
  const auto [lo, hi] = dyadic_range(g);
  Field acc = Field::zero(g);
  for (int k = lo; k <= hi; ++k) acc += littlewood_paley(f, k);
  CHECK(coeff_distance(acc, f - project(f, Projection::zero())) < 1e-12);

  const Field e5 = Field::mode(g, 5, 1.0);
  for (int k = 0; k < 5; ++k) CHECK(coeff_distance(littlewood_paley(e5, k), lp_eta(std::ldexp(5.0, -k)) * e5) < 1e-15);
}

TEST_CASE("modulation blocks") {
  const Grid g(1.0, 16);
  const Index n_time = 64;
  Eigen::MatrixXcd s(n_time, g.size());
  for (Index j = 0; j < n_time; ++j)
    for (Index l = 0; l < g.size(); ++l) {
      const double t = 2 * kPi * double(j) / double(n_time);
      s(j, l) = std::polar(1.0, 3.0 * g.node(l) + 9.0 * t);
    }
  const WindowedField w = WindowedField::periodic(g, 2 * kPi, s);
  const double total = l2_norm(w);
  const double low = l2_norm(littlewood_paley(w, 1.0, Phase::schrodinger));
  CHECK(low * low >= 0.99 * total * total);

  // Blocks partition the transform.
  SplitMix64 rng(4);
  const WindowedField r = random_window(g, 1.0, 32, rng);
  const SpacetimeSpectrum spec = spacetime_transform(r);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(spec.coeffs.rows(), spec.coeffs.cols());
  for (double M = 1; M < 1e4; M *= 2) acc += modulation_block(spec, M, Phase::benjamin_ono).coeffs;
  CHECK((acc - spec.coeffs).cwiseAbs().maxCoeff() < 1e-12 * spec.coeffs.cwiseAbs().maxCoeff());
}

TEST_CASE("bilinear block norm") {
  const Grid g(1.0, 16);
  const WindowedField zero = WindowedField::periodic(g, 2 * kPi, Eigen::MatrixXcd::Zero(32, 16));
  Eigen::MatrixXcd s(32, 16);
  for (Index j = 0; j < 32; ++j)
    for (Index l = 0; l < 16; ++l) s(j, l) = std::polar(1.0, g.node(l) + 2 * kPi * double(j) / 32);
  const WindowedField wave = WindowedField::periodic(g, 2 * kPi, s);
  CHECK_THROWS_AS(bilinear_block_norm(zero, wave), PreconditionError);
  CHECK_THROWS_AS(bilinear_block_norm(wave, zero), PreconditionError);
  const double r = bilinear_block_norm(wave, wave);
  MESSAGE("single-wave bilinear ratio " << r);
  // |e|^2 = 1, so ||v v|| / ||v||^2 = 1 / sqrt(measure of T^2)
  CHECK(r == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-12));
}

TEST_CASE("lattice counting") {
  CHECK(counting_alpha(0, 0, 1, 1, 0) == 3);
  CHECK(ModulationShell(1).size() == 3);
  CHECK(ModulationShell(1).contains(1));
  CHECK(!ModulationShell(1).contains(2));
  CHECK_THROWS_AS(ModulationShell(0), PreconditionError);
  CHECK_THROWS_AS(counting_alpha(0, 0, 1, 1, -1), PreconditionError);

  for (std::int64_t M1 : {1, 2, 4, 8})
    for (std::int64_t M2 : {1, 2, 4, 8}) CHECK(counting_alpha(0, 0, M1, M2, 6) == counting_alpha(0, 0, M2, M1, 6));

  for (std::int64_t a = -40; a <= 40; ++a)
    for (std::int64_t M : {1, 2, 4, 8}) {
      const double j = japanese(double(a));
      CHECK(ModulationShell(M).contains(a) == (j >= double(M) && j < 2.0 * double(M)));
    }

  SplitMix64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t M1 = std::int64_t(1) << rng.integer(0, 4);
    const std::int64_t M2 = std::int64_t(1) << rng.integer(0, 4);
    const std::int64_t n = rng.integer(-6, 6);
    const std::int64_t tau = rng.integer(-80, 80);
    CHECK(counting_alpha(tau, n, M1, M2, 6) == brute_alpha(tau, n, M1, M2, 6));
  }

  const CountingCell cell = counting_max(1, 1, 8);
  CHECK(cell.max_alpha == counting_alpha(cell.arg_tau, cell.arg_n, 1, 1, 8));
  CHECK(cell.bound == 1.0);
  const auto sweep = counting_sweep(8, 8);
  CHECK(sweep.size() == 10);
  for (const auto& c : sweep) {
    CHECK(c.M1 <= c.M2);
    CHECK(c.ratio == doctest::Approx(double(c.max_alpha) / c.bound));
  }
}
