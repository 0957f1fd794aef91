#include <cmath>
#include <complex>

#include "doctest.h"
#include "helpers.hpp"

using namespace bolab;
using namespace testing;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid(0.5, 64), ConfigError);
  CHECK_THROWS_AS(Grid(1.0, 63), ConfigError);
  CHECK_THROWS_AS(Grid(1.0, 4), ConfigError);
  const Grid g(2.0, 16);
  CHECK(g.length() == doctest::Approx(4 * kPi));
  CHECK(g.frequency(g.index_of(-3)) == doctest::Approx(-1.5));
}

TEST_CASE("transform conventions") {
  const Grid g(1.0, 8);
  SUBCASE("constant one has hat(0) = 2 pi") {
    const Field f = to_spectral(g, RealVector<double>::Ones(8));
    CHECK(std::abs(f.at(0) - 2 * kPi) < 1e-13);
    for (Index k = 1; k < 4; ++k) {
      CHECK(std::abs(f.at(k)) < 1e-13);
      CHECK(std::abs(f.at(-k)) < 1e-13);
    }
  }
  SUBCASE("cos x has hat(+-1) = pi") {
    RealVector<double> s(8);
    for (Index j = 0; j < 8; ++j) s(j) = std::cos(g.node(j));
    const Field f = to_spectral(g, s);
    CHECK(std::abs(f.at(1) - kPi) < 1e-13);
    CHECK(std::abs(f.at(-1) - kPi) < 1e-13);
  }
  SUBCASE("random real round trip") {
    SplitMix64 rng(11);
    const Grid h(3.0, 128);
    RealVector<double> s(128);
    for (Index j = 0; j < 128; ++j) s(j) = rng.normal();
    const RealVector<double> back = real_samples(to_spectral(h, s));
    CHECK((back - s).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("projections") {
  const Grid g(1.0, 32);
  const Field two_plus_sin = Field::constant(g, 2.0) + sin_field(g);
  CHECK(coeff_distance(project(two_plus_sin, Projection::zero()), Field::constant(g, 2.0)) < 1e-15);
  CHECK(coeff_distance(project(cos_field(g), Projection::plus()), Field::mode(g, 1, 0.5)) < 1e-15);

  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = random_complex_field(g, 15, rng);
    const Field sum = project(f, Projection::plus()) + project(f, Projection::minus()) +
                      project(f, Projection::zero());
    CHECK(sum.coeffs() == f.coeffs());
  }
  const Field f = random_real_field(g, 10, rng);
  CHECK(coeff_distance(project(f, Projection::leq(3)) + project(f, Projection::gt(3)), f) == 0.0);
  CHECK_THROWS_AS(Projection::gt(-1), PreconditionError);
}

TEST_CASE("hilbert transform") {
  const Grid g(1.0, 32);
  CHECK(coeff_distance(hilbert(cos_field(g)), sin_field(g)) < 1e-15);
  CHECK(coeff_distance(hilbert(sin_field(g)), -cos_field(g)) < 1e-15);
  CHECK(hilbert(Field::constant(g, 3.0)).l2_norm() == 0.0);
}

TEST_CASE("derivatives") {
  const Grid g(1.0, 32);
  const Field e4 = Field::mode(g, 4, 1.0);
  CHECK(coeff_distance(frac_deriv(e4, Derivative::D(0.5)), 2.0 * e4) < 1e-14);
  SplitMix64 rng(5);
  Field f = random_complex_field(g, 15, rng);
  f.coeffs()(16) = 3.0;  // Nyquist slot, which J^s must keep
  CHECK(frac_deriv(f, Derivative::J(0)).coeffs() == f.coeffs());
  CHECK(coeff_distance(dx(sin_field(g)), cos_field(g)) < 1e-15);
}

TEST_CASE("antiderivative") {
  const Grid g(1.0, 64);
  CHECK(coeff_distance(antiderivative(cos_field(g)), sin_field(g)) < 1e-15);
  SplitMix64 rng(9);
  const Field u = random_real_field(g, 20, rng);
  CHECK(coeff_distance(dx(antiderivative(u)), u) < 1e-13);
  const Field shifted = u + Field::constant(g, 2.0);
  try {
    antiderivative(shifted);
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("products and dealiasing") {
  const Grid g(1.0, 64);
  const Field c = cos_field(g);
  const Field expected = Field::constant(g, 0.5) + cos_field(g, 2, 0.5);
  CHECK(coeff_distance(multiply(c, c), expected) < 1e-14);
  CHECK(multiply(c, Field::zero(g)).l2_norm() == 0.0);
  const Field eK = Field::mode(g, 20, 1.0);  // 2K = 40 > N/3
  CHECK(multiply(eK, eK).l2_norm() < 1e-14);
  CHECK(multiply(eK, eK, Dealias::none).l2_norm() > 0.1);
}

TEST_CASE("gauge exponential") {
  const Grid g(1.0, 64);
  CHECK(coeff_distance(gauge_exponential(Field::zero(g), 1), Field::constant(g, 1.0)) < 1e-15);

  // Independent quadrature of int e^{-i sin(x)/2} e^{-ix} dx, compared with 2 pi J_1(-1/2).
  const int n = 4096;
  std::complex<double> quad = 0;
  for (int j = 0; j < n; ++j) {
    const double x = 2 * kPi * j / n;
    quad += std::exp(std::complex<double>(0, -0.5 * std::sin(x) - x));
  }
  quad *= 2 * kPi / n;
  const double bessel = -std::cyl_bessel_j(1.0, 0.5);
  CHECK(std::abs(quad - 2 * kPi * bessel) < 1e-13);
  CHECK(bessel == doctest::Approx(-0.242268).epsilon(1e-6));
  const Field E = gauge_exponential(sin_field(g), 1);
  CHECK(std::abs(E.at(1) - quad) < 1e-12);

  SplitMix64 rng(21);
  const Field F = random_real_field(g, 10, rng);
  const ComplexVector<double> v = from_spectral(gauge_exponential(F, 1));
  CHECK((v.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("operator identities on random fields") {
  const Grid g(1.0, 128);
  SplitMix64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Field f = random_real_field(g, 63, rng);
    worst = std::max(worst, coeff_distance(hilbert(hilbert(f)), -f));
    worst = std::max(worst, coeff_distance(hilbert(dx(f)), frac_deriv(f, Derivative::D(1))));
    worst = std::max(worst, coeff_distance(antiderivative(dx(f)), f - project(f, Projection::zero())));
    CHECK(conjugate_symmetry_defect(hilbert(f)) == 0.0);
    CHECK(conjugate_symmetry_defect(multiply(f, f)) < 1e-12 * f.grid().length());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("translate and resample") {
  const Grid g(1.0, 32);
  CHECK(coeff_distance(translate(sin_field(g), kPi / 2), cos_field(g)) < 1e-14);
  SplitMix64 rng(4);
  const Field f = random_real_field(g, 10, rng);
  const Field up = resample(f, 128);
  CHECK(std::abs(up.l2_norm() - f.l2_norm()) < 1e-13);
  CHECK(coeff_distance(resample(up, 32), f) < 1e-14);
}

TEST_CASE("single precision instantiation") {
  const PeriodicGrid<float> g(1.0f, 16);
  const auto f = SpectralField<float>::trig(g, 1, 1.0f, 0.0f);
  const auto h = hilbert(f);
  CHECK(std::abs(h.at(1) - std::complex<float>(0, -kPi)) < 1e-5f);
}
