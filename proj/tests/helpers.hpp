#pragma once

#include <cmath>

#include "bolab/random.hpp"
#include "bolab/spectral.hpp"

namespace testing {

using bolab::Field;
using bolab::Grid;
using bolab::Index;

inline constexpr double kPi = 3.14159265358979323846;

/// Largest coefficient gap, in units of the grid length (so 1 means one unit of amplitude).
inline double coeff_distance(const Field& a, const Field& b) {
  return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() / a.grid().length();
}

inline double rel_l2(const Field& a, const Field& ref) { return (a - ref).l2_norm() / ref.l2_norm(); }

/// Random real mean-zero field on modes 1..max_mode scaled to unit L^2 norm.
inline Field unit_random(const Grid& g, Index max_mode, bolab::SplitMix64& rng) {
  Field f = bolab::random_real_field(g, max_mode, rng);
  f *= 1.0 / f.l2_norm();
  return f;
}

inline Field cos_field(const Grid& g, Index k = 1, double a = 1.0) { return Field::trig(g, k, a, 0.0); }
inline Field sin_field(const Grid& g, Index k = 1, double b = 1.0) { return Field::trig(g, k, 0.0, b); }

}  // namespace testing
