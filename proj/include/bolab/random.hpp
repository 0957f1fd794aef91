#pragma once

// Reproducible random numbers for surveys and property tests.
//
// SplitMix64 (Steele, Lea & Flood 2014): 64-bit state, increment
// 0x9e3779b97f4a7c15, output mix 30/27/31 with the standard multipliers.
// Uniform doubles take the top 53 bits; normals use Box-Muller with the
// cosine branch only. Nothing here depends on std:: distribution internals,
// so streams are identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "bolab/spectral.hpp"

namespace bolab {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Independent stream for sample `id` of a survey seeded with `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t id) {
    SplitMix64 mixer(seed ^ (0xd1b54a32d192ed03ULL * (id + 1)));
    return SplitMix64(mixer.next());
  }

 private:
  std::uint64_t state_;
};

/// Real field with modes 1..max_mode (and their mirrors), Gaussian amplitudes
/// scaled by `amplitude` and damped by exp(-decay * k). Mean zero, Nyquist zero.
inline Field random_real_field(const Grid& grid, Index max_mode, SplitMix64& rng,
                               double amplitude = 1.0, double decay = 0.0) {
  if (2 * max_mode >= grid.size())
    throw ConfigError("random_real_field: max_mode must stay below Nyquist");
  Field f = Field::zero(grid);
  for (Index k = 1; k <= max_mode; ++k) {
    const double s = amplitude * std::exp(-decay * static_cast<double>(k));
    const double a = s * rng.normal();
    const double b = s * rng.normal();
    f += Field::trig(grid, k, a, b);
  }
  return f;
}

/// Complex field with random coefficients on |k| <= max_mode (Nyquist zero).
inline Field random_complex_field(const Grid& grid, Index max_mode, SplitMix64& rng) {
  if (2 * max_mode >= grid.size())
    throw ConfigError("random_complex_field: max_mode must stay below Nyquist");
  ComplexVector<double> c = ComplexVector<double>::Zero(grid.size());
  for (Index k = -max_mode; k <= max_mode; ++k)
    c(grid.index_of(k)) = std::complex<double>(rng.normal(), rng.normal()) * grid.length();
  return Field(grid, std::move(c), false);
}

}  // namespace bolab
