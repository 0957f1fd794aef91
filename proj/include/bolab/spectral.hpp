#pragma once

// Fourier-side representation of (2*pi*lambda)-periodic functions and the
// multiplier toolbox built on it.
//
// Conventions
//   - frequencies live on the lattice k/lambda, k in [-N/2, N/2);
//     coefficients are stored in FFT order (index j <-> k = j for j < N/2,
//     k = j - N otherwise), so index N/2 is the Nyquist mode k = -N/2.
//   - hat{u}(xi) = int_0^{2 pi lambda} exp(-i xi x) u(x) dx, and
//     u(x) = (1 / (2 pi lambda)) sum_xi hat{u}(xi) exp(i xi x).
//   - odd multipliers (d/dx, Hilbert, |xi|^a with a > 0, 1/(i xi)) annihilate
//     the Nyquist mode, whose sign is ambiguous.

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <utility>

#include "bolab/errors.hpp"

namespace bolab {

using Index = Eigen::Index;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
class PeriodicGrid {
 public:
  PeriodicGrid(Scalar lambda, Index n_modes) : lambda_(lambda), n_(n_modes) {
    if (!(lambda >= Scalar(1)) || !std::isfinite(static_cast<double>(lambda)))
      throw ConfigError("PeriodicGrid: lambda must be >= 1");
    if (n_modes < 8 || n_modes % 2 != 0)
      throw ConfigError("PeriodicGrid: n_modes must be even and >= 8");
  }

  Scalar lambda() const { return lambda_; }
  Index size() const { return n_; }
  Scalar length() const { return Scalar(2) * std::numbers::pi_v<Scalar> * lambda_; }
  Scalar spacing() const { return length() / Scalar(n_); }
  Scalar node(Index j) const { return spacing() * Scalar(j); }

  Index wavenumber(Index j) const { return j < n_ / 2 ? j : j - n_; }
  Scalar frequency(Index j) const { return Scalar(wavenumber(j)) / lambda_; }
  Index index_of(Index k) const { return k >= 0 ? k : k + n_; }
  Index nyquist() const { return n_ / 2; }
  Scalar max_frequency() const { return Scalar(n_ / 2) / lambda_; }

  friend bool operator==(const PeriodicGrid& a, const PeriodicGrid& b) {
    return a.lambda_ == b.lambda_ && a.n_ == b.n_;
  }

 private:
  Scalar lambda_;
  Index n_;
};

template <typename Scalar>
class SpectralField {
 public:
  using Grid = PeriodicGrid<Scalar>;
  using Complex = std::complex<Scalar>;
  using Coeffs = ComplexVector<Scalar>;

  SpectralField(Grid grid, Coeffs coeffs, bool real)
      : grid_(std::move(grid)), coeffs_(std::move(coeffs)), real_(real) {
    if (coeffs_.size() != grid_.size())
      throw SizeError("SpectralField: coefficient count does not match the grid");
  }

  static SpectralField zero(const Grid& grid) {
    return SpectralField(grid, Coeffs::Zero(grid.size()), true);
  }

  /// The constant function c.
  static SpectralField constant(const Grid& grid, Scalar c) {
    Coeffs a = Coeffs::Zero(grid.size());
    a(0) = Complex(c * grid.length(), 0);
    return SpectralField(grid, std::move(a), true);
  }

  /// amplitude * exp(i k x / lambda); complex-valued unless k == 0.
  static SpectralField mode(const Grid& grid, Index k, Complex amplitude) {
    Coeffs a = Coeffs::Zero(grid.size());
    a(grid.index_of(k)) = amplitude * grid.length();
    return SpectralField(grid, std::move(a), k == 0 && amplitude.imag() == Scalar(0));
  }

  /// a cos(k x / lambda) + b sin(k x / lambda).
  static SpectralField trig(const Grid& grid, Index k, Scalar a, Scalar b) {
    Coeffs c = Coeffs::Zero(grid.size());
    const Scalar len = grid.length();
    if (k == 0) {
      c(0) = Complex(a * len, 0);
    } else {
      c(grid.index_of(k)) += Complex(a, -b) * (len / 2);
      c(grid.index_of(-k)) += Complex(a, b) * (len / 2);
    }
    return SpectralField(grid, std::move(c), true);
  }

  const Grid& grid() const { return grid_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Coeffs& coeffs() { return coeffs_; }
  bool is_real() const { return real_; }
  void set_real(bool real) { real_ = real; }

  /// Coefficient at wavenumber k (xi = k / lambda).
  Complex at(Index k) const { return coeffs_(grid_.index_of(k)); }

  /// Mean value P_0 u = hat{u}(0) / (2 pi lambda).
  Scalar mean() const { return coeffs_(0).real() / grid_.length(); }

  /// L^2_lambda norm by Parseval.
  Scalar l2_norm() const { return std::sqrt(coeffs_.squaredNorm() / grid_.length()); }

  SpectralField& operator+=(const SpectralField& o) {
    require_same_grid(o);
    coeffs_ += o.coeffs_;
    real_ = real_ && o.real_;
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    require_same_grid(o);
    coeffs_ -= o.coeffs_;
    real_ = real_ && o.real_;
    return *this;
  }
  SpectralField& operator*=(Scalar s) {
    coeffs_ *= s;
    return *this;
  }
  SpectralField& operator*=(Complex s) {
    coeffs_ *= s;
    real_ = real_ && s.imag() == Scalar(0);
    return *this;
  }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(Scalar s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, Scalar s) { return a *= s; }
  friend SpectralField operator*(Complex s, SpectralField a) { return a *= s; }
  friend SpectralField operator-(SpectralField a) {
    a.coeffs_ = -a.coeffs_;
    return a;
  }

  void require_same_grid(const SpectralField& o) const {
    if (!(grid_ == o.grid_)) throw SizeError("SpectralField: grid mismatch");
  }

 private:
  Grid grid_;
  Coeffs coeffs_;
  bool real_;
};

using Grid = PeriodicGrid<double>;
using Field = SpectralField<double>;

namespace detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  thread_local Eigen::FFT<Scalar> engine;
  return engine;
}

template <typename Scalar>
Scalar sign(Scalar x) {
  return Scalar((x > 0) - (x < 0));
}

}  // namespace detail

/// Overwrites c(-k) with conj(c(k)) averages so the coefficients describe a
/// real function exactly; zero and Nyquist modes get real values.
template <typename Scalar>
void enforce_conjugate_symmetry(SpectralField<Scalar>& f) {
  auto& c = f.coeffs();
  const Index n = c.size();
  c(0) = std::complex<Scalar>(c(0).real(), 0);
  c(n / 2) = std::complex<Scalar>(c(n / 2).real(), 0);
  for (Index j = 1; j < n / 2; ++j) {
    const auto avg = (c(j) + std::conj(c(n - j))) / Scalar(2);
    c(j) = avg;
    c(n - j) = std::conj(avg);
  }
  f.set_real(true);
}

template <typename Scalar>
Scalar conjugate_symmetry_defect(const SpectralField<Scalar>& f) {
  const auto& c = f.coeffs();
  const Index n = c.size();
  Scalar defect = std::max(std::abs(c(0).imag()), std::abs(c(n / 2).imag()));
  for (Index j = 1; j < n / 2; ++j) defect = std::max(defect, std::abs(c(j) - std::conj(c(n - j))));
  return defect;
}

template <typename Scalar, typename Derived>
SpectralField<Scalar> to_spectral(const PeriodicGrid<Scalar>& grid,
                                  const Eigen::MatrixBase<Derived>& samples) {
  if (samples.size() != grid.size()) {
    std::ostringstream os;
    os << "to_spectral: expected " << grid.size() << " samples, got " << samples.size();
    throw SizeError(os.str());
  }
  using Complex = std::complex<Scalar>;
  constexpr bool real_input = !Eigen::NumTraits<typename Derived::Scalar>::IsComplex;
  ComplexVector<Scalar> in = samples.template cast<Complex>();
  ComplexVector<Scalar> out(grid.size());
  detail::fft_engine<Scalar>().fwd(out, in);
  out *= grid.spacing();
  SpectralField<Scalar> f(grid, std::move(out), real_input);
  if constexpr (real_input) enforce_conjugate_symmetry(f);
  return f;
}

/// Collocation values u(x_j), x_j = j * 2 pi lambda / N.
template <typename Scalar>
ComplexVector<Scalar> from_spectral(const SpectralField<Scalar>& f) {
  ComplexVector<Scalar> in = f.coeffs();
  ComplexVector<Scalar> out(in.size());
  detail::fft_engine<Scalar>().inv(out, in);
  out *= Scalar(in.size()) / f.grid().length();
  return out;
}

template <typename Scalar>
RealVector<Scalar> real_samples(const SpectralField<Scalar>& f) {
  return from_spectral(f).real();
}

/// Frequency projections. `above` is the one-sided projection on xi > a.
struct Projection {
  enum class Kind { plus, minus, zero, leq, gt, above };
  Kind kind;
  double cutoff = 0.0;

  static Projection plus() { return {Kind::plus}; }
  static Projection minus() { return {Kind::minus}; }
  static Projection zero() { return {Kind::zero}; }
  static Projection leq(double a) { return {Kind::leq, checked(a)}; }
  static Projection gt(double a) { return {Kind::gt, checked(a)}; }
  static Projection above(double a) { return {Kind::above, checked(a)}; }

  template <typename Scalar>
  bool keeps(Index k, Scalar lambda) const {
    // Compare on the integer lattice to avoid rounding in k / lambda.
    const double bound = cutoff * static_cast<double>(lambda);
    const double ak = std::abs(static_cast<double>(k));
    constexpr double slack = 1e-9;
    switch (kind) {
      case Kind::plus: return k > 0;
      case Kind::minus: return k < 0;
      case Kind::zero: return k == 0;
      case Kind::leq: return ak <= bound + slack;
      case Kind::gt: return ak > bound + slack;
      case Kind::above: return static_cast<double>(k) > bound + slack;
    }
    return false;
  }

 private:
  static double checked(double a) {
    if (!(a >= 0.0)) throw PreconditionError("Projection: cutoff must be >= 0");
    return a;
  }
};

template <typename Scalar>
SpectralField<Scalar> project(const SpectralField<Scalar>& f, const Projection& p) {
  SpectralField<Scalar> out = f;
  auto& c = out.coeffs();
  const auto& g = f.grid();
  for (Index j = 0; j < c.size(); ++j)
    if (!p.keeps(g.wavenumber(j), g.lambda())) c(j) = 0;
  const bool symmetric = p.kind == Projection::Kind::zero || p.kind == Projection::Kind::leq ||
                         p.kind == Projection::Kind::gt;
  out.set_real(f.is_real() && symmetric);
  return out;
}

/// Coefficient-wise multiplier m(xi). `odd` multipliers are zeroed at Nyquist.
/// m must satisfy m(-xi) = conj(m(xi)) for the output to keep the real flag.
template <typename Scalar, typename Multiplier>
SpectralField<Scalar> apply_multiplier(const SpectralField<Scalar>& f, Multiplier&& m, bool odd) {
  SpectralField<Scalar> out = f;
  auto& c = out.coeffs();
  const auto& g = f.grid();
  for (Index j = 0; j < c.size(); ++j) c(j) *= m(g.frequency(j));
  if (odd) c(g.nyquist()) = 0;
  return out;
}

template <typename Scalar>
SpectralField<Scalar> hilbert(const SpectralField<Scalar>& f) {
  using C = std::complex<Scalar>;
  return apply_multiplier(f, [](Scalar xi) { return C(0, -detail::sign(xi)); }, true);
}

/// D^a (|xi|^a), J^s (<xi>^s) or d/dx (i xi).
struct Derivative {
  enum class Kind { homogeneous, bessel, dx };
  Kind kind;
  double order = 1.0;

  static Derivative D(double a) { return {Kind::homogeneous, a}; }
  static Derivative J(double s) { return {Kind::bessel, s}; }
  static Derivative dx() { return {Kind::dx, 1.0}; }
};

template <typename Scalar>
SpectralField<Scalar> frac_deriv(const SpectralField<Scalar>& f, const Derivative& d) {
  using C = std::complex<Scalar>;
  const Scalar a = static_cast<Scalar>(d.order);
  switch (d.kind) {
    case Derivative::Kind::homogeneous:
      return apply_multiplier(
          f,
          [a](Scalar xi) { return C(xi == Scalar(0) ? (a == Scalar(0) ? 1 : 0) : std::pow(std::abs(xi), a), 0); },
          a != Scalar(0));
    case Derivative::Kind::bessel:
      return apply_multiplier(
          f, [a](Scalar xi) { return C(std::pow(Scalar(1) + xi * xi, a / 2), 0); }, false);
    case Derivative::Kind::dx:
      return apply_multiplier(f, [](Scalar xi) { return C(0, xi); }, true);
  }
  return f;
}

template <typename Scalar>
SpectralField<Scalar> dx(const SpectralField<Scalar>& f) {
  return frac_deriv(f, Derivative::dx());
}

/// Zero-mean primitive; requires |P_0 f| <= tol.
template <typename Scalar>
SpectralField<Scalar> antiderivative(const SpectralField<Scalar>& f, Scalar tol = Scalar(1e-10)) {
  const Scalar m = std::abs(f.coeffs()(0)) / f.grid().length();
  if (m > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "antiderivative: input has nonzero mean " << m;
    throw PreconditionError(os.str());
  }
  using C = std::complex<Scalar>;
  return apply_multiplier(
      f, [](Scalar xi) { return xi == Scalar(0) ? C(0) : C(0, -Scalar(1) / xi); }, true);
}

/// f(x + shift), exact phase exp(i xi shift).
template <typename Scalar>
SpectralField<Scalar> translate(const SpectralField<Scalar>& f, Scalar shift) {
  using C = std::complex<Scalar>;
  return apply_multiplier(f, [shift](Scalar xi) { return std::exp(C(0, xi * shift)); }, false);
}

enum class Dealias { none, two_thirds };

/// Zeroes |xi| > N / (3 lambda) under the 2/3 rule.
template <typename Scalar>
void dealias(SpectralField<Scalar>& f, Dealias rule) {
  if (rule == Dealias::none) return;
  auto& c = f.coeffs();
  const Index n = c.size();
  for (Index j = 0; j < n; ++j) {
    const Index k = f.grid().wavenumber(j);
    if (3 * std::abs(k) > n) c(j) = 0;
  }
}

template <typename Scalar>
SpectralField<Scalar> multiply(const SpectralField<Scalar>& f, const SpectralField<Scalar>& g,
                               Dealias rule = Dealias::two_thirds) {
  f.require_same_grid(g);
  SpectralField<Scalar> out = [&] {
    if (f.is_real() && g.is_real()) {
      RealVector<Scalar> p = real_samples(f).cwiseProduct(real_samples(g));
      return to_spectral(f.grid(), p);
    }
    ComplexVector<Scalar> p = from_spectral(f).cwiseProduct(from_spectral(g));
    return to_spectral(f.grid(), p);
  }();
  dealias(out, rule);
  return out;
}

/// Pointwise exp(sign * (-i) * F / 2) at the collocation points.
template <typename Scalar>
SpectralField<Scalar> gauge_exponential(const SpectralField<Scalar>& F, int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError("gauge_exponential: sign must be +1 or -1");
  const ComplexVector<Scalar> v = from_spectral(F);
  if (!F.is_real()) {
    const Scalar scale = std::max(Scalar(1), v.cwiseAbs().maxCoeff());
    const Scalar imag = v.imag().cwiseAbs().maxCoeff();
    if (imag > Scalar(1e-12) * scale) {
      std::ostringstream os;
      os << "gauge_exponential: F is not real-valued (max |Im F| = " << imag << ")";
      throw PreconditionError(os.str());
    }
  }
  using C = std::complex<Scalar>;
  ComplexVector<Scalar> e(v.size());
  const Scalar half = -Scalar(sign) / Scalar(2);
  for (Index j = 0; j < v.size(); ++j) e(j) = std::exp(C(0, half * v(j).real()));
  return to_spectral(F.grid(), e);
}

/// Zero-pads (or truncates) to n_modes collocation points on the same period.
template <typename Scalar>
SpectralField<Scalar> resample(const SpectralField<Scalar>& f, Index n_modes) {
  const PeriodicGrid<Scalar> target(f.grid().lambda(), n_modes);
  ComplexVector<Scalar> c = ComplexVector<Scalar>::Zero(n_modes);
  const Index n = f.grid().size();
  const Index kmax = std::min(n, n_modes) / 2;
  for (Index k = -kmax + 1; k < kmax; ++k) c(target.index_of(k)) = f.at(k);
  const auto nyq = f.at(-kmax);
  if (n_modes > n) {
    c(target.index_of(-kmax)) = nyq / Scalar(2);
    c(target.index_of(kmax)) = nyq / Scalar(2);
  } else if (n_modes == n) {
    c(target.index_of(-kmax)) = nyq;
  }
  return SpectralField<Scalar>(target, std::move(c), f.is_real());
}

/// int f over one period, i.e. hat{f}(0).
template <typename Scalar>
std::complex<Scalar> integral(const SpectralField<Scalar>& f) {
  return f.coeffs()(0);
}

/// int f conj(g) dx.
template <typename Scalar>
std::complex<Scalar> inner(const SpectralField<Scalar>& f, const SpectralField<Scalar>& g) {
  f.require_same_grid(g);
  return g.coeffs().dot(f.coeffs()) / f.grid().length();
}

template <typename Scalar>
Scalar max_abs(const SpectralField<Scalar>& f) {
  return from_spectral(f).cwiseAbs().maxCoeff();
}

}  // namespace bolab
