#include "bolab/bourgain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bolab {

namespace {

using C = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr double kPi = std::numbers::pi;

void fft2(MatrixXcd& a, bool inverse) {
  auto& engine = detail::fft_engine<double>();
  VectorXcd in, out;
  for (Index j = 0; j < a.cols(); ++j) {
    in = a.col(j);
    out.resize(in.size());
    inverse ? engine.inv(out, in) : engine.fwd(out, in);
    a.col(j) = out;
  }
  for (Index i = 0; i < a.rows(); ++i) {
    in = a.row(i).transpose();
    out.resize(in.size());
    inverse ? engine.inv(out, in) : engine.fwd(out, in);
    a.row(i) = out.transpose();
  }
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double septic_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double x4 = x * x * x * x;
  return x4 * (35.0 - 84.0 * x + 70.0 * x * x - 20.0 * x * x * x);
}

double lp_phi(double r) { return 1.0 - septic_step(r - 1.0); }

std::int64_t isqrt_ceil(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r < v) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= v) --r;
  return r;
}

struct Interval {
  std::int64_t lo, hi;
};

std::vector<Interval> intervals(const ModulationShell& s) {
  if (s.inner == 0) return {{-s.outer, s.outer}};
  return {{-s.outer, -s.inner}, {s.inner, s.outer}};
}

}  // namespace

double japanese(double x) { return std::sqrt(1.0 + x * x); }

double window_cutoff(double t, double T) {
  const double x = t / T;
  if (x <= 0.0 || x >= 1.0) return 0.0;
  if (x < 0.25) return smooth_step(4.0 * x);
  if (x > 0.75) return smooth_step(4.0 * (1.0 - x));
  return 1.0;
}

WindowedField::WindowedField(Grid g, double T, Eigen::MatrixXcd s, Eigen::VectorXd psi, bool padded)
    : grid(std::move(g)), duration(T), samples(std::move(s)), cutoff(std::move(psi)), pad(padded) {
  if (!(duration > 0.0)) throw ConfigError("WindowedField: duration must be > 0");
  if (samples.cols() != grid.size()) throw SizeError("WindowedField: sample width differs from grid");
  if (samples.rows() < 2 || samples.rows() % 2 != 0)
    throw ConfigError("WindowedField: n_time must be even and >= 2");
  if (cutoff.size() != samples.rows()) throw SizeError("WindowedField: cutoff length mismatch");
  if ((cutoff.array() < 0.0).any() || (cutoff.array() > 1.0).any())
    throw ConfigError("WindowedField: cutoff values must lie in [0, 1]");
}

WindowedField WindowedField::sample(const Grid& g, double T, Index n_time,
                                    const std::function<C(double, double)>& fn) {
  MatrixXcd s(n_time, g.size());
  Eigen::VectorXd psi(n_time);
  const double dt = T / static_cast<double>(n_time);
  for (Index j = 0; j < n_time; ++j) {
    const double t = dt * static_cast<double>(j);
    psi(j) = window_cutoff(t, T);
    for (Index l = 0; l < g.size(); ++l) s(j, l) = fn(t, g.node(l));
  }
  return WindowedField(g, T, std::move(s), std::move(psi), true);
}

WindowedField WindowedField::free_evolution(const Field& f, double T, Index n_time, double alpha) {
  const Grid& g = f.grid();
  MatrixXcd s(n_time, g.size());
  Eigen::VectorXd psi(n_time);
  const double dt = T / static_cast<double>(n_time);
  for (Index j = 0; j < n_time; ++j) {
    const double t = dt * static_cast<double>(j);
    psi(j) = window_cutoff(t, T);
    Field ft = apply_multiplier(
        f,
        [&](double xi) {
          const double a = std::abs(xi);
          return std::exp(C(0, -(a == 0.0 ? 0.0 : std::pow(a, 2.0 * alpha) * xi) * t));
        },
        false);
    s.row(j) = from_spectral(ft).transpose();
  }
  return WindowedField(g, T, std::move(s), std::move(psi), true);
}

WindowedField WindowedField::periodic(const Grid& g, double T, Eigen::MatrixXcd s) {
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(s.rows());
  return WindowedField(g, T, std::move(s), std::move(ones), false);
}

MatrixXcd WindowedField::weighted() const { return cutoff.asDiagonal() * samples; }

double SpacetimeSpectrum::tau(Index m) const {
  const Index M = coeffs.rows();
  const Index mm = m < M / 2 ? m : m - M;
  return 2.0 * kPi * static_cast<double>(mm) / padded_duration;
}

double SpacetimeSpectrum::sigma(Index m, Index j, Phase phase) const {
  const double x = xi(j);
  return phase == Phase::benjamin_ono ? tau(m) + x * std::abs(x) : tau(m) - x * x;
}

SpacetimeSpectrum spacetime_transform(const WindowedField& w) {
  const Index n = w.n_time();
  const Index M = w.pad ? 2 * n : n;
  MatrixXcd a = MatrixXcd::Zero(M, w.grid.size());
  a.topRows(n) = w.weighted();
  fft2(a, false);
  a *= w.time_step() * w.grid.spacing();
  return SpacetimeSpectrum{w.grid, w.padded_duration(), std::move(a)};
}

WindowedField to_windowed(const SpacetimeSpectrum& spec) {
  MatrixXcd a = spec.coeffs;
  fft2(a, true);
  const double dt = spec.padded_duration / static_cast<double>(a.rows());
  a /= dt * spec.grid.spacing();
  return WindowedField::periodic(spec.grid, spec.padded_duration, std::move(a));
}

double bourgain_norm(const SpacetimeSpectrum& spec, const NormSpec& norm) {
  const auto& c = spec.coeffs;
  const double measure_t = spec.padded_duration;
  const double measure_x = spec.grid.length();
  auto x_norm = [&](double b, double s) {
    double acc = 0.0;
    for (Index j = 0; j < c.cols(); ++j) {
      const double ws = std::pow(japanese(spec.xi(j)), 2.0 * s);
      for (Index m = 0; m < c.rows(); ++m)
        acc += ws * std::pow(japanese(spec.sigma(m, j, norm.phase)), 2.0 * b) * std::norm(c(m, j));
    }
    return std::sqrt(acc / (measure_t * measure_x));
  };
  auto z_norm = [&](double b, double s) {
    double acc = 0.0;
    for (Index j = 0; j < c.cols(); ++j) {
      double l1 = 0.0;
      for (Index m = 0; m < c.rows(); ++m)
        l1 += std::pow(japanese(spec.sigma(m, j, norm.phase)), b) * std::abs(c(m, j));
      l1 *= std::pow(japanese(spec.xi(j)), s);
      l1 /= measure_t;
      acc += l1 * l1;
    }
    return std::sqrt(acc / measure_x);
  };
  switch (norm.flavor) {
    case NormSpec::Flavor::X: return x_norm(norm.b, norm.s);
    case NormSpec::Flavor::Z: return z_norm(norm.b, norm.s);
    case NormSpec::Flavor::Y: return x_norm(0.5, norm.s) + z_norm(0.0, norm.s);
    case NormSpec::Flavor::LpLq: break;
  }
  throw PreconditionError("bourgain_norm: mixed Lebesgue norms need the windowed samples");
}

double bourgain_norm(const WindowedField& w, const NormSpec& norm) {
  if (norm.flavor == NormSpec::Flavor::LpLq) return lp_lq_norm(w, norm.p, norm.q);
  return bourgain_norm(spacetime_transform(w), norm);
}

double lp_lq_norm(const WindowedField& w, double p, double q) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw PreconditionError("lp_lq_norm: exponents must be >= 1");
  const double dx = w.grid.spacing();
  const double dt = w.time_step();
  Eigen::VectorXd inner(w.n_time());
  for (Index j = 0; j < w.n_time(); ++j) {
    const Eigen::VectorXd a = w.samples.row(j).cwiseAbs().transpose();
    inner(j) = std::isinf(q) ? a.maxCoeff() : std::pow(a.array().pow(q).sum() * dx, 1.0 / q);
  }
  if (std::isinf(p)) return inner.maxCoeff();
  return std::pow(inner.array().pow(p).sum() * dt, 1.0 / p);
}

double l4_norm(const WindowedField& w) {
  const MatrixXcd v = w.weighted();
  const double s = v.cwiseAbs2().array().square().sum();
  return std::pow(s * w.time_step() * w.grid.spacing(), 0.25);
}

double l2_norm(const WindowedField& w) {
  return std::sqrt(w.weighted().squaredNorm() * w.time_step() * w.grid.spacing());
}

double strichartz_ratio(const WindowedField& w, bool split_halves) {
  const SpacetimeSpectrum spec = spacetime_transform(w);
  double denom = 0.0;
  if (split_halves) {
    double parts[3] = {0.0, 0.0, 0.0};
    for (Index j = 0; j < spec.coeffs.cols(); ++j) {
      const double x = spec.xi(j);
      const int slot = x > 0 ? 0 : (x < 0 ? 1 : 2);
      for (Index m = 0; m < spec.coeffs.rows(); ++m)
        parts[slot] += std::pow(japanese(spec.sigma(m, j, Phase::benjamin_ono)), 0.75) *
                       std::norm(spec.coeffs(m, j));
    }
    const double scale = spec.padded_duration * spec.grid.length();
    for (double p : parts) denom += std::sqrt(p / scale);
  } else {
    denom = bourgain_norm(spec, NormSpec::X(0.375, 0.0));
  }
  if (!(denom > 0.0)) throw PreconditionError("strichartz_ratio: zero X^{3/8,0} norm");
  return l4_norm(w) / denom;
}

double lp_eta(double xi) {
  const double r = std::abs(xi);
  return lp_phi(r) - lp_phi(2.0 * r);
}

std::pair<int, int> dyadic_range(const Grid& g) {
  const int lo = static_cast<int>(std::floor(std::log2(1.0 / g.lambda()))) - 1;
  const int hi = static_cast<int>(std::ceil(std::log2(g.max_frequency()))) + 1;
  return {lo, hi};
}

Field littlewood_paley(const Field& f, int k) {
  const double scale = std::ldexp(1.0, -k);
  return apply_multiplier(f, [&](double xi) { return C(lp_eta(scale * xi), 0); }, false);
}

SpacetimeSpectrum modulation_block(const SpacetimeSpectrum& spec, double M, Phase phase) {
  SpacetimeSpectrum out = spec;
  for (Index j = 0; j < out.coeffs.cols(); ++j)
    for (Index m = 0; m < out.coeffs.rows(); ++m) {
      const double s = japanese(spec.sigma(m, j, phase));
      if (!(s >= M && s < 2.0 * M)) out.coeffs(m, j) = 0;
    }
  return out;
}

WindowedField littlewood_paley(const WindowedField& w, double M, Phase phase) {
  return to_windowed(modulation_block(spacetime_transform(w), M, phase));
}

double bilinear_block_norm(const WindowedField& v1, const WindowedField& v2) {
  if (v1.samples.rows() != v2.samples.rows() || !(v1.grid == v2.grid) ||
      v1.duration != v2.duration)
    throw SizeError("bilinear_block_norm: blocks live on different sample grids");
  const double n1 = l2_norm(v1);
  const double n2 = l2_norm(v2);
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw PreconditionError("bilinear_block_norm: zero block");
  const MatrixXcd prod = v1.weighted().cwiseProduct(v2.weighted());
  const double np = std::sqrt(prod.squaredNorm() * v1.time_step() * v1.grid.spacing());
  return np / (n1 * n2);
}

ModulationShell::ModulationShell(std::int64_t M) {
  if (M < 1) throw PreconditionError("ModulationShell: M must be >= 1");
  inner = isqrt_ceil(M * M - 1);
  // largest a with a^2 < 4 M^2 - 1
  outer = isqrt_ceil(4 * M * M - 1) - 1;
  while ((outer + 1) * (outer + 1) < 4 * M * M - 1) ++outer;
}

bool ModulationShell::contains(std::int64_t a) const {
  const std::int64_t x = a < 0 ? -a : a;
  return x >= inner && x <= outer;
}

std::int64_t shell_convolution(const ModulationShell& s1, const ModulationShell& s2, std::int64_t c) {
  std::int64_t count = 0;
  for (const auto& a : intervals(s1))
    for (const auto& b : intervals(s2)) {
      const std::int64_t lo = std::max(a.lo, c - b.hi);
      const std::int64_t hi = std::min(a.hi, c - b.lo);
      if (hi >= lo) count += hi - lo + 1;
    }
  return count;
}

std::int64_t counting_alpha(std::int64_t tau, std::int64_t n, std::int64_t M1, std::int64_t M2,
                            std::int64_t n_range) {
  if (n_range < 0) throw PreconditionError("counting_alpha: n_range must be >= 0");
  const ModulationShell s1(M1), s2(M2);
  std::int64_t total = 0;
  for (std::int64_t n1 = -n_range; n1 <= n_range; ++n1) {
    const std::int64_t q = n1 * n1 + (n - n1) * (n - n1);
    total += shell_convolution(s1, s2, tau - q);
  }
  return total;
}

CountingCell counting_max(std::int64_t M1, std::int64_t M2, std::int64_t n_range) {
  const ModulationShell s1(M1), s2(M2);
  const std::int64_t W = s1.outer + s2.outer;
  std::vector<std::int64_t> g(2 * W + 1);
  for (std::int64_t c = -W; c <= W; ++c) g[c + W] = shell_convolution(s1, s2, c);

  CountingCell cell{M1, M2, -1, 0, 0, 0.0, 0.0};
  std::vector<std::int64_t> hist;
  for (std::int64_t n = -n_range; n <= n_range; ++n) {
    std::int64_t qmin = std::numeric_limits<std::int64_t>::max(), qmax = 0;
    for (std::int64_t n1 = -n_range; n1 <= n_range; ++n1) {
      const std::int64_t q = n1 * n1 + (n - n1) * (n - n1);
      qmin = std::min(qmin, q);
      qmax = std::max(qmax, q);
    }
    const std::int64_t base = qmin - W;
    hist.assign(static_cast<std::size_t>(qmax - qmin + 2 * W + 1), 0);
    for (std::int64_t n1 = -n_range; n1 <= n_range; ++n1) {
      const std::int64_t q = n1 * n1 + (n - n1) * (n - n1);
      std::int64_t* h = hist.data() + (q - W - base);
      for (std::int64_t c = 0; c <= 2 * W; ++c) h[c] += g[c];
    }
    for (std::size_t i = 0; i < hist.size(); ++i)
      if (hist[i] > cell.max_alpha) {
        cell.max_alpha = hist[i];
        cell.arg_tau = base + static_cast<std::int64_t>(i);
        cell.arg_n = n;
      }
  }
  const double lo = static_cast<double>(std::min(M1, M2));
  const double hi = static_cast<double>(std::max(M1, M2));
  cell.bound = lo * std::sqrt(hi);
  cell.ratio = static_cast<double>(cell.max_alpha) / cell.bound;
  return cell;
}

std::vector<CountingCell> counting_sweep(std::int64_t Mmax, std::int64_t n_range) {
  if (Mmax < 1) throw PreconditionError("counting_sweep: Mmax must be >= 1");
  std::vector<CountingCell> cells;
  for (std::int64_t M1 = 1; M1 <= Mmax; M1 *= 2)
    for (std::int64_t M2 = M1; M2 <= Mmax; M2 *= 2) cells.push_back(counting_max(M1, M2, n_range));
  return cells;
}

}  // namespace bolab
