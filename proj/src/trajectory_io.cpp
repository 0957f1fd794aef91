#include "bolab/trajectory_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "bolab/errors.hpp"

namespace bolab {

Table trajectory_table(const Trajectory& traj) {
  Table t{{"time", "k", "xi", "re", "im"}, {}};
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Field& u = traj.states[i];
    const Grid& g = u.grid();
    for (Index j = 0; j < g.size(); ++j) {
      const auto c = u.coeffs()(j);
      t.add({traj.times[i], static_cast<std::int64_t>(g.wavenumber(j)), g.frequency(j), c.real(), c.imag()});
    }
  }
  return t;
}

Table drift_table(const DriftReport& report) {
  Table t{{"t", "value", "relative_drift"}, {}};
  for (std::size_t i = 0; i < report.times.size(); ++i)
    t.add({report.times[i], report.values[i], report.relative_drift[i]});
  return t;
}

Table residual_table(const ResidualSeries& series) {
  Table t{{"t", "residual_L2", "mode"}, {}};
  for (std::size_t i = 0; i < series.times.size(); ++i)
    t.add({series.times[i], series.residuals[i], to_string(series.mode)});
  return t;
}

namespace {

constexpr std::array<char, 6> kMagic{'B', 'O', 'L', 'A', 'B', '1'};

template <class T>
void put(std::ostream& os, T v) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(bytes.data(), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  std::array<char, sizeof(T)> bytes;
  if (!is.read(bytes.data(), sizeof(T))) throw Error("snapshot file truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T v;
  std::memcpy(&v, bytes.data(), sizeof(T));
  return v;
}

}  // namespace

void write_snapshots(const Trajectory& traj, std::ostream& os) {
  if (traj.size() == 0) throw InsufficientDataError("write_snapshots: empty trajectory");
  const Grid& g = traj.states.front().grid();
  os.write(kMagic.data(), kMagic.size());
  put<std::uint16_t>(os, 0);
  put<double>(os, g.lambda());
  put<std::uint64_t>(os, static_cast<std::uint64_t>(g.size()));
  put<double>(os, traj.config.alpha);
  put<std::uint64_t>(os, traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    put<double>(os, traj.times[i]);
    const auto& c = traj.states[i].coeffs();
    for (Index j = 0; j < c.size(); ++j) {
      put<float>(os, static_cast<float>(c(j).real()));
      put<float>(os, static_cast<float>(c(j).imag()));
    }
  }
  if (!os) throw Error("write_snapshots: stream failure");
}

void write_snapshots(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_snapshots(traj, os);
}

Trajectory read_snapshots(std::istream& is) {
  std::array<char, 6> magic;
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) throw Error("not a BOLAB1 snapshot file");
  get<std::uint16_t>(is);
  const double lambda = get<double>(is);
  const auto n = static_cast<Index>(get<std::uint64_t>(is));
  const double alpha = get<double>(is);
  const auto count = get<std::uint64_t>(is);

  Trajectory traj;
  traj.config.grid = Grid(lambda, n);
  traj.config.alpha = alpha;
  for (std::uint64_t i = 0; i < count; ++i) {
    traj.times.push_back(get<double>(is));
    ComplexVector<double> c(n);
    for (Index j = 0; j < n; ++j) {
      const float re = get<float>(is);
      const float im = get<float>(is);
      c(j) = {re, im};
    }
    traj.states.emplace_back(traj.config.grid, std::move(c), true);
  }
  if (!traj.times.empty()) traj.config.t_final = traj.times.back();
  return traj;
}

Trajectory read_snapshots(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  return read_snapshots(is);
}

}  // namespace bolab
