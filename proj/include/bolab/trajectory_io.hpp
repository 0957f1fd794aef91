#pragma once

// Trajectory and residual export.
//
// Binary snapshot format (all fields little-endian):
//   offset 0   char[6]  magic "BOLAB1"
//          6   uint16   reserved, 0
//          8   float64  lambda
//         16   uint64   n_modes
//         24   float64  alpha
//         32   uint64   n_snapshots
//         40   blocks:  float64 time, then n_modes x (float32 re, float32 im)
//                       coefficients in FFT order (k = 0..N/2-1, -N/2..-1)

#include <filesystem>
#include <iosfwd>

#include "bolab/evolution.hpp"
#include "bolab/gauge.hpp"
#include "bolab/invariants.hpp"
#include "bolab/report.hpp"

namespace bolab {

/// Columns time,k,xi,re,im: one row per stored coefficient.
Table trajectory_table(const Trajectory& traj);

/// Columns t,value,relative_drift.
Table drift_table(const DriftReport& report);

/// Columns t,residual_L2,mode.
Table residual_table(const ResidualSeries& series);

void write_snapshots(const Trajectory& traj, std::ostream& os);
void write_snapshots(const Trajectory& traj, const std::filesystem::path& path);

/// Reads a snapshot file. States are flagged real; config carries grid, alpha
/// and the stored horizon only. Coefficients come back at float32 precision.
Trajectory read_snapshots(std::istream& is);
Trajectory read_snapshots(const std::filesystem::path& path);

}  // namespace bolab
