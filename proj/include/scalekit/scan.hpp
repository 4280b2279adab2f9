// SPDX-License-Identifier: MIT
#pragma once
/// \file scan.hpp
/// \brief Batch scan over random frames: cone distance, volume ratio, and
///        bound envelopes per frame, emitted as CSV.

#include <cstdint>
#include <string>
#include <vector>

namespace scalekit::cli {

struct ScanRow {
  int frame_index = 0;  ///< index within this row's m-block (restarts per m)
  int m = 0, n = 0;
  double cone_distance = 0.0;
  double volume_ratio = 0.0;
  double vd_lower = 0.0;  ///< envelope value n(1-D^2)/(n-D^2) at this row's D
  double vd_upper = 0.0;  ///< envelope value n(n-1-D^2)/((n-1)(n-D^2))
  double d_lower = 0.0;   ///< lower bound on the distance to the scalable set
  double d_upper = 0.0;   ///< upper bound on the same distance
};

/// Generates `count` random frames for every m in m_list (all with the same
/// n) and measures each one. Frame seeds derive from (seed, global index),
/// where the global index runs over m_list blocks in order, so the output
/// is deterministic and independent of thread scheduling.
std::vector<ScanRow> run_scan(const std::vector<int>& m_list, int n, int count,
                              std::uint64_t seed);

/// Fixed header frame_index,m,n,cone_distance,volume_ratio,vd_lower,
/// vd_upper,d_lower,d_upper; floats with 17 significant digits.
std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace scalekit::cli
