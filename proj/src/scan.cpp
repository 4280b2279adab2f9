// SPDX-License-Identifier: MIT
#include "scalekit/scan.hpp"

#include <cstddef>

#include "scalekit/conedist.hpp"
#include "scalekit/error.hpp"
#include "scalekit/frame.hpp"
#include "scalekit/frame_io.hpp"
#include "scalekit/mvee.hpp"
#include "scalekit/parallel.hpp"
#include "scalekit/rng.hpp"
#include "scalekit/scalemeasures.hpp"

namespace scalekit::cli {

std::vector<ScanRow> run_scan(const std::vector<int>& m_list, int n, int count,
                              std::uint64_t seed) {
  if (n < 1) raise(errc::dimension_error, "run_scan: n must be >= 1");
  if (count < 1) raise(errc::domain_error, "run_scan: count must be >= 1");
  if (m_list.empty()) raise(errc::domain_error, "run_scan: at least one m value is required");
  for (int m : m_list)
    if (m < n) raise(errc::dimension_error, "run_scan: every m must be >= n");

  const std::size_t total = m_list.size() * static_cast<std::size_t>(count);
  std::vector<ScanRow> rows(total);
  parallel_for(total, [&](std::size_t g) {
    const int block = static_cast<int>(g) / count;
    const int index = static_cast<int>(g) % count;
    const int m = m_list[static_cast<std::size_t>(block)];
    UnitNormFrame frame = random_unit_frame(m, n, derive_seed(seed, g));
    const cone::ConeFit fit = cone::solve_cone_projection(frame, 1e-10);
    const mvee::MinimalEllipsoid e = mvee::minimal_ellipsoid(frame, 1e-7);
    const measures::DistanceBounds b =
        measures::distance_bounds(m, n, fit.distance, e.volume_ratio);
    ScanRow& row = rows[g];
    row.frame_index = index;
    row.m = m;
    row.n = n;
    row.cone_distance = fit.distance;
    row.volume_ratio = e.volume_ratio;
    row.vd_lower = measures::vd_lower_envelope(n, fit.distance);
    row.vd_upper = measures::vd_upper_envelope(n, fit.distance);
    row.d_lower = b.lower;
    row.d_upper = b.upper;
  });
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out =
      "frame_index,m,n,cone_distance,volume_ratio,vd_lower,vd_upper,d_lower,d_upper\n";
  for (const ScanRow& r : rows) {
    out += std::to_string(r.frame_index);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += io::fmt17(r.cone_distance);
    out += ',';
    out += io::fmt17(r.volume_ratio);
    out += ',';
    out += io::fmt17(r.vd_lower);
    out += ',';
    out += io::fmt17(r.vd_upper);
    out += ',';
    out += io::fmt17(r.d_lower);
    out += ',';
    out += io::fmt17(r.d_upper);
    out += '\n';
  }
  return out;
}

}  // namespace scalekit::cli
