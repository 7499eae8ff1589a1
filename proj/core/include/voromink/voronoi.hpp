#ifndef VOROMINK_VORONOI_HPP
#define VOROMINK_VORONOI_HPP

#include <cstdint>
#include <vector>

#include "voromink/spatial.hpp"
#include "voromink/symtensor.hpp"

namespace voromink {

/// Parameters of one randomized-grid evaluation.
struct VoronoiSchedule {
  std::vector<double> radii;  // strictly ascending, R1 > 0
  double spacing = 0.0;       // lattice spacing a > 0
  std::uint64_t seed = 0;
  bool rotate = false;
  // Optional axis-aligned evaluation window (one bound per dimension when
  // set).  Lattice points outside the window are skipped, which restricts
  // the estimate to a region of interest, e.g. to exclude the rim of a
  // bounded height-field patch.
  std::vector<double> window_lo, window_hi;
};

struct VoronoiTensorSeries {
  std::vector<double> radii;
  int r = 0, s = 0;
  std::vector<SymTensor> tensors;  // one rank-(r+s) tensor per radius
  double spacing = 0.0;
  std::uint64_t seed = 0;
  bool rotated = false;
  std::size_t grid_points = 0;  // lattice points visited inside the region
};

/// Randomized-grid estimator of the Voronoi tensors V_R^{r,s}(K0):
/// a^d * sum over lattice points x with ||x - p(x)|| < R (strict) of
/// p(x)^r (x-p(x))^s.  All radii are handled in one pass: each lattice
/// point is accumulated into the bucket of its smallest qualifying radius
/// and the buckets are prefix-summed.  One nearest-neighbor query per
/// point regardless of the schedule length.
///
/// Deterministic for a fixed seed: work is split into slabs of the leading
/// lattice coordinate and partial sums are merged in slab order, so the
/// result is bitwise identical for any thread count.
VoronoiTensorSeries estimate_series(const PointCloud& cloud,
                                    const VoronoiSchedule& schedule, int r,
                                    int s, int threads = 0);

/// Same pass evaluated for several (r, s) pairs at once; the dominant cost
/// (one nearest-neighbor query per lattice point) is shared.
std::vector<VoronoiTensorSeries> estimate_series_multi(
    const PointCloud& cloud, const VoronoiSchedule& schedule,
    const std::vector<std::pair<int, int>>& rs, int threads = 0);

/// Deterministic validation oracle: V_R^{r,s}(K0) by midpoint integration
/// on a fixed lattice of the given spacing (default radii[0]/200).  Closed
/// inequality ||x-p|| <= R; the measure-zero difference from the strict
/// estimator is far below the discretization error.  Small inputs only
/// (<= 200 points, d <= 3).
VoronoiTensorSeries exact_series_oracle(const PointCloud& cloud,
                                        const std::vector<double>& radii,
                                        int r, int s, double spacing = 0.0);

}  // namespace voromink

#endif
