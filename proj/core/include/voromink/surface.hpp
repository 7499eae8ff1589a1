#ifndef VOROMINK_SURFACE_HPP
#define VOROMINK_SURFACE_HPP

#include <cstdint>

#include "voromink/spatial.hpp"
#include "voromink/symtensor.hpp"

namespace voromink {

struct SurfaceEstimate {
  SymTensor tensor;
  int r = 0, s = 0;
  double eps = 0.0;
  double spacing = 0.0;
  std::uint64_t seed = 0;
  std::size_t grid_points = 0;
};

/// Direct estimator of the surface tensor Φ^{r,s}_{d-1} for s >= 1:
/// V^{r,s}_eps / (eps^{1+s} r! s! kappa_{s+1}), one small-radius Voronoi
/// tensor evaluation.  Valid for finite unions of sets of positive reach;
/// two-normal boundary points are counted with weight (1+(-1)^s).
/// window_lo/window_hi, when non-empty, restrict the accumulation to an
/// axis-aligned region of interest (see VoronoiSchedule).
SurfaceEstimate estimate_surface_tensor(
    const PointCloud& cloud, int r, int s, double eps, double a,
    std::uint64_t seed, int threads = 0, bool rotate = false,
    const std::vector<double>& window_lo = {},
    const std::vector<double>& window_hi = {});

/// Scalar (s = 0) difference-quotient estimator:
/// (V^{r,0}_eps - V^{r,0}_{eps^2}) / (2 r! eps), both radii accumulated on
/// the SAME grid realization.  Requires a <= eps^2, which makes the grid
/// very fine; callers should acknowledge the cost.
SurfaceEstimate estimate_surface_scalar_diff(const PointCloud& cloud, int r,
                                             double eps, double a,
                                             std::uint64_t seed,
                                             int threads = 0,
                                             bool rotate = false);

/// Surface-area recovery 4π * tr(T) from an r=0, s=2 estimate.
double surface_area_from_trace(const SurfaceEstimate& est);

}  // namespace voromink

#endif
