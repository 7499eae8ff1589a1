#include "voromink/surface.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "voromink/voronoi.hpp"

namespace voromink {

SurfaceEstimate estimate_surface_tensor(const PointCloud& cloud, int r, int s,
                                        double eps, double a,
                                        std::uint64_t seed, int threads,
                                        bool rotate,
                                        const std::vector<double>& window_lo,
                                        const std::vector<double>& window_hi) {
  if (s < 1)
    throw std::invalid_argument(
        "estimate_surface_tensor: s must be >= 1 "
        "(use estimate_surface_scalar_diff for s = 0)");
  if (eps <= 0.0 || a <= 0.0)
    throw std::invalid_argument("estimate_surface_tensor: eps, a must be > 0");
  if (eps <= a)
    throw std::invalid_argument("estimate_surface_tensor: need eps > a");
  if (a > eps / 10.0)
    std::cerr << "warning: grid spacing a = " << a
              << " is coarse relative to eps = " << eps
              << "; expect discretization bias\n";
  VoronoiSchedule vs;
  vs.radii = {eps};
  vs.spacing = a;
  vs.seed = seed;
  vs.rotate = rotate;
  vs.window_lo = window_lo;
  vs.window_hi = window_hi;
  VoronoiTensorSeries series = estimate_series(cloud, vs, r, s, threads);

  const double norm = std::pow(eps, 1 + s) * std::tgamma(r + 1.0) *
                      std::tgamma(s + 1.0) * unit_ball_volume(s + 1);
  SurfaceEstimate out;
  out.tensor = series.tensors.front() * (1.0 / norm);
  out.r = r;
  out.s = s;
  out.eps = eps;
  out.spacing = a;
  out.seed = seed;
  out.grid_points = series.grid_points;
  return out;
}

SurfaceEstimate estimate_surface_scalar_diff(const PointCloud& cloud, int r,
                                             double eps, double a,
                                             std::uint64_t seed, int threads,
                                             bool rotate) {
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument(
        "estimate_surface_scalar_diff: need 0 < eps < 1");
  if (a <= 0.0 || a > eps * eps)
    throw std::invalid_argument(
        "estimate_surface_scalar_diff: need 0 < a <= eps^2");
  VoronoiSchedule vs;
  vs.radii = {eps * eps, eps};  // one realization covers both radii
  vs.spacing = a;
  vs.seed = seed;
  vs.rotate = rotate;
  VoronoiTensorSeries series = estimate_series(cloud, vs, r, 0, threads);

  const double norm = 2.0 * std::tgamma(r + 1.0) * eps;
  SurfaceEstimate out;
  out.tensor = (series.tensors[1] - series.tensors[0]) * (1.0 / norm);
  out.r = r;
  out.s = 0;
  out.eps = eps;
  out.spacing = a;
  out.seed = seed;
  out.grid_points = series.grid_points;
  return out;
}

double surface_area_from_trace(const SurfaceEstimate& est) {
  if (est.r != 0 || est.s != 2)
    throw std::invalid_argument("surface_area_from_trace: needs r=0, s=2");
  return 4.0 * M_PI * trace2(est.tensor);
}

}  // namespace voromink
