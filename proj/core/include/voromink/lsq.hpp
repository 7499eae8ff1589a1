#ifndef VOROMINK_LSQ_HPP
#define VOROMINK_LSQ_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "voromink/spatial.hpp"
#include "voromink/symtensor.hpp"
#include "voromink/voronoi.hpp"

namespace voromink {

/// Radius schedule for the least-squares fit.  Defaults follow the usual
/// practice: n = 50 equidistant radii, R1 = average nearest-neighbor
/// distance of the input, grid spacing a = R1.
struct RadiusSchedule {
  int n = 50;
  double r1 = 0.0;      // 0 -> avg_nn_distance(cloud)
  double rn = 0.0;      // required (directly or via window_max_radius)
  double spacing = 0.0; // 0 -> avg_nn_distance(cloud)
  int renditions = 1;
  std::uint64_t seed = 0;
  bool rotate = false;

  std::vector<double> radii() const;  // equidistant r1..rn
};

/// The d+1 fitted tensors Φ_d .. Φ_0 (in that order) with per-entry
/// standard errors across renditions.
struct MinkowskiTensorSet {
  int d = 0, r = 0, s = 0;
  std::vector<SymTensor> phi;        // phi[j] estimates Φ_{d-j}
  std::vector<SymTensor> std_error;  // same layout; zero when renditions == 1
  // metadata
  std::vector<double> radii;
  double spacing = 0.0;
  int renditions = 1;
  std::uint64_t seed = 0;
  bool rotated = false;
  std::size_t grid_points = 0;  // per rendition
  double max_residual = 0.0;    // largest LSQ residual norm seen
  double runtime_sec = 0.0;
};

/// Design matrix of the radial fit: X(i,j) = r! s! kappa_{j+s} R_i^{s+j},
/// j = 0..d, where column j multiplies the estimate of Φ_{d-j}.  With
/// drop_volume (mandatory for s >= 1, where Φ_d vanishes identically)
/// column j = 0 is removed.
Eigen::MatrixXd build_design_matrix(const std::vector<double>& radii, int d,
                                    int r, int s, bool drop_volume);

/// Minimizer of ||Xb - y|| by column-pivoted QR.  Never forms the normal
/// equations or an explicit inverse.  Throws if the condition estimate of
/// X exceeds 1e12 (degenerate radius schedule).
Eigen::VectorXd lsq_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double* residual_norm = nullptr);

/// Fit Minkowski tensors to an already-computed Voronoi tensor series.
MinkowskiTensorSet fit_series(const VoronoiTensorSeries& series, int d);

/// Full pipeline: for each rendition draw a shifted (optionally rotated)
/// grid, accumulate the Voronoi tensor series, fit, then average fits
/// across renditions.  Standard error = sample SD / sqrt(renditions).
MinkowskiTensorSet estimate_minkowski(const PointCloud& cloud, int r, int s,
                                      RadiusSchedule schedule,
                                      int threads = 0);

}  // namespace voromink

#endif
