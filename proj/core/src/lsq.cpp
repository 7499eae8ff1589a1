#include "voromink/lsq.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace voromink {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// column-pivoted QR shared by the vector and matrix solves
Eigen::MatrixXd qr_solve(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                         double* residual_norm) {
  if (X.rows() < X.cols())
    throw std::invalid_argument("lsq_solve: underdetermined system");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  const auto& R = qr.matrixR();
  const double rmax = std::abs(R(0, 0));
  const double rmin = std::abs(R(X.cols() - 1, X.cols() - 1));
  if (!(rmin > 0.0) || rmax / rmin > 1e12)
    throw std::runtime_error(
        "lsq_solve: design matrix numerically rank-deficient "
        "(degenerate radius schedule; use distinct, well-spread radii)");
  Eigen::MatrixXd B = qr.solve(Y);
  if (residual_norm) *residual_norm = (X * B - Y).norm();
  return B;
}

}  // namespace

std::vector<double> RadiusSchedule::radii() const {
  if (n < 2) throw std::invalid_argument("RadiusSchedule: n must be >= 2");
  if (!(r1 > 0.0) || !(rn > r1))
    throw std::invalid_argument("RadiusSchedule: need 0 < R1 < Rn");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = r1 + (rn - r1) * static_cast<double>(i) / (n - 1);
  out.back() = rn;
  return out;
}

Eigen::MatrixXd build_design_matrix(const std::vector<double>& radii, int d,
                                    int r, int s, bool drop_volume) {
  const int n = static_cast<int>(radii.size());
  if (s >= 1 && !drop_volume)
    throw std::invalid_argument(
        "build_design_matrix: s >= 1 requires dropping the volume column");
  const int j0 = drop_volume ? 1 : 0;
  const int cols = d + 1 - j0;
  if (n < cols)
    throw std::invalid_argument("build_design_matrix: too few radii");
  for (const double R : radii)
    if (R <= 0.0)
      throw std::invalid_argument("build_design_matrix: radii must be positive");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (radii[i] == radii[j])
        throw std::invalid_argument("build_design_matrix: duplicate radii");
  const double rs_fact = factorial(r) * factorial(s);
  Eigen::MatrixXd X(n, cols);
  for (int j = j0; j <= d; ++j) {
    const double c = rs_fact * unit_ball_volume(j + s);
    for (int i = 0; i < n; ++i)
      X(i, j - j0) = c * std::pow(radii[i], s + j);
  }
  return X;
}

Eigen::VectorXd lsq_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double* residual_norm) {
  return qr_solve(X, y, residual_norm);
}

MinkowskiTensorSet fit_series(const VoronoiTensorSeries& series, int d) {
  const int r = series.r, s = series.s;
  const bool drop = s >= 1;
  const Eigen::MatrixXd X =
      build_design_matrix(series.radii, d, r, s, drop);
  const std::size_t nent = series.tensors.front().size();
  const std::size_t nrad = series.radii.size();
  Eigen::MatrixXd Y(nrad, nent);
  for (std::size_t i = 0; i < nrad; ++i)
    for (std::size_t e = 0; e < nent; ++e) Y(i, e) = series.tensors[i][e];
  double residual = 0.0;
  const Eigen::MatrixXd B = qr_solve(X, Y, &residual);

  MinkowskiTensorSet out;
  out.d = d;
  out.r = r;
  out.s = s;
  out.radii = series.radii;
  out.spacing = series.spacing;
  out.seed = series.seed;
  out.rotated = series.rotated;
  out.grid_points = series.grid_points;
  out.max_residual = residual;
  const int rank = r + s;
  for (int j = 0; j <= d; ++j) {
    SymTensor t(series.tensors.front().dim(), rank);
    // column c of the solve corresponds to degree d - (c + j0)
    if (!(drop && j == 0)) {
      const int c = j - (drop ? 1 : 0);
      for (std::size_t e = 0; e < nent; ++e) t[e] = B(c, e);
    }
    out.phi.push_back(t);  // phi[j] = estimate of degree d - j
    out.std_error.emplace_back(series.tensors.front().dim(), rank);
  }
  return out;
}

MinkowskiTensorSet estimate_minkowski(const PointCloud& cloud, int r, int s,
                                      RadiusSchedule schedule, int threads) {
  if (cloud.size() < 2)
    throw std::invalid_argument("estimate_minkowski: need at least 2 points");
  const auto t0 = std::chrono::steady_clock::now();
  const int d = cloud.dim();
  if (schedule.r1 <= 0.0 || schedule.spacing <= 0.0 || schedule.rn <= 0.0) {
    const double av = cloud.avg_nn_distance();
    if (schedule.r1 <= 0.0) schedule.r1 = av;
    if (schedule.spacing <= 0.0) schedule.spacing = av;
    if (schedule.rn <= 0.0) {
      schedule.rn = (d + 1) * av;
      std::cerr << "warning: Rn not given; defaulting to (d+1) x average "
                   "nearest-neighbor distance = "
                << schedule.rn
                << ". Validity requires Rn below the reach of the sampled "
                   "set; override --rmax if in doubt.\n";
    }
    const double gap = (schedule.rn - schedule.r1) / (schedule.n - 1);
    if (gap < av)
      std::cerr << "warning: radius gap " << gap
                << " below the average nearest-neighbor distance " << av
                << "; estimates may be unstable\n";
  }
  if (schedule.renditions < 1)
    throw std::invalid_argument("estimate_minkowski: renditions must be >= 1");
  const std::vector<double> radii = schedule.radii();
  const int m = schedule.renditions;

  MinkowskiTensorSet total;
  std::vector<std::vector<std::vector<double>>> samples;  // [phi][entry][rend]
  for (int idx = 0; idx < m; ++idx) {
    VoronoiSchedule vs;
    vs.radii = radii;
    vs.spacing = schedule.spacing;
    vs.seed = schedule.seed + static_cast<std::uint64_t>(idx);
    vs.rotate = schedule.rotate;
    const VoronoiTensorSeries series =
        estimate_series(cloud, vs, r, s, threads);
    MinkowskiTensorSet fit = fit_series(series, d);
    if (idx == 0) {
      total = fit;
      samples.resize(fit.phi.size());
      for (std::size_t j = 0; j < fit.phi.size(); ++j)
        samples[j].resize(fit.phi[j].size());
    } else {
      total.max_residual = std::max(total.max_residual, fit.max_residual);
    }
    for (std::size_t j = 0; j < fit.phi.size(); ++j)
      for (std::size_t e = 0; e < fit.phi[j].size(); ++e)
        samples[j][e].push_back(fit.phi[j][e]);
  }

  for (std::size_t j = 0; j < total.phi.size(); ++j)
    for (std::size_t e = 0; e < total.phi[j].size(); ++e) {
      const auto& v = samples[j][e];
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= m;
      total.phi[j][e] = mean;
      double var = 0.0;
      if (m > 1) {
        for (double x : v) var += (x - mean) * (x - mean);
        var /= (m - 1);
      }
      total.std_error[j][e] = std::sqrt(var / m);
    }
  total.renditions = m;
  total.seed = schedule.seed;
  total.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return total;
}

}  // namespace voromink
