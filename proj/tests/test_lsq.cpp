#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "voromink/lsq.hpp"
#include "voromink/oracles.hpp"

using namespace voromink;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("design matrix rows are the Steiner monomials") {
  // d = 2, r = s = 0: row (kappa_0, kappa_1 R, kappa_2 R^2) = (1, 2R, pi R^2)
  const std::vector<double> radii = {0.5, 1.0, 2.0};
  const Eigen::MatrixXd X = build_design_matrix(radii, 2, 0, 0, false);
  REQUIRE(X.rows() == 3);
  REQUIRE(X.cols() == 3);
  for (int i = 0; i < 3; ++i) {
    const double R = radii[i];
    CHECK(X(i, 0) == doctest::Approx(1.0));
    CHECK(X(i, 1) == doctest::Approx(2.0 * R));
    CHECK(X(i, 2) == doctest::Approx(kPi * R * R));
  }
  // s = 2 drops the volume column; first column is 2 kappa_3 R^3 = 8pi/3 R^3
  const Eigen::MatrixXd Xs = build_design_matrix(radii, 2, 0, 2, true);
  REQUIRE(Xs.cols() == 2);
  CHECK(Xs(1, 0) == doctest::Approx(2.0 * 4.0 * kPi / 3.0));
  // r enters only through r!
  const Eigen::MatrixXd Xr = build_design_matrix(radii, 2, 3, 0, false);
  CHECK(Xr(0, 0) == doctest::Approx(6.0));
}

TEST_CASE("design matrix validation") {
  CHECK_THROWS(build_design_matrix({1.0, 1.0}, 2, 0, 0, false));  // duplicate
  CHECK_THROWS(build_design_matrix({1.0, 2.0}, 2, 0, 1, false));  // s>=1 keep
  CHECK_THROWS(build_design_matrix({}, 2, 0, 0, false));
}

TEST_CASE("least squares recovers an exact model to machine precision") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd X(20, 4);
  for (int i = 0; i < X.size(); ++i) X(i / 4, i % 4) = u(rng);
  Eigen::VectorXd b_true(4);
  b_true << 1.5, -2.0, 0.25, 3.0;
  const Eigen::VectorXd y = X * b_true;
  double res = -1.0;
  const Eigen::VectorXd b = lsq_solve(X, y, &res);
  CHECK((b - b_true).norm() < 1e-10);
  CHECK(res < 1e-10);
}

TEST_CASE("least squares matches a long-double normal-equation oracle") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd X(30, 3);
  Eigen::VectorXd y(30);
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 3; ++j) X(i, j) = g(rng);
    y[i] = g(rng);
  }
  const Eigen::VectorXd b = lsq_solve(X, y);
  // independent reference in extended precision
  long double xtx[3][3] = {}, xty[3] = {};
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k)
        xtx[j][k] += static_cast<long double>(X(i, j)) * X(i, k);
      xty[j] += static_cast<long double>(X(i, j)) * y[i];
    }
  // Gaussian elimination on the 3x3 system
  long double a[3][4];
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) a[j][k] = xtx[j][k];
    a[j][3] = xty[j];
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int rr = c + 1; rr < 3; ++rr)
      if (std::abs(static_cast<double>(a[rr][c])) >
          std::abs(static_cast<double>(a[piv][c])))
        piv = rr;
    std::swap(a[c], a[piv]);
    for (int rr = 0; rr < 3; ++rr) {
      if (rr == c) continue;
      const long double f = a[rr][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[rr][k] -= f * a[c][k];
    }
  }
  for (int j = 0; j < 3; ++j)
    CHECK(b[j] == doctest::Approx(static_cast<double>(a[j][3] / a[j][j]))
                      .epsilon(1e-10));
}

TEST_CASE("ill conditioned schedules are rejected") {
  // nearly coincident radii survive construction but fail the solve
  std::vector<double> radii;
  for (int i = 0; i < 8; ++i) radii.push_back(1.0 + 1e-9 * i);
  const Eigen::MatrixXd Xn = build_design_matrix(radii, 2, 0, 0, false);
  CHECK_THROWS(lsq_solve(Xn, Eigen::VectorXd::Ones(8)));
  // nearly identical columns through a tiny radius range
  Eigen::MatrixXd X(5, 3);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j) X(i, j) = std::pow(1.0 + 1e-14 * i, j + 1);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(5);
  CHECK_THROWS(lsq_solve(X, y));
}

TEST_CASE("fitting an exact Steiner series recovers intrinsic volumes") {
  RadiusSchedule sched;
  sched.n = 50;
  sched.r1 = 0.05;
  sched.rn = 1.0;
  const std::vector<double> radii = sched.radii();
  REQUIRE(radii.size() == 50);
  CHECK(radii.front() == doctest::Approx(0.05));
  CHECK(radii.back() == doctest::Approx(1.0));

  struct Case {
    SteinerBody body;
    int d;
  };
  const std::vector<Case> cases = {
      {BallBody{2, 1.0}, 2},
      {BoxBody{Eigen::Vector2d(3.0, 5.0)}, 2},
      {BoxBody{Eigen::Vector3d(1.0, 2.0, 3.0)}, 3},
  };
  for (const auto& c : cases) {
    const std::vector<double> vols = intrinsic_volumes(c.body);
    const std::vector<double> series = steiner_voronoi_series(c.body, radii);
    VoronoiTensorSeries vs;
    vs.radii = radii;
    vs.r = 0;
    vs.s = 0;
    for (double v : series)
      vs.tensors.push_back(SymTensor::scalar(c.d, v));
    const MinkowskiTensorSet fit = fit_series(vs, c.d);
    REQUIRE(static_cast<int>(fit.phi.size()) == c.d + 1);
    for (int j = 0; j <= c.d; ++j) {
      // phi[j] estimates the degree d-j functional, i.e. V_{d-j}
      const double got = fit.phi[j].value(std::span<const int>{});
      CHECK(got == doctest::Approx(vols[c.d - j]).epsilon(1e-8));
    }
    CHECK(fit.max_residual < 1e-8);
  }
}

TEST_CASE("full pipeline on a dense disk sample") {
  // dense sample of the unit disk: Phi_2 = area, Phi_1 = half perimeter
  std::vector<double> coords;
  const double h = 0.02;
  for (double x = -1.0; x <= 1.0; x += h)
    for (double y = -1.0; y <= 1.0; y += h)
      if (x * x + y * y <= 1.0) {
        coords.push_back(x);
        coords.push_back(y);
      }
  const PointCloud cloud(2, std::move(coords));
  RadiusSchedule sched;
  sched.n = 50;
  sched.r1 = 0.04;
  sched.rn = 0.5;
  sched.spacing = 0.02;
  sched.renditions = 2;
  sched.seed = 71;
  const MinkowskiTensorSet est = estimate_minkowski(cloud, 0, 0, sched);
  CHECK(est.phi[0].value(std::span<const int>{}) ==
        doctest::Approx(kPi).epsilon(0.02));
  CHECK(est.phi[1].value(std::span<const int>{}) ==
        doctest::Approx(kPi).epsilon(0.05));
  CHECK(est.phi[2].value(std::span<const int>{}) ==
        doctest::Approx(1.0).epsilon(0.15));
  CHECK(est.renditions == 2);
  CHECK(est.std_error.size() == est.phi.size());
}
