#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "voromink/oracles.hpp"
#include "voromink/surface.hpp"

using namespace voromink;

namespace {
constexpr double kPi = std::numbers::pi;

PointCloud segment_sample(double h) {
  std::vector<double> coords;
  for (double x = 0.0; x <= 1.0 + 1e-12; x += h) coords.push_back(x);
  return PointCloud(1, std::move(coords));
}

PointCloud shell_sample(double rho1, double rho2, double h) {
  std::vector<double> coords;
  for (double x = -rho2; x <= rho2; x += h)
    for (double y = -rho2; y <= rho2; y += h) {
      const double n2 = x * x + y * y;
      if (n2 >= rho1 * rho1 && n2 <= rho2 * rho2) {
        coords.push_back(x);
        coords.push_back(y);
      }
    }
  return PointCloud(2, std::move(coords));
}

}  // namespace

TEST_CASE("difference-quotient scalar estimator on a segment") {
  // segment [0,1] in d=1: (V_eps - V_{eps^2}) / (2 eps) = 1 - eps exactly
  const PointCloud cloud = segment_sample(0.001);
  const double eps = 0.1;
  const SurfaceEstimate est =
      estimate_surface_scalar_diff(cloud, 0, eps, 0.005, 13);
  CHECK(est.tensor.value(std::span<const int>{}) ==
        doctest::Approx(1.0 - eps).epsilon(0.05));
}

TEST_CASE("s=2 surface tensor of an annulus and the trace identity") {
  const double rho1 = 0.5, rho2 = 1.0;
  const PointCloud cloud = shell_sample(rho1, rho2, 0.004);
  const SurfaceEstimate est =
      estimate_surface_tensor(cloud, 0, 2, 0.05, 0.005, 19);
  const SymTensor want = shell_minkowski(2, rho1, rho2, 1, 0, 2);
  CHECK(est.tensor.value({0, 0}) ==
        doctest::Approx(want.value({0, 0})).epsilon(0.05));
  CHECK(est.tensor.value({1, 1}) ==
        doctest::Approx(want.value({1, 1})).epsilon(0.05));
  CHECK(std::abs(est.tensor.value({0, 1})) < 0.01);
  // 4 pi tr(Phi^{0,2}_1) = Phi^{0,0}_1 = pi (rho1 + rho2)
  const double half_perimeter = kPi * (rho1 + rho2);
  CHECK(surface_area_from_trace(est) ==
        doctest::Approx(half_perimeter).epsilon(0.05));
}

TEST_CASE("odd surface tensors of a symmetric body vanish in the mean") {
  // a single realization fluctuates with the grid shift; average seeds
  const PointCloud cloud = shell_sample(0.5, 1.0, 0.005);
  double mean0 = 0.0, mean1 = 0.0;
  const int m = 8;
  for (int k = 0; k < m; ++k) {
    const SurfaceEstimate est =
        estimate_surface_tensor(cloud, 0, 1, 0.05, 0.006, 7 + k);
    mean0 += est.tensor.value({0});
    mean1 += est.tensor.value({1});
  }
  CHECK(std::abs(mean0 / m) < 0.05);
  CHECK(std::abs(mean1 / m) < 0.05);
}

TEST_CASE("flat plate in 3-D concentrates the normal distribution") {
  std::vector<double> coords;
  const double h = 0.01;
  for (double x = 0.0; x <= 1.0 + 1e-12; x += h)
    for (double y = 0.0; y <= 1.0 + 1e-12; y += h) {
      coords.push_back(x);
      coords.push_back(y);
      coords.push_back(0.0);
    }
  const PointCloud plate(3, std::move(coords));
  const SurfaceEstimate est =
      estimate_surface_tensor(plate, 0, 2, 0.04, 0.01, 3);
  // both normals +/- e3: expected tensor (A / 4pi) e3 e3^T with A = 1
  const double want = 1.0 / (4.0 * kPi);
  CHECK(est.tensor.value({2, 2}) == doctest::Approx(want).epsilon(0.12));
  // in-plane entries collect the half-cylinder rim contribution of the
  // plate edges, of order 3*eps*perimeter/64 relative to the normal entry
  CHECK(std::abs(est.tensor.value({0, 0})) < 0.15 * want);
  CHECK(std::abs(est.tensor.value({1, 1})) < 0.15 * want);
  CHECK(std::abs(est.tensor.value({0, 2})) < 0.02 * want);
}

TEST_CASE("parameter validation and routing") {
  const PointCloud cloud = segment_sample(0.01);
  CHECK_THROWS(estimate_surface_tensor(cloud, 0, 0, 0.05, 0.01, 0));  // s=0
  CHECK_THROWS(estimate_surface_tensor(cloud, 0, 2, 0.01, 0.02, 0));  // a>eps
  CHECK_THROWS(estimate_surface_scalar_diff(cloud, 0, 1.5, 0.001, 0));
  CHECK_THROWS(estimate_surface_scalar_diff(cloud, 0, 0.1, 0.02, 0));  // a>e^2

  SurfaceEstimate wrong;
  wrong.tensor = SymTensor(2, 2);
  wrong.r = 1;
  wrong.s = 1;
  CHECK_THROWS(surface_area_from_trace(wrong));
}
