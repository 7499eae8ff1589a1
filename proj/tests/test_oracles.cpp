#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "voromink/beta.hpp"
#include "voromink/oracles.hpp"
#include "voromink/spatial.hpp"

using namespace voromink;

namespace {
constexpr double kPi = std::numbers::pi;
const Eigen::Vector2d kSides35(3.0, 5.0);
const Eigen::Vector2d kOrigin2 = Eigen::Vector2d::Zero();

double trace_sum(const SymTensor& t) {
  double s = 0.0;
  for (int i = 0; i < t.dim(); ++i) s += t.value({i, i});
  return s;
}
}  // namespace

TEST_CASE("rectangle scalar functionals") {
  CHECK(box_minkowski_k(kSides35, kOrigin2, 0, 0, 0)
            .value(std::span<const int>{}) == doctest::Approx(1.0));
  CHECK(box_minkowski_k(kSides35, kOrigin2, 1, 0, 0)
            .value(std::span<const int>{}) == doctest::Approx(8.0));
  CHECK(box_minkowski_k(kSides35, kOrigin2, 2, 0, 0)
            .value(std::span<const int>{}) == doctest::Approx(15.0));
}

TEST_CASE("rectangle rank-2 tensors match the reference values") {
  // centered 3 x 5 rectangle; reference values to four significant digits
  const auto t02_0 = box_minkowski_k(kSides35, kOrigin2, 0, 0, 2);
  CHECK(t02_0.value({0, 0}) == doctest::Approx(1.0 / (4.0 * kPi)));
  CHECK(t02_0.value({1, 1}) == doctest::Approx(1.0 / (4.0 * kPi)));
  CHECK(t02_0.value({0, 1}) == doctest::Approx(0.0));

  const auto t02_1 = box_minkowski_k(kSides35, kOrigin2, 1, 0, 2);
  CHECK(t02_1.value({0, 0}) == doctest::Approx(5.0 / (4.0 * kPi)));
  CHECK(t02_1.value({1, 1}) == doctest::Approx(3.0 / (4.0 * kPi)));

  const auto t20_0 = box_minkowski_k(kSides35, kOrigin2, 0, 2, 0);
  CHECK(t20_0.value({0, 0}) == doctest::Approx(1.125).epsilon(5e-4));
  CHECK(t20_0.value({1, 1}) == doctest::Approx(3.125).epsilon(5e-4));

  const auto t20_1 = box_minkowski_k(kSides35, kOrigin2, 1, 2, 0);
  CHECK(t20_1.value({0, 0}) == doctest::Approx(6.75).epsilon(5e-4));
  CHECK(t20_1.value({1, 1}) == doctest::Approx(14.58).epsilon(5e-4));

  const auto t20_2 = box_minkowski_k(kSides35, kOrigin2, 2, 2, 0);
  CHECK(t20_2.value({0, 0}) == doctest::Approx(5.625).epsilon(5e-4));
  CHECK(t20_2.value({1, 1}) == doctest::Approx(15.63).epsilon(5e-4));

  const auto t11_0 = box_minkowski_k(kSides35, kOrigin2, 0, 1, 1);
  CHECK(t11_0.value({0, 0}) == doctest::Approx(0.4775).epsilon(5e-4));
  CHECK(t11_0.value({1, 1}) == doctest::Approx(0.7958).epsilon(5e-4));

  const auto t11_1 = box_minkowski_k(kSides35, kOrigin2, 1, 1, 1);
  CHECK(t11_1.value({0, 0}) == doctest::Approx(2.387).epsilon(5e-4));
  CHECK(t11_1.value({1, 1}) == doctest::Approx(2.387).epsilon(5e-4));
}

TEST_CASE("odd tensors of a centered box vanish") {
  for (int k = 0; k <= 2; ++k) {
    const auto t01 = box_minkowski_k(kSides35, kOrigin2, k, 0, 1);
    const auto t10 = box_minkowski_k(kSides35, kOrigin2, k, 1, 0);
    for (std::size_t e = 0; e < t01.size(); ++e)
      CHECK(std::abs(t01[e]) < 1e-14);
    for (std::size_t e = 0; e < t10.size(); ++e)
      CHECK(std::abs(t10[e]) < 1e-14);
  }
}

TEST_CASE("translation covariance of the volume tensor") {
  // Phi_d^{1,0} of a box centered at c equals V_d * c / 1!
  const Eigen::Vector2d c(0.7, -1.3);
  const auto t = box_minkowski_k(kSides35, c, 2, 1, 0);
  CHECK(t.value({0}) == doctest::Approx(15.0 * 0.7));
  CHECK(t.value({1}) == doctest::Approx(15.0 * -1.3));
}

TEST_CASE("3-D box scalar functionals and the trace identity") {
  const Eigen::Vector3d sides(1.0, 2.0, 3.0);
  const Eigen::Vector3d c = Eigen::Vector3d::Zero();
  const double vk[4] = {1.0, 6.0, 11.0, 6.0};
  for (int k = 0; k <= 3; ++k)
    CHECK(box_minkowski_k(sides, c, k, 0, 0).value(std::span<const int>{}) ==
          doctest::Approx(vk[k]));
  const auto t = box_minkowski_k(sides, c, 2, 0, 2);
  CHECK(4.0 * kPi * trace_sum(t) == doctest::Approx(11.0).epsilon(1e-12));
  // the surface tensor of a box weights each axis by the facet area of
  // the orthogonal faces: diag entry i = (prod of other sides) / (4 pi)
  CHECK(t.value({0, 0}) == doctest::Approx(6.0 / (4.0 * kPi)));
  CHECK(t.value({1, 1}) == doctest::Approx(3.0 / (4.0 * kPi)));
  CHECK(t.value({2, 2}) == doctest::Approx(2.0 / (4.0 * kPi)));
}

TEST_CASE("shell closed forms") {
  // d=2 annulus radii 1,2: Phi^{0,0}_1 = pi(rho1+rho2) = 3 pi
  CHECK(shell_minkowski(2, 1.0, 2.0, 1, 0, 0).value(std::span<const int>{}) ==
        doctest::Approx(3.0 * kPi));
  // s=2 surface tensor is isotropic with diagonal 0.375
  const auto t = shell_minkowski(2, 1.0, 2.0, 1, 0, 2);
  CHECK(t.value({0, 0}) == doctest::Approx(0.375));
  CHECK(t.value({1, 1}) == doctest::Approx(0.375));
  CHECK(t.value({0, 1}) == doctest::Approx(0.0));
  CHECK(4.0 * kPi * trace_sum(t) ==
        doctest::Approx(3.0 * kPi).epsilon(1e-12));
  // odd rank vanishes by symmetry
  const auto t1 = shell_minkowski(2, 1.0, 2.0, 1, 0, 1);
  CHECK(std::abs(t1.value({0})) < 1e-15);
  // Euler characteristic of the annulus is zero
  CHECK(std::abs(shell_minkowski(2, 1.0, 2.0, 0, 0, 0)
                     .value(std::span<const int>{})) < 1e-14);
  // d=3 trace identity: 4 pi tr Phi^{0,2}_2 = Phi^{0,0}_2
  const auto s3 = shell_minkowski(3, 0.5, 1.0, 2, 0, 2);
  const double phi002 =
      shell_minkowski(3, 0.5, 1.0, 2, 0, 0).value(std::span<const int>{});
  CHECK(4.0 * kPi * trace_sum(s3) == doctest::Approx(phi002).epsilon(1e-12));
  // sphere surface: Phi^{0,0}_2 of a ball (rho1=0... use thin shell limit)
  CHECK(shell_minkowski(3, 0.0, 1.0, 2, 0, 0).value(std::span<const int>{}) ==
        doctest::Approx(2.0 * kPi));  // half of 4 pi
}

TEST_CASE("cut box surface tensor is additive") {
  const Eigen::Vector2d inner(1.0, 2.0), outer(3.0, 5.0);
  const auto t = cut_box_surface(inner, outer, 0, 2);
  // boundary = outer boundary + inner boundary, s even adds
  CHECK(t.value({0, 0}) == doctest::Approx(7.0 / (4.0 * kPi)));
  CHECK(t.value({1, 1}) == doctest::Approx(4.0 / (4.0 * kPi)));
  // s odd: normals of the inner boundary flip, centered boxes cancel
  const auto t1 = cut_box_surface(inner, outer, 0, 1);
  for (std::size_t e = 0; e < t1.size(); ++e) CHECK(std::abs(t1[e]) < 1e-14);
  // degenerate inner box reduces to the plain box
  const Eigen::Vector2d tiny(1e-13, 1e-13);
  const auto t0 = cut_box_surface(tiny, outer, 0, 2);
  const auto want = box_minkowski_k(outer, kOrigin2, 1, 0, 2);
  for (std::size_t e = 0; e < t0.size(); ++e)
    CHECK(std::abs(t0[e] - want[e]) < 1e-12);
}

TEST_CASE("rounded rectangle") {
  const double a1 = 3.0, a2 = 5.0, r0 = 0.25;
  CHECK(rounded_box_2d_phi0(a1, a2, r0) == doctest::Approx(1.0));
  CHECK(rounded_box_2d_phi1(a1, a2, r0) ==
        doctest::Approx(a1 + a2 + kPi * r0));
  CHECK(rounded_box_2d_phi2(a1, a2, r0) ==
        doctest::Approx(a1 * a2 + 2.0 * r0 * (a1 + a2) + kPi * r0 * r0));
  const auto t = rounded_box_2d_phi1_02(a1, a2, r0);
  CHECK(t.value({0, 0}) == doctest::Approx(a2 / (4.0 * kPi) + r0 / 8.0));
  CHECK(t.value({1, 1}) == doctest::Approx(a1 / (4.0 * kPi) + r0 / 8.0));
  CHECK(4.0 * kPi * trace_sum(t) ==
        doctest::Approx(rounded_box_2d_phi1(a1, a2, r0)).epsilon(1e-12));
  // r0 -> 0 recovers the sharp rectangle
  const auto sharp = rounded_box_2d_phi1_02(a1, a2, 1e-9);
  const auto box = box_minkowski_k(kSides35, kOrigin2, 1, 0, 2);
  for (std::size_t e = 0; e < sharp.size(); ++e)
    CHECK(std::abs(sharp[e] - box[e]) < 1e-8);
}

TEST_CASE("intrinsic volumes of the reference bodies") {
  const auto ball = intrinsic_volumes(BallBody{3, 2.0});
  CHECK(ball[0] == doctest::Approx(1.0));
  CHECK(ball[1] == doctest::Approx(8.0));
  CHECK(ball[2] == doctest::Approx(8.0 * kPi));
  CHECK(ball[3] == doctest::Approx(32.0 * kPi / 3.0));
  const auto box = intrinsic_volumes(BoxBody{Eigen::Vector3d(1.0, 2.0, 3.0)});
  CHECK(box[0] == doctest::Approx(1.0));
  CHECK(box[1] == doctest::Approx(6.0));
  CHECK(box[2] == doctest::Approx(11.0));
  CHECK(box[3] == doctest::Approx(6.0));
  // Steiner series of the unit disk: pi (1+R)^2
  const auto series = steiner_voronoi_series(BallBody{2, 1.0}, {0.5, 1.0});
  CHECK(series[0] == doctest::Approx(kPi * 2.25));
  CHECK(series[1] == doctest::Approx(kPi * 4.0));
}

TEST_CASE("beta polytope expected surface: closed forms and quadrature") {
  for (int l : {3, 10, 50, 100}) {
    // d=2, beta=-1/2: E V_1 = pi (l-1)/(l+1)
    CHECK(beta_expected_surface(2, l, -0.5) ==
          doctest::Approx(kPi * (l - 1.0) / (l + 1.0)).epsilon(1e-8));
    // the quadrature path must agree with the closed form continuously
    CHECK(beta_expected_surface(2, l, -0.5 + 1e-9) ==
          doctest::Approx(kPi * (l - 1.0) / (l + 1.0)).epsilon(1e-6));
    CHECK(beta_expected_surface(2, l, 0.5 + 1e-9) ==
          doctest::Approx(beta_expected_surface(2, l, 0.5)).epsilon(1e-6));
  }
  CHECK(beta_expected_surface(2, 10, -0.5) ==
        doctest::Approx(9.0 * kPi / 11.0).epsilon(1e-12));
  // monotone in l, bounded by the equator length of the unit disk
  double prev = 0.0;
  for (int l = 3; l <= 40; l += 5) {
    const double v = beta_expected_surface(2, l, 0.5);
    CHECK(v > prev);
    CHECK(v < kPi);
    prev = v;
  }
}

TEST_CASE("beta polytope expected intrinsic volumes") {
  CHECK(beta_expected_intrinsic(2, 0, 10, 0.5) == doctest::Approx(1.0));
  CHECK(beta_expected_intrinsic(2, 1, 10, -0.5) ==
        doctest::Approx(9.0 * kPi / 11.0).epsilon(1e-10));
  CHECK_THROWS(beta_expected_intrinsic(2, 2, 10, 0.5));
  // d=3 surface expectation is positive and below the ball bound
  const double s3 = beta_expected_intrinsic(3, 2, 20, 0.5);
  CHECK(s3 > 0.0);
  CHECK(s3 < 2.0 * kPi);  // V_2 of the unit ball
}

TEST_CASE("beta polytope expected tensors") {
  // isotropy: diagonal, equal entries; trace identity against E V_1
  const auto t = beta_expected_tensor(2, 1, 10, -0.5, 2);
  CHECK(t.value({0, 0}) == doctest::Approx(9.0 / 88.0).epsilon(1e-10));
  CHECK(t.value({1, 1}) == doctest::Approx(t.value({0, 0})));
  CHECK(t.value({0, 1}) == doctest::Approx(0.0));
  CHECK(4.0 * kPi * trace_sum(t) ==
        doctest::Approx(9.0 * kPi / 11.0).epsilon(1e-10));
  // odd s vanishes
  const auto t1 = beta_expected_tensor(2, 1, 10, -0.5, 1);
  for (std::size_t e = 0; e < t1.size(); ++e) CHECK(t1[e] == 0.0);
}

TEST_CASE("beta sampler matches its own moments") {
  const int d = 2, n = 100000;
  const double beta = 0.5;
  std::vector<Eigen::VectorXd> pts = sample_beta_polytope(d, n, beta, 271);
  REQUIRE(pts.size() == static_cast<std::size_t>(n));
  double sum = 0.0, sumsq = 0.0;
  for (const auto& p : pts) {
    const double r2 = p.squaredNorm();
    CHECK(r2 <= 1.0 + 1e-12);
    sum += r2;
    sumsq += r2 * r2;
  }
  const double mean = sum / n;
  const double want = static_cast<double>(d) / (d + 2.0 * beta + 2.0);
  const double se = std::sqrt((sumsq / n - mean * mean) / n);
  CHECK(std::abs(mean - want) <= 3.0 * se);
  // determinism by seed
  const auto again = sample_beta_polytope(d, 5, beta, 271);
  for (int i = 0; i < 5; ++i)
    CHECK((again[i] - pts[i]).norm() == doctest::Approx(0.0));
}

TEST_CASE("beta sampler hulls match the expected surface area") {
  const int l = 10, m = 300;
  const double beta = -0.5;
  double sum = 0.0, sumsq = 0.0;
  for (int k = 0; k < m; ++k) {
    const auto pts = sample_beta_polytope(2, l, beta, 5000 + k);
    const auto hull = convex_hull_2d(pts);
    double per = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i)
      per += (hull[(i + 1) % hull.size()] - hull[i]).norm();
    const double v1 = per / 2.0;
    sum += v1;
    sumsq += v1 * v1;
  }
  const double mean = sum / m;
  const double se = std::sqrt((sumsq / m - mean * mean) / m);
  CHECK(std::abs(mean - 9.0 * kPi / 11.0) <= 3.0 * se);
}

TEST_CASE("oracle argument validation") {
  CHECK_THROWS(box_minkowski_k(kSides35, kOrigin2, 3, 0, 0));  // k > d
  CHECK_THROWS(box_minkowski_k(kSides35, kOrigin2, 1, 2, 1));  // r+s > 2
  CHECK_THROWS(shell_minkowski(2, 2.0, 1.0, 1, 0, 0));  // rho1 > rho2
  CHECK_THROWS(beta_expected_surface(2, 2, 0.5));       // l <= d
  CHECK_THROWS(beta_expected_surface(2, 10, -1.0));     // beta <= -1
}
