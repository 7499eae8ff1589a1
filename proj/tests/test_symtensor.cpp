#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "voromink/symtensor.hpp"

using namespace voromink;

namespace {
Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}
}  // namespace

TEST_CASE("kappa and omega match the classical values") {
  CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
  CHECK(unit_ball_volume(4) == doctest::Approx(M_PI * M_PI / 2.0));
  for (int d = 1; d <= 8; ++d)
    CHECK(sphere_surface_area(d) ==
          doctest::Approx(d * unit_ball_volume(d)));
}

TEST_CASE("sorted tuple enumeration has the multiset size") {
  for (int d = 1; d <= 4; ++d)
    for (int p = 0; p <= 4; ++p) {
      const auto tuples = sorted_tuples(d, p);
      CHECK(tuples.size() ==
            static_cast<std::size_t>(std::llround(binomial(d + p - 1, p))));
      for (const auto& t : tuples) {
        for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i - 1] <= t[i]);
      }
    }
}

TEST_CASE("value lookup is order independent") {
  SymTensor t(3, 3);
  t.set({0, 1, 2}, 4.5);
  CHECK(t.value({2, 0, 1}) == doctest::Approx(4.5));
  CHECK(t.value({1, 2, 0}) == doctest::Approx(4.5));
}

TEST_CASE("tensor power stores plain coordinate products") {
  const Eigen::VectorXd x = vec({2.0, -3.0});
  const SymTensor t = tensor_power(x, 2);
  CHECK(t.value({0, 0}) == doctest::Approx(4.0));
  CHECK(t.value({0, 1}) == doctest::Approx(-6.0));
  CHECK(t.value({1, 1}) == doctest::Approx(9.0));
}

TEST_CASE("sym_product agrees with brute-force symmetrization") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  const int d = 3;
  const Eigen::VectorXd x = vec({g(rng), g(rng), g(rng)});
  const Eigen::VectorXd y = vec({g(rng), g(rng), g(rng)});
  const SymTensor prod = sym_product(tensor_power(x, 2), tensor_power(y, 1));
  // (x^2 sym y)(e_i,e_j,e_k) = average over slot assignments
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      for (int k = j; k < d; ++k) {
        const double expect = (x[i] * x[j] * y[k] + x[i] * x[k] * y[j] +
                               x[j] * x[k] * y[i]) /
                              3.0;
        CHECK(prod.value({i, j, k}) == doctest::Approx(expect));
      }
}

TEST_CASE("symmetric product is evaluated correctly on equal arguments") {
  // T = sym(A (x) B) satisfies T(v,..,v) = A(v,..) * B(v,..)
  const Eigen::VectorXd x = vec({1.0, 2.0});
  const Eigen::VectorXd y = vec({-1.0, 0.5});
  const Eigen::VectorXd v = vec({0.3, 0.7});
  const SymTensor prod = sym_product(tensor_power(x, 2), tensor_power(y, 2));
  std::vector<Eigen::VectorXd> args(4, v);
  const double lhs = prod.eval(args);
  const double rhs = std::pow(x.dot(v), 2) * std::pow(y.dot(v), 2);
  CHECK(lhs == doctest::Approx(rhs));
}

TEST_CASE("metric tensor powers") {
  const SymTensor q = metric_power(2, 1);
  CHECK(q.value({0, 0}) == doctest::Approx(1.0));
  CHECK(q.value({0, 1}) == doctest::Approx(0.0));
  CHECK(q.value({1, 1}) == doctest::Approx(1.0));
  // Q(v, v) = |v|^2, Q^2(v,v,v,v) = |v|^4
  const Eigen::VectorXd v = vec({0.6, -0.8});
  std::vector<Eigen::VectorXd> a2(2, v), a4(4, v);
  CHECK(q.eval(a2) == doctest::Approx(1.0));
  CHECK(metric_power(2, 2).eval(a4) == doctest::Approx(1.0));
}

TEST_CASE("sphere moments match closed-form circle integrals") {
  // d = 2: int u_i^2 = pi, int u_1^4 = 3 pi / 4, odd moments vanish
  const SymTensor m2 = sphere_moment(2, 2);
  CHECK(m2.value({0, 0}) == doctest::Approx(M_PI));
  CHECK(m2.value({0, 1}) == doctest::Approx(0.0));
  const SymTensor m4 = sphere_moment(2, 4);
  CHECK(m4.value({0, 0, 0, 0}) == doctest::Approx(3.0 * M_PI / 4.0));
  CHECK(sphere_moment(2, 3).max_abs() == doctest::Approx(0.0));
  // d = 3: int u_i^2 = 4 pi / 3
  CHECK(sphere_moment(3, 2).value({2, 2}) ==
        doctest::Approx(4.0 * M_PI / 3.0));
}

TEST_CASE("sphere moments agree with Monte Carlo") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  const int d = 3, p = 4;
  const int n = 200000;
  SymTensor mc(d, p);
  for (int it = 0; it < n; ++it) {
    Eigen::VectorXd u(d);
    for (int i = 0; i < d; ++i) u[i] = g(rng);
    u.normalize();
    const SymTensor t = tensor_power(u, p);
    for (std::size_t e = 0; e < mc.size(); ++e) mc[e] += t[e];
  }
  mc *= sphere_surface_area(d) / n;
  const SymTensor exact = sphere_moment(d, p);
  for (std::size_t e = 0; e < mc.size(); ++e)
    CHECK(mc[e] == doctest::Approx(exact[e]).epsilon(0.05).scale(1.0));
}

TEST_CASE("trace of a rank-2 tensor") {
  SymTensor t(3, 2);
  t.set({0, 0}, 1.0);
  t.set({1, 1}, 2.0);
  t.set({2, 2}, 3.5);
  t.set({0, 2}, -9.0);  // off-diagonal must not affect the trace
  CHECK(trace2(t) == doctest::Approx(6.5));
}

TEST_CASE("rank-2 spectrum ordering and anisotropy ratio") {
  SymTensor t(2, 2);
  t.set({0, 0}, 3.0);
  t.set({1, 1}, -1.0);
  const Rank2Spectrum spec = rank2_spectrum(t);
  CHECK(spec.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(spec.eigenvalues[1] == doctest::Approx(-1.0));
  CHECK(spec.anisotropy_ratio == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(spec.eigenvectors.col(0).dot(vec({1.0, 0.0}))) ==
        doctest::Approx(1.0));
  // rank-one tensor: ratio 0
  SymTensor one(2, 2);
  one.set({0, 0}, 2.0);
  CHECK(rank2_spectrum(one).anisotropy_ratio == doctest::Approx(0.0));
}

TEST_CASE("multiindex coefficients carry the multinomial weight") {
  SymTensor t(3, 2);
  t.set({0, 0}, 1.5);
  t.set({0, 1}, 2.0);
  const std::vector<int> diag{0, 0}, off{1, 0};
  CHECK(multiindex_coefficient(t, diag) == doctest::Approx(1.5));
  CHECK(multiindex_coefficient(t, off) == doctest::Approx(4.0));
  SymTensor u(3, 3);
  u.set({0, 0, 1}, 1.0);
  u.set({0, 1, 2}, 1.0);
  const std::vector<int> two{0, 0, 1}, three{2, 1, 0};
  CHECK(multiindex_coefficient(u, two) == doctest::Approx(3.0));
  CHECK(multiindex_coefficient(u, three) == doctest::Approx(6.0));
}

TEST_CASE("json round trip") {
  SymTensor t(2, 2);
  t.set({0, 0}, 1.25);
  t.set({0, 1}, -0.5);
  t.set({1, 1}, 3.0);
  const auto doc = to_json(t);
  const SymTensor back = symtensor_from_json(doc);
  CHECK(back.dim() == 2);
  CHECK(back.rank() == 2);
  for (std::size_t e = 0; e < t.size(); ++e)
    CHECK(back[e] == doctest::Approx(t[e]));
}

TEST_CASE("dimension and rank mismatches are rejected") {
  CHECK_THROWS(SymTensor(0, 1));
  CHECK_THROWS(SymTensor(2, -1));
  SymTensor a(2, 1), b(3, 1);
  CHECK_THROWS(a += b);
}
