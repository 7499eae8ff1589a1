#include "voromink/beta.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace voromink {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// 5-point Gauss-Legendre on [a, b]
double gl5(const std::function<double(double)>& f, double a, double b) {
  static const double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double ws[5] = {0.2369268850561891, 0.4786286704993665,
                               0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += ws[i] * f(mid + half * xs[i]);
  return half * s;
}

double quadrature_expected_surface(int d, int l, double beta) {
  // E V_{d-1} = pref * int_{-1}^1 (1-h^2)^E F(h)^{l-d} dh with
  // F(h) = c_in int_{-1}^h (1-x^2)^g dx (a CDF, F(1) = 1),
  // g = beta + (d-1)/2,  E = d beta + (d-1)(d+2)/2,
  // pref = d pi^{d/2} / ((2 beta + d + 1)^{d-1} Gamma(d/2))
  //        * C(l,d) * c_in^d.
  // Substituting h = sin(theta), x = sin(t) turns both integrals into
  // integrals of cos^p over [-pi/2, pi/2], regular for every beta > -1.
  const double g = beta + 0.5 * (d - 1);
  const double E = d * beta + 0.5 * (d - 1) * (d + 2);
  const double c_in = std::tgamma(beta + 0.5 * (d + 2)) /
                      (std::sqrt(M_PI) * std::tgamma(beta + 0.5 * (d + 1)));
  const double pref = d * std::pow(M_PI, 0.5 * d) /
                      (std::pow(2.0 * beta + d + 1.0, d - 1) *
                       std::tgamma(0.5 * d)) *
                      binomial(l, d) * std::pow(c_in, d);

  const auto inner = [&](double t) {
    return std::pow(std::cos(t), 2.0 * g + 1.0);
  };
  const int n = 1 << 16;
  const double dt = M_PI / n;
  // cumulative inner integral at the n+1 grid nodes and the n midpoints,
  // each interval integrated by 5-point Gauss-Legendre
  std::vector<double> Fnode(n + 1), Fmid(n);
  Fnode[0] = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t0 = -0.5 * M_PI + j * dt;
    Fmid[j] = Fnode[j] + gl5(inner, t0, t0 + 0.5 * dt);
    Fnode[j + 1] = Fnode[j] + gl5(inner, t0, t0 + dt);
  }
  const auto outer = [&](double theta, double F) {
    return std::pow(std::cos(theta), 2.0 * E + 1.0) *
           std::pow(c_in * F, l - d);
  };
  // composite Simpson over the same grid
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t0 = -0.5 * M_PI + j * dt;
    total += dt / 6.0 *
             (outer(t0, Fnode[j]) + 4.0 * outer(t0 + 0.5 * dt, Fmid[j]) +
              outer(t0 + dt, Fnode[j + 1]));
  }
  return pref * total;
}

}  // namespace

double beta_expected_surface(int d, int l, double beta) {
  if (d < 2 || l < d + 1 || beta <= -1.0)
    throw std::invalid_argument(
        "beta_expected_surface: need d >= 2, l >= d+1, beta > -1");
  if (d == 2 && beta == -0.5)
    return M_PI * (l - 1.0) / (l + 1.0);
  if (d == 2 && beta == 0.5) {
    double sum = 0.0;
    for (int j = 0; j <= l - 2; ++j)
      sum += binomial(l - 2, j) / binomial(2 * l + j + 3, j + 3) *
             std::pow(2.0, j);
    return 9.0 * M_PI * (l - 1.0) * sum;
  }
  return quadrature_expected_surface(d, l, beta);
}

double beta_expected_intrinsic(int d, int k, int l, double beta) {
  if (k < 0 || k >= d)
    throw std::invalid_argument(
        "beta_expected_intrinsic: k must be in 0..d-1 (the expected volume "
        "k = d has no closed reference; use Monte Carlo)");
  if (k == 0) return 1.0;
  if (k == d - 1) return beta_expected_surface(d, l, beta);
  // two applications of the recursion: down to dimension k, then back up
  // one step so the surface formula (dimension k+1) applies
  const double factor = binomial(d, k) * unit_ball_volume(d) * 2.0 /
                        (unit_ball_volume(d - k) * (k + 1.0) *
                         unit_ball_volume(k + 1));
  return factor *
         beta_expected_surface(k + 1, l, beta + 0.5 * (d - k - 1));
}

SymTensor beta_expected_tensor(int d, int k, int l, double beta, int s) {
  if (s < 0) throw std::invalid_argument("beta_expected_tensor: s >= 0");
  SymTensor t(d, s);
  if (s % 2 != 0) return t;
  const double ev = beta_expected_intrinsic(d, k, l, beta);
  const double coeff =
      2.0 * sphere_surface_area(d + s) * sphere_surface_area(d - k) /
      (factorial(s) * sphere_surface_area(d) * sphere_surface_area(s + 1) *
       sphere_surface_area(d - k + s)) *
      ev;
  return metric_power(d, s / 2) * coeff;
}

std::vector<Eigen::VectorXd> sample_beta_polytope(int d, int l, double beta,
                                                  std::uint64_t seed) {
  if (d < 1 || l < d + 1 || beta <= -1.0)
    throw std::invalid_argument(
        "sample_beta_polytope: need d >= 1, l >= d+1, beta > -1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::gamma_distribution<double> g1(0.5 * d, 1.0);
  std::gamma_distribution<double> g2(beta + 1.0, 1.0);
  std::vector<Eigen::VectorXd> out;
  out.reserve(l);
  for (int i = 0; i < l; ++i) {
    Eigen::VectorXd u(d);
    double norm2;
    do {
      for (int j = 0; j < d; ++j) u[j] = gauss(rng);
      norm2 = u.squaredNorm();
    } while (norm2 == 0.0);
    const double a = g1(rng), b = g2(rng);
    const double rho = std::sqrt(a / (a + b));  // rho^2 ~ Beta(d/2, beta+1)
    out.push_back(u * (rho / std::sqrt(norm2)));
  }
  return out;
}

}  // namespace voromink
