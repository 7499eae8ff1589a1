#include "voromink/oracles.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace voromink {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// moment tensor of the monomial x^r over a k-face F of the box (r <= 2):
// F has free axes (bitmask), center m and side lengths taken from `sides`.
SymTensor face_moment(const Eigen::VectorXd& m, const Eigen::VectorXd& sides,
                      unsigned free_mask, int r) {
  const int d = static_cast<int>(m.size());
  double area = 1.0;
  for (int i = 0; i < d; ++i)
    if ((free_mask >> i) & 1) area *= sides[i];
  SymTensor t(d, r);
  if (r == 0) {
    t[0] = area;
  } else if (r == 1) {
    for (int i = 0; i < d; ++i) t.set({i}, area * m[i]);
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double v = m[i] * m[j];
        if (i == j && ((free_mask >> i) & 1))
          v += sides[i] * sides[i] / 12.0;  // second moment of the free axis
        t.set({i, j}, area * v);
      }
  }
  return t;
}

// spherical integral of u^s over the normal cone of a box face whose fixed
// axes carry outward signs sigma (s <= 2); codim = number of fixed axes.
SymTensor normal_cone_moment(int d, const std::vector<int>& fixed,
                             const std::vector<int>& sigma, int s) {
  const int codim = static_cast<int>(fixed.size());
  SymTensor t(d, s);
  if (codim == 1) {
    const int i = fixed[0];
    if (s == 0)
      t[0] = 1.0;
    else if (s == 1)
      t.set({i}, static_cast<double>(sigma[0]));
    else
      t.set({i, i}, 1.0);
  } else if (codim == 2) {
    // quarter arc between sigma_i e_i and sigma_j e_j
    const int i = fixed[0], j = fixed[1];
    if (s == 0) {
      t[0] = M_PI / 2.0;
    } else if (s == 1) {
      t.set({i}, static_cast<double>(sigma[0]));
      t.set({j}, static_cast<double>(sigma[1]));
    } else {
      t.set({i, i}, M_PI / 4.0);
      t.set({j, j}, M_PI / 4.0);
      t.set({i, j}, sigma[0] * sigma[1] / 2.0);
    }
  } else {  // codim == 3: spherical octant (d = 3 vertex)
    if (s == 0) {
      t[0] = M_PI / 2.0;
    } else if (s == 1) {
      for (int a = 0; a < 3; ++a)
        t.set({fixed[a]}, sigma[a] * M_PI / 4.0);
    } else {
      for (int a = 0; a < 3; ++a) {
        t.set({fixed[a], fixed[a]}, M_PI / 6.0);
        for (int b = a + 1; b < 3; ++b)
          t.set({fixed[a], fixed[b]}, sigma[a] * sigma[b] / 3.0);
      }
    }
  }
  return t;
}

}  // namespace

SymTensor box_minkowski_k(const Eigen::VectorXd& sides,
                          const Eigen::VectorXd& center, int k, int r,
                          int s) {
  const int d = static_cast<int>(sides.size());
  if (d < 2 || d > 3)
    throw std::invalid_argument("box_minkowski: only d in {2,3}");
  if (r < 0 || s < 0 || r + s > 2)
    throw std::invalid_argument("box_minkowski: only r+s <= 2");
  if (k < 0 || k > d) throw std::invalid_argument("box_minkowski: bad k");
  for (int i = 0; i < d; ++i)
    if (sides[i] <= 0.0)
      throw std::invalid_argument("box_minkowski: sides must be positive");
  Eigen::VectorXd c = center.size() ? center : Eigen::VectorXd::Zero(d);

  if (k == d) {
    // volume tensor (1/r!) integral of x^r over the box; zero for s >= 1
    SymTensor t(d, r + s);
    if (s == 0) {
      SymTensor m = face_moment(c, sides, (1u << d) - 1, r);
      t = m * (1.0 / factorial(r));
    }
    return t;
  }

  const auto [kap, omega] = kappa_omega(d - k + s);
  (void)kap;
  const double norm = 1.0 / (factorial(r) * factorial(s) * omega);
  SymTensor acc(d, r + s);
  for (unsigned free_mask = 0; free_mask < (1u << d); ++free_mask) {
    if (std::popcount(free_mask) != k) continue;
    std::vector<int> fixed;
    for (int i = 0; i < d; ++i)
      if (!((free_mask >> i) & 1)) fixed.push_back(i);
    const int nf = static_cast<int>(fixed.size());
    for (unsigned signs = 0; signs < (1u << nf); ++signs) {
      std::vector<int> sigma(nf);
      Eigen::VectorXd m = c;
      for (int a = 0; a < nf; ++a) {
        sigma[a] = ((signs >> a) & 1) ? 1 : -1;
        m[fixed[a]] += sigma[a] * 0.5 * sides[fixed[a]];
      }
      const SymTensor M = face_moment(m, sides, free_mask, r);
      const SymTensor N = normal_cone_moment(d, fixed, sigma, s);
      acc += sym_product(M, N);
    }
  }
  return acc * norm;
}

MinkowskiTensorSet box_minkowski(const Eigen::VectorXd& sides,
                                 const Eigen::VectorXd& center, int r,
                                 int s) {
  const int d = static_cast<int>(sides.size());
  MinkowskiTensorSet out;
  out.d = d;
  out.r = r;
  out.s = s;
  for (int j = 0; j <= d; ++j) {
    out.phi.push_back(box_minkowski_k(sides, center, d - j, r, s));
    out.std_error.emplace_back(d, r + s);
  }
  return out;
}

SymTensor shell_minkowski(int d, double rho1, double rho2, int k, int r,
                          int s) {
  if (!(0.0 <= rho1 && rho1 < rho2))
    throw std::invalid_argument("shell_minkowski: need 0 <= rho1 < rho2");
  if (k < 0 || k > d - 1)
    throw std::invalid_argument("shell_minkowski: k must be in 0..d-1");
  SymTensor t(d, r + s);
  if ((r + s) % 2 != 0) return t;
  const double omega_dk = kappa_omega(d - k + s).second;
  const double omega_rs = kappa_omega(r + s + 1).second;
  const double omega_big = kappa_omega(d + r + s).second;
  const double sign = ((s + d - 1 - k) % 2 == 0) ? 1.0 : -1.0;
  const double coeff = binomial(d - 1, k) * 2.0 * omega_big /
                       (factorial(r) * factorial(s) * omega_dk * omega_rs) *
                       (std::pow(rho2, r + k) + sign * std::pow(rho1, r + k));
  return metric_power(d, (r + s) / 2) * coeff;
}

SymTensor cut_box_surface(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                          int r, int s) {
  for (int i = 0; i < 2; ++i)
    if (!(0.0 < a[i] && a[i] < b[i]))
      throw std::invalid_argument("cut_box_surface: need 0 < a_i < b_i");
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(2);
  SymTensor outer = box_minkowski_k(b, origin, 1, r, s);
  SymTensor inner = box_minkowski_k(a, origin, 1, r, s);
  const double sign = (s % 2 == 0) ? 1.0 : -1.0;
  return outer + inner * sign;
}

double rounded_box_2d_phi0(double, double, double) { return 1.0; }

double rounded_box_2d_phi1(double a1, double a2, double r0) {
  return (a1 + a2) + M_PI * r0;
}

double rounded_box_2d_phi2(double a1, double a2, double r0) {
  return a1 * a2 + 2.0 * (a1 + a2) * r0 + M_PI * r0 * r0;
}

SymTensor rounded_box_2d_phi1_02(double a1, double a2, double r0) {
  // straight edges as for the sharp rectangle plus the full-circle arc
  // contribution r0/8 * Q (shell formula with rho1 = 0)
  SymTensor t(2, 2);
  t.set({0, 0}, a2 / (4.0 * M_PI) + r0 / 8.0);
  t.set({1, 1}, a1 / (4.0 * M_PI) + r0 / 8.0);
  return t;
}

std::vector<double> intrinsic_volumes(const SteinerBody& body) {
  return std::visit(
      [](const auto& b) -> std::vector<double> {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, BallBody>) {
          std::vector<double> v(b.d + 1);
          for (int j = 0; j <= b.d; ++j)
            v[j] = binomial(b.d, j) * unit_ball_volume(b.d) /
                   unit_ball_volume(b.d - j) * std::pow(b.rho, j);
          return v;
        } else {
          // elementary symmetric polynomials of the side lengths
          const int d = static_cast<int>(b.sides.size());
          std::vector<double> e(d + 1, 0.0);
          e[0] = 1.0;
          for (int i = 0; i < d; ++i)
            for (int j = std::min(i + 1, d); j >= 1; --j)
              e[j] += e[j - 1] * b.sides[i];
          return e;
        }
      },
      body);
}

std::vector<double> steiner_voronoi_series(const SteinerBody& body,
                                           const std::vector<double>& radii) {
  const std::vector<double> v = intrinsic_volumes(body);
  const int d = static_cast<int>(v.size()) - 1;
  std::vector<double> out;
  out.reserve(radii.size());
  for (const double R : radii) {
    if (R < 0.0)
      throw std::invalid_argument("steiner_voronoi_series: negative radius");
    double sum = 0.0;
    for (int k = 0; k <= d; ++k)
      sum += unit_ball_volume(k) * std::pow(R, k) * v[d - k];
    out.push_back(sum);
  }
  return out;
}

}  // namespace voromink
