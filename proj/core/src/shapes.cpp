#include "voromink/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace voromink {

namespace {

// Membership tolerance: lattice points that land exactly on a shape boundary
// (common for boxes with sides commensurate with the spacing) must be counted
// regardless of floating-point rounding in a*z.
constexpr double kEps = 1e-9;

bool box_contains(const BoxShape& b, const Eigen::VectorXd& x, double eps) {
  for (int i = 0; i < x.size(); ++i) {
    const double c = b.center.size() ? b.center[i] : 0.0;
    if (std::abs(x[i] - c) > 0.5 * b.sides[i] + eps) return false;
  }
  return true;
}

// x in conv{v_1..v_m} iff the phase-1 LP  { lambda >= 0, sum lambda = 1,
// sum lambda v = x }  is feasible.  Dense simplex with Bland's rule; the
// tableau has only d+1 rows so this is cheap.
bool lp_membership(const std::vector<Eigen::VectorXd>& verts,
                   const Eigen::VectorXd& x, double eps) {
  const int d = static_cast<int>(x.size());
  const int m = static_cast<int>(verts.size());
  const int rows = d + 1;
  const int cols = m + rows;  // lambda variables + artificials
  // rhs must be nonnegative for the artificial basis
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < m; ++j) A(i, j) = verts[j][i];
    b[i] = x[i];
  }
  for (int j = 0; j < m; ++j) A(d, j) = 1.0;
  b[d] = 1.0;
  A.rightCols(rows).setIdentity();
  for (int i = 0; i < rows; ++i)
    if (b[i] < 0.0) {
      A.row(i) *= -1.0;
      b[i] *= -1.0;
      A(i, m + i) = 1.0;
    }
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = m + i;
  // reduced costs for minimizing the artificial sum
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  cost.tail(rows).setOnes();
  for (int iter = 0; iter < 200 * cols; ++iter) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
    for (int i = 0; i < rows; ++i) y[i] = cost[basis[i]];
    // y^T after inverse-basis multiply is implicit: keep tableau in canonical
    // form instead (A rows already reduced below), so reduced cost is direct.
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      double rc = cost[j];
      for (int i = 0; i < rows; ++i) rc -= y[i] * A(i, j);
      if (rc < -1e-12) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      if (A(i, enter) > 1e-12) {
        const double ratio = b[i] / A(i, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded: cannot happen in phase 1
    // pivot, keeping the tableau canonical
    const double piv = A(leave, enter);
    A.row(leave) /= piv;
    b[leave] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double f = A(i, enter);
      if (f != 0.0) {
        A.row(i) -= f * A.row(leave);
        b[i] -= f * b[leave];
      }
    }
    basis[leave] = enter;
  }
  double objective = 0.0;
  for (int i = 0; i < rows; ++i)
    if (basis[i] >= m) objective += b[i];
  return objective <= eps;
}

}  // namespace

bool shape_contains(const ShapeSpec& shape, const Eigen::VectorXd& x) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return box_contains(s, x, kEps * s.sides.maxCoeff());
        } else if constexpr (std::is_same_v<T, ShellShape>) {
          const double n2 = x.squaredNorm();
          const double eps = kEps * s.rho2 * s.rho2;
          return n2 >= s.rho1 * s.rho1 - eps && n2 <= s.rho2 * s.rho2 + eps;
        } else if constexpr (std::is_same_v<T, CutBoxShape>) {
          // closure of R_b minus the interior of R_a
          const double eps = kEps * s.outer.maxCoeff();
          for (int i = 0; i < 2; ++i)
            if (std::abs(x[i]) > 0.5 * s.outer[i] + eps) return false;
          bool interior = true;
          for (int i = 0; i < 2; ++i)
            if (std::abs(x[i]) >= 0.5 * s.inner[i] - eps) interior = false;
          return !interior;
        } else if constexpr (std::is_same_v<T, RoundedBoxShape>) {
          const double dx = std::max(std::abs(x[0]) - 0.5 * s.a1, 0.0);
          const double dy = std::max(std::abs(x[1]) - 0.5 * s.a2, 0.0);
          return dx * dx + dy * dy <= s.r0 * s.r0 * (1.0 + 4.0 * kEps);
        } else {
          return lp_membership(s.vertices, x, 1e-9);
        }
      },
      shape);
}

int shape_dim(const ShapeSpec& shape) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>)
          return static_cast<int>(s.sides.size());
        else if constexpr (std::is_same_v<T, ShellShape>)
          return s.dim;
        else if constexpr (std::is_same_v<T, CutBoxShape>)
          return 2;
        else if constexpr (std::is_same_v<T, RoundedBoxShape>)
          return 2;
        else
          return static_cast<int>(s.vertices.front().size());
      },
      shape);
}

AxisBox shape_bounding_box(const ShapeSpec& shape) {
  const int d = shape_dim(shape);
  AxisBox box;
  box.lo.resize(d);
  box.hi.resize(d);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          for (int i = 0; i < d; ++i) {
            const double c = s.center.size() ? s.center[i] : 0.0;
            box.lo[i] = c - 0.5 * s.sides[i];
            box.hi[i] = c + 0.5 * s.sides[i];
          }
        } else if constexpr (std::is_same_v<T, ShellShape>) {
          box.lo.setConstant(-s.rho2);
          box.hi.setConstant(s.rho2);
        } else if constexpr (std::is_same_v<T, CutBoxShape>) {
          box.lo = -0.5 * s.outer;
          box.hi = 0.5 * s.outer;
        } else if constexpr (std::is_same_v<T, RoundedBoxShape>) {
          box.lo << -0.5 * s.a1 - s.r0, -0.5 * s.a2 - s.r0;
          box.hi << 0.5 * s.a1 + s.r0, 0.5 * s.a2 + s.r0;
        } else {
          box.lo = s.vertices.front();
          box.hi = s.vertices.front();
          for (const auto& v : s.vertices) {
            box.lo = box.lo.cwiseMin(v);
            box.hi = box.hi.cwiseMax(v);
          }
        }
      },
      shape);
  return box;
}

PointCloud grid_intersect_shape(const ShapeSpec& shape, double a) {
  if (a <= 0.0)
    throw std::invalid_argument("grid_intersect_shape: spacing must be positive");
  const int d = shape_dim(shape);
  const AxisBox bb = shape_bounding_box(shape);

  // 2-D polytopes are the hot case (many hulls per experiment); precompute
  // half-plane form once instead of running the LP per lattice point.
  std::vector<Eigen::Vector3d> halfplanes;  // n.x <= c  as (nx, ny, c)
  const auto* poly = std::get_if<PolytopeShape>(&shape);
  if (poly && d == 2) {
    const auto hull = convex_hull_2d(poly->vertices);
    if (hull.size() < 3)
      throw std::invalid_argument("grid_intersect_shape: degenerate 2-D hull");
    double scale = 0.0;
    for (const auto& v : hull) scale = std::max(scale, v.norm());
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Eigen::Vector2d e = hull[(i + 1) % hull.size()] - hull[i];
      Eigen::Vector2d n(e.y(), -e.x());  // outward for CCW order
      n.normalize();
      halfplanes.emplace_back(n.x(), n.y(),
                              n.dot(hull[i]) + kEps * std::max(1.0, scale));
    }
  }

  std::vector<int> z_lo(d), z_hi(d);
  for (int j = 0; j < d; ++j) {
    z_lo[j] = static_cast<int>(std::ceil(bb.lo[j] / a - kEps)) - 1;
    z_hi[j] = static_cast<int>(std::floor(bb.hi[j] / a + kEps)) + 1;
  }
  std::vector<double> coords;
  std::vector<int> idx(z_lo);
  Eigen::VectorXd x(d);
  while (true) {
    for (int j = 0; j < d; ++j) x[j] = a * idx[j];
    bool inside;
    if (!halfplanes.empty()) {
      inside = true;
      for (const auto& h : halfplanes)
        if (h[0] * x[0] + h[1] * x[1] > h[2]) {
          inside = false;
          break;
        }
    } else {
      inside = shape_contains(shape, x);
    }
    if (inside)
      for (int j = 0; j < d; ++j) coords.push_back(x[j]);
    int j = d - 1;
    while (j >= 0 && idx[j] == z_hi[j]) idx[j--] = z_lo[j];
    if (j < 0) break;
    ++idx[j];
  }
  if (coords.empty())
    throw std::runtime_error("grid_intersect_shape: no lattice points inside");
  return PointCloud(d, std::move(coords));
}

std::vector<Eigen::Vector2d> convex_hull_2d(
    const std::vector<Eigen::VectorXd>& points) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.emplace_back(p[0], p[1]);
  std::sort(pts.begin(), pts.end(),
            [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
              return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
            });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                          return a == b;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                  const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) -
           (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::Vector2d> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_area(const std::vector<Eigen::Vector2d>& hull) {
  double twice = 0.0;
  const std::size_t n = hull.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = hull[i];
    const auto& q = hull[(i + 1) % n];
    twice += p.x() * q.y() - p.y() * q.x();
  }
  return 0.5 * std::abs(twice);
}

}  // namespace voromink
