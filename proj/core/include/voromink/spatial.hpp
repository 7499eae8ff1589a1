#ifndef VOROMINK_SPATIAL_HPP
#define VOROMINK_SPATIAL_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace voromink {

struct NearestResult {
  std::size_t index;
  double dist;
};

/// Finite point set with an exact nearest-neighbor index (kd-tree with
/// full backtracking; linear scan below a small size threshold).
class PointCloud {
 public:
  PointCloud(int dim, std::vector<double> coords);
  static PointCloud from_rows(const std::vector<Eigen::VectorXd>& points);

  int dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }
  const double* point(std::size_t i) const {
    return coords_.data() + pos_[i] * dim_;
  }
  Eigen::VectorXd point_vec(std::size_t i) const;

  /// Exact nearest point; ties broken by smallest point index.
  NearestResult nearest(const double* q) const;
  NearestResult nearest(const Eigen::VectorXd& q) const;

  /// Nearest point excluding the point itself (for neighbor statistics).
  NearestResult nearest_other(std::size_t i) const;

  double avg_nn_distance() const;
  double min_pairwise_distance() const;

  void bounding_box(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const;

 private:
  struct Node {
    int axis = -1;          // -1 marks a leaf
    double split = 0.0;
    std::uint32_t left = 0, right = 0;
    std::uint32_t begin = 0, end = 0;
  };

  void build();
  std::uint32_t build_node(std::uint32_t begin, std::uint32_t end);
  void search(std::uint32_t node, const double* q, std::size_t& best,
              double& best_d2) const;

  int dim_;
  std::vector<double> coords_;     // reordered during build
  std::vector<std::size_t> ids_;   // original index per stored point
  std::vector<std::size_t> pos_;   // stored slot per original index
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
  bool brute_force_ = false;
};

struct ObservationWindow {
  Eigen::VectorXd lo, hi;
};

/// Minimal directional distance of the cloud to the window boundary.
double window_max_radius(const PointCloud& cloud, const ObservationWindow& w);

/// Haar-distributed rotation (determinant +1).
Eigen::MatrixXd haar_rotation(int d, std::uint64_t seed);

/// Randomly shifted (optionally rotated) lattice a*Z^d: point i maps to
/// rotation * (a*z) + shift with shift uniform in [0,a)^d.
struct ShiftedGrid {
  double spacing;
  Eigen::VectorXd shift;
  std::optional<Eigen::MatrixXd> rotation;

  static ShiftedGrid draw(int d, double spacing, std::uint64_t seed,
                          bool rotate);
  Eigen::VectorXd map(const Eigen::VectorXd& z) const;
};

struct AxisBox {
  Eigen::VectorXd lo, hi;
};

/// Enumerates the grid points falling in `region`, in lexicographic order
/// of the integer lattice coordinate. `slab` identifies the leading-axis
/// slab the point belongs to, for deterministic parallel partitioning.
struct GridRange {
  Eigen::VectorXi z_lo, z_hi;  // inclusive integer bounds (preimage box)
  long slab_count() const { return z_hi[0] - z_lo[0] + 1; }
};

GridRange grid_range(const ShiftedGrid& grid, const AxisBox& region);

/// Visits every grid point of one slab (fixed leading integer coordinate)
/// that lies inside region.
void for_each_in_slab(const ShiftedGrid& grid, const AxisBox& region,
                      const GridRange& range, long slab,
                      const std::function<void(const double*)>& visit);

// ---- analytic test shapes ----------------------------------------------

struct BoxShape {
  Eigen::VectorXd sides;
  Eigen::VectorXd center;  // empty means origin
};
struct ShellShape {
  int dim;
  double rho1, rho2;
};
struct CutBoxShape {
  Eigen::Vector2d inner;  // side lengths a of the removed open box
  Eigen::Vector2d outer;  // side lengths b
};
struct RoundedBoxShape {
  double a1, a2, r0;  // parallel set of a centered rectangle
};
struct PolytopeShape {
  std::vector<Eigen::VectorXd> vertices;
};

using ShapeSpec = std::variant<BoxShape, ShellShape, CutBoxShape,
                               RoundedBoxShape, PolytopeShape>;

bool shape_contains(const ShapeSpec& shape, const Eigen::VectorXd& x);
AxisBox shape_bounding_box(const ShapeSpec& shape);
int shape_dim(const ShapeSpec& shape);

/// All points of a*Z^d inside the shape (boundary inclusive).
PointCloud grid_intersect_shape(const ShapeSpec& shape, double a);

/// 2-D convex hull (counterclockwise vertex order, monotone chain).
std::vector<Eigen::Vector2d> convex_hull_2d(
    const std::vector<Eigen::VectorXd>& points);

double polygon_area(const std::vector<Eigen::Vector2d>& hull);

}  // namespace voromink

#endif
