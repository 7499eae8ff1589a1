#include "voromink/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace voromink {

namespace {

constexpr std::size_t kBruteForceThreshold = 64;
constexpr std::size_t kLeafSize = 16;

double dist2(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

}  // namespace

PointCloud::PointCloud(int dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1) throw std::invalid_argument("PointCloud: dim must be positive");
  if (coords_.empty() || coords_.size() % dim_ != 0)
    throw std::invalid_argument("PointCloud: empty or ragged coordinate data");
  for (double c : coords_)
    if (!std::isfinite(c))
      throw std::invalid_argument("PointCloud: non-finite coordinate");
  ids_.resize(size());
  for (std::size_t i = 0; i < ids_.size(); ++i) ids_[i] = i;
  build();
}

PointCloud PointCloud::from_rows(const std::vector<Eigen::VectorXd>& points) {
  if (points.empty())
    throw std::invalid_argument("PointCloud: empty point list");
  const int d = static_cast<int>(points.front().size());
  std::vector<double> coords;
  coords.reserve(points.size() * d);
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != d)
      throw std::invalid_argument("PointCloud: inconsistent dimensions");
    for (int i = 0; i < d; ++i) coords.push_back(p[i]);
  }
  return PointCloud(d, std::move(coords));
}

Eigen::VectorXd PointCloud::point_vec(std::size_t i) const {
  Eigen::VectorXd v(dim_);
  const double* p = point(i);
  for (int k = 0; k < dim_; ++k) v[k] = p[k];
  return v;
}

void PointCloud::build() {
  if (size() < kBruteForceThreshold) {
    brute_force_ = true;
  } else {
    nodes_.reserve(2 * size() / kLeafSize + 2);
    root_ = build_node(0, static_cast<std::uint32_t>(size()));
  }
  // inverse permutation: storage slot of each original point index, so
  // point(i) keeps referring to input order after the kd reshuffle
  pos_.resize(size());
  for (std::size_t k = 0; k < ids_.size(); ++k) pos_[ids_[k]] = k;
}

std::uint32_t PointCloud::build_node(std::uint32_t begin, std::uint32_t end) {
  const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  if (end - begin <= kLeafSize) {
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    return id;
  }
  // widest-spread axis, median split
  int axis = 0;
  double best_spread = -1.0;
  for (int a = 0; a < dim_; ++a) {
    double lo = coords_[begin * dim_ + a], hi = lo;
    for (std::uint32_t i = begin; i < end; ++i) {
      const double c = coords_[i * dim_ + a];
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      axis = a;
    }
  }
  const std::uint32_t mid = (begin + end) / 2;
  // index-based nth_element so coordinates and ids stay in sync
  std::vector<std::uint32_t> order(end - begin);
  for (std::uint32_t i = 0; i < end - begin; ++i) order[i] = begin + i;
  std::nth_element(order.begin(), order.begin() + (mid - begin), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return coords_[a * dim_ + axis] < coords_[b * dim_ + axis];
                   });
  std::vector<double> tmp_coords(coords_.begin() + begin * dim_,
                                 coords_.begin() + end * dim_);
  std::vector<std::size_t> tmp_ids(ids_.begin() + begin, ids_.begin() + end);
  for (std::uint32_t i = 0; i < end - begin; ++i) {
    const std::uint32_t src = order[i];
    for (int k = 0; k < dim_; ++k)
      coords_[(begin + i) * dim_ + k] = tmp_coords[(src - begin) * dim_ + k];
    ids_[begin + i] = tmp_ids[src - begin];
  }
  const double split = coords_[mid * dim_ + axis];
  const std::uint32_t left = build_node(begin, mid);
  const std::uint32_t right = build_node(mid, end);
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void PointCloud::search(std::uint32_t node, const double* q, std::size_t& best,
                        double& best_d2) const {
  const Node& n = nodes_[node];
  if (n.axis < 0) {
    for (std::uint32_t i = n.begin; i < n.end; ++i) {
      const double d2 = dist2(q, coords_.data() + i * dim_, dim_);
      if (d2 < best_d2 || (d2 == best_d2 && ids_[i] < best)) {
        best_d2 = d2;
        best = ids_[i];
      }
    }
    return;
  }
  const double delta = q[n.axis] - n.split;
  const std::uint32_t near = delta < 0.0 ? n.left : n.right;
  const std::uint32_t far = delta < 0.0 ? n.right : n.left;
  search(near, q, best, best_d2);
  if (delta * delta <= best_d2) search(far, q, best, best_d2);
}

NearestResult PointCloud::nearest(const double* q) const {
  std::size_t best = size();
  double best_d2 = std::numeric_limits<double>::infinity();
  if (brute_force_) {
    for (std::size_t i = 0; i < size(); ++i) {
      const double d2 = dist2(q, point(i), dim_);
      if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
        best_d2 = d2;
        best = i;
      }
    }
  } else {
    search(root_, q, best, best_d2);
  }
  return {best, std::sqrt(best_d2)};
}

NearestResult PointCloud::nearest(const Eigen::VectorXd& q) const {
  return nearest(q.data());
}

NearestResult PointCloud::nearest_other(std::size_t i) const {
  if (size() < 2)
    throw std::invalid_argument("nearest_other: needs at least 2 points");
  // internal storage index of point with original id i
  const double* q = nullptr;
  std::vector<double> buf(dim_);
  for (std::size_t k = 0; k < size(); ++k)
    if (ids_.empty() ? k == i : ids_[k] == i) {
      q = coords_.data() + k * dim_;
      break;
    }
  std::size_t best = size();
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < size(); ++k) {
    const std::size_t id = ids_.empty() ? k : ids_[k];
    if (id == i) continue;
    const double d2 = dist2(q, coords_.data() + k * dim_, dim_);
    if (d2 < best_d2 || (d2 == best_d2 && id < best)) {
      best_d2 = d2;
      best = id;
    }
  }
  return {best, std::sqrt(best_d2)};
}

double PointCloud::avg_nn_distance() const {
  if (size() < 2)
    throw std::invalid_argument("avg_nn_distance: needs at least 2 points");
  // kd-tree query per point, excluding the point itself
  double sum = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    const double* q = coords_.data() + k * dim_;
    const std::size_t self = ids_[k];
    double best_d2 = std::numeric_limits<double>::infinity();
    if (brute_force_) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (j == k) continue;
        best_d2 = std::min(best_d2, dist2(q, coords_.data() + j * dim_, dim_));
      }
    } else {
      // iterative dual of search() with self exclusion
      std::vector<std::uint32_t> stack{root_};
      while (!stack.empty()) {
        const Node& n = nodes_[stack.back()];
        stack.pop_back();
        if (n.axis < 0) {
          for (std::uint32_t i = n.begin; i < n.end; ++i) {
            if (ids_[i] == self) continue;
            best_d2 =
                std::min(best_d2, dist2(q, coords_.data() + i * dim_, dim_));
          }
          continue;
        }
        const double delta = q[n.axis] - n.split;
        const std::uint32_t near = delta < 0.0 ? n.left : n.right;
        const std::uint32_t far = delta < 0.0 ? n.right : n.left;
        if (delta * delta <= best_d2) stack.push_back(far);
        stack.push_back(near);
      }
    }
    sum += std::sqrt(best_d2);
  }
  return sum / static_cast<double>(size());
}

double PointCloud::min_pairwise_distance() const {
  if (size() < 2)
    throw std::invalid_argument("min_pairwise_distance: needs at least 2 points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i)
    best = std::min(best, nearest_other(i).dist);
  return best;
}

void PointCloud::bounding_box(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const {
  lo.resize(dim_);
  hi.resize(dim_);
  for (int k = 0; k < dim_; ++k) {
    lo[k] = hi[k] = coords_[k];
  }
  for (std::size_t i = 1; i < size(); ++i)
    for (int k = 0; k < dim_; ++k) {
      lo[k] = std::min(lo[k], coords_[i * dim_ + k]);
      hi[k] = std::max(hi[k], coords_[i * dim_ + k]);
    }
}

double window_max_radius(const PointCloud& cloud, const ObservationWindow& w) {
  const int d = cloud.dim();
  if (w.lo.size() != d || w.hi.size() != d)
    throw std::invalid_argument("window_max_radius: dimension mismatch");
  double result = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double* p = cloud.point(i);
    for (int j = 0; j < d; ++j) {
      if (p[j] < w.lo[j] || p[j] > w.hi[j])
        throw std::invalid_argument("window_max_radius: point outside window");
      result = std::min(result, std::min(w.hi[j] - p[j], p[j] - w.lo[j]));
    }
  }
  return result;
}

Eigen::MatrixXd haar_rotation(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("haar_rotation: d must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(d - 1) *= -1.0;
  return q;
}

ShiftedGrid ShiftedGrid::draw(int d, double spacing, std::uint64_t seed,
                              bool rotate) {
  if (spacing <= 0.0)
    throw std::invalid_argument("ShiftedGrid: spacing must be positive");
  ShiftedGrid grid;
  grid.spacing = spacing;
  std::mt19937_64 rng(seed);
  if (rotate) grid.rotation = haar_rotation(d, rng());
  grid.shift.resize(d);
  for (int i = 0; i < d; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    grid.shift[i] = u * spacing;
  }
  return grid;
}

Eigen::VectorXd ShiftedGrid::map(const Eigen::VectorXd& z) const {
  Eigen::VectorXd x = spacing * z;
  if (rotation) x = (*rotation) * x;
  return x + shift;
}

GridRange grid_range(const ShiftedGrid& grid, const AxisBox& region) {
  const int d = static_cast<int>(region.lo.size());
  // preimage box of region - shift under the inverse rotation
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, 1e300);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(d, -1e300);
  const long corners = 1l << d;
  for (long mask = 0; mask < corners; ++mask) {
    Eigen::VectorXd c(d);
    for (int j = 0; j < d; ++j)
      c[j] = ((mask >> j) & 1) ? region.hi[j] : region.lo[j];
    c -= grid.shift;
    if (grid.rotation) c = grid.rotation->transpose() * c;
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  GridRange range;
  range.z_lo.resize(d);
  range.z_hi.resize(d);
  for (int j = 0; j < d; ++j) {
    range.z_lo[j] = static_cast<int>(std::floor(lo[j] / grid.spacing)) - 1;
    range.z_hi[j] = static_cast<int>(std::ceil(hi[j] / grid.spacing)) + 1;
  }
  return range;
}

void for_each_in_slab(const ShiftedGrid& grid, const AxisBox& region,
                      const GridRange& range, long slab,
                      const std::function<void(const double*)>& visit) {
  const int d = static_cast<int>(range.z_lo.size());
  Eigen::VectorXd z(d);
  z[0] = range.z_lo[0] + slab;
  std::vector<int> idx(d);
  for (int j = 1; j < d; ++j) idx[j] = range.z_lo[j];
  Eigen::VectorXd x(d);
  while (true) {
    for (int j = 1; j < d; ++j) z[j] = idx[j];
    x = grid.map(z);
    bool inside = true;
    for (int j = 0; j < d; ++j)
      if (x[j] < region.lo[j] || x[j] > region.hi[j]) {
        inside = false;
        break;
      }
    if (inside) visit(x.data());
    if (d == 1) break;
    int j = d - 1;
    while (j >= 1 && idx[j] == range.z_hi[j]) idx[j--] = range.z_lo[j];
    if (j < 1) break;
    ++idx[j];
  }
}

}  // namespace voromink
