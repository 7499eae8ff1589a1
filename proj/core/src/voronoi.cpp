#include "voromink/voronoi.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace voromink {

namespace {

void validate_schedule(const std::vector<double>& radii, double spacing,
                       int r, int s) {
  if (radii.empty() || radii.front() <= 0.0)
    throw std::invalid_argument("voronoi: radii must be positive");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw std::invalid_argument("voronoi: radii must be strictly ascending");
  if (spacing <= 0.0)
    throw std::invalid_argument("voronoi: spacing must be positive");
  if (r < 0 || s < 0)
    throw std::invalid_argument("voronoi: r, s must be nonnegative");
}

// Entry machinery for sym(p^r (x) w^s): the (i1..ip) entry is the average
// over all ways of assigning r of the p slots to coordinates of p(x) and
// the remaining s to coordinates of w = x - p(x).
struct EntryPlan {
  int p = 0;                            // total rank r+s
  std::vector<std::vector<int>> tuples; // sorted index tuples
  std::vector<std::uint32_t> masks;     // r-subsets of {0..p-1} as bitmasks
  double norm = 1.0;                    // 1 / C(p, r)

  EntryPlan(int d, int r, int s) : p(r + s) {
    tuples = sorted_tuples(d, p);
    for (std::uint32_t m = 0; m < (1u << p); ++m)
      if (std::popcount(m) == r) masks.push_back(m);
    norm = 1.0 / static_cast<double>(masks.size());
  }

  // values[e] for tuple e, given the two coordinate vectors
  void evaluate(const double* pc, const double* wc, double* out) const {
    if (p == 0) {
      out[0] = 1.0;
      return;
    }
    for (std::size_t e = 0; e < tuples.size(); ++e) {
      const auto& J = tuples[e];
      double acc = 0.0;
      for (const std::uint32_t m : masks) {
        double prod = 1.0;
        for (int t = 0; t < p; ++t)
          prod *= ((m >> t) & 1) ? pc[J[t]] : wc[J[t]];
        acc += prod;
      }
      out[e] = acc * norm;
    }
  }
};

struct KahanBlock {
  std::vector<double> sum, comp;
  explicit KahanBlock(std::size_t n) : sum(n, 0.0), comp(n, 0.0) {}
  void add(std::size_t i, double v) {
    const double y = v - comp[i];
    const double t = sum[i] + y;
    comp[i] = (t - sum[i]) - y;
    sum[i] = t;
  }
};

}  // namespace

VoronoiTensorSeries estimate_series(const PointCloud& cloud,
                                    const VoronoiSchedule& schedule, int r,
                                    int s, int threads) {
  return estimate_series_multi(cloud, schedule, {{r, s}}, threads).front();
}

std::vector<VoronoiTensorSeries> estimate_series_multi(
    const PointCloud& cloud, const VoronoiSchedule& schedule,
    const std::vector<std::pair<int, int>>& rs, int threads) {
  if (rs.empty())
    throw std::invalid_argument("estimate_series: no (r, s) pairs");
  for (const auto& [r, s] : rs)
    validate_schedule(schedule.radii, schedule.spacing, r, s);
  if (cloud.size() == 0)
    throw std::invalid_argument("estimate_series: empty cloud");
  const int d = cloud.dim();
  const double a = schedule.spacing;
  const std::vector<double>& radii = schedule.radii;
  const std::size_t nrad = radii.size();
  const double r_max = radii.back();

  std::vector<EntryPlan> plans;
  std::vector<std::size_t> offsets;  // entry offset of each plan
  std::size_t nent = 0;
  for (const auto& [r, s] : rs) {
    plans.emplace_back(d, r, s);
    offsets.push_back(nent);
    nent += plans.back().p == 0 ? 1 : plans.back().tuples.size();
  }

  // region: bounding box of the input inflated so that every lattice point
  // within r_max of the data is enumerated (plus one cell of slack for the
  // random shift/rotation)
  AxisBox region;
  cloud.bounding_box(region.lo, region.hi);
  const double inflate = r_max + std::sqrt(static_cast<double>(d)) * a;
  region.lo.array() -= inflate;
  region.hi.array() += inflate;

  // optional evaluation window: clip the enumeration region, restricting
  // the estimate to lattice points inside the window
  if (!schedule.window_lo.empty() || !schedule.window_hi.empty()) {
    if (schedule.window_lo.size() != static_cast<std::size_t>(d) ||
        schedule.window_hi.size() != static_cast<std::size_t>(d))
      throw std::invalid_argument(
          "estimate_series: evaluation window must have one bound per "
          "dimension");
    for (int j = 0; j < d; ++j) {
      if (schedule.window_lo[j] >= schedule.window_hi[j])
        throw std::invalid_argument(
            "estimate_series: evaluation window is empty");
      region.lo[j] = std::max(region.lo[j], schedule.window_lo[j]);
      region.hi[j] = std::min(region.hi[j], schedule.window_hi[j]);
      if (region.lo[j] >= region.hi[j])
        throw std::invalid_argument(
            "estimate_series: evaluation window does not meet the data");
    }
  }

  const ShiftedGrid grid =
      ShiftedGrid::draw(d, a, schedule.seed, schedule.rotate);
  const GridRange range = grid_range(grid, region);
  const long slabs = range.slab_count();

  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, static_cast<int>(std::min<long>(threads, slabs)));

  // per-slab partial sums, merged in slab order afterwards
  std::vector<std::vector<double>> slab_sums(
      slabs, std::vector<double>(nrad * nent, 0.0));
  std::vector<std::size_t> slab_counts(slabs, 0);
  std::atomic<long> next_slab{0};

  auto worker = [&]() {
    std::vector<double> entries(nent);
    std::vector<double> w(d);
    for (;;) {
      const long slab = next_slab.fetch_add(1);
      if (slab >= slabs) return;
      KahanBlock acc(nrad * nent);
      std::size_t count = 0;
      for_each_in_slab(grid, region, range, slab, [&](const double* x) {
        ++count;
        const NearestResult nn = cloud.nearest(x);
        if (nn.dist >= r_max) return;
        // strict inequality: first radius with R > rho
        const std::size_t bucket = static_cast<std::size_t>(
            std::upper_bound(radii.begin(), radii.end(), nn.dist) -
            radii.begin());
        if (bucket >= nrad) return;
        const double* p = cloud.point(nn.index);
        for (int j = 0; j < d; ++j) w[j] = x[j] - p[j];
        for (std::size_t q = 0; q < plans.size(); ++q) {
          plans[q].evaluate(p, w.data(), entries.data() + offsets[q]);
        }
        for (std::size_t e = 0; e < nent; ++e)
          acc.add(bucket * nent + e, entries[e]);
      });
      slab_sums[slab] = std::move(acc.sum);
      slab_counts[slab] = count;
    }
  };

  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // merge in slab order, then prefix-sum buckets into cumulative tensors
  KahanBlock total(nrad * nent);
  std::size_t grid_points = 0;
  for (long slab = 0; slab < slabs; ++slab) {
    for (std::size_t i = 0; i < nrad * nent; ++i)
      total.add(i, slab_sums[slab][i]);
    grid_points += slab_counts[slab];
  }

  const double cell = std::pow(a, d);
  std::vector<VoronoiTensorSeries> result;
  std::vector<double> running(nent, 0.0);
  std::vector<std::vector<double>> cumulative(nrad);
  for (std::size_t i = 0; i < nrad; ++i) {
    for (std::size_t e = 0; e < nent; ++e)
      running[e] += total.sum[i * nent + e];
    cumulative[i] = running;
  }
  for (std::size_t q = 0; q < plans.size(); ++q) {
    VoronoiTensorSeries out;
    out.radii = radii;
    out.r = rs[q].first;
    out.s = rs[q].second;
    out.spacing = a;
    out.seed = schedule.seed;
    out.rotated = schedule.rotate;
    out.grid_points = grid_points;
    out.tensors.reserve(nrad);
    const std::size_t sz = plans[q].p == 0 ? 1 : plans[q].tuples.size();
    for (std::size_t i = 0; i < nrad; ++i) {
      SymTensor t(d, plans[q].p);
      for (std::size_t e = 0; e < sz; ++e)
        t[e] = cell * cumulative[i][offsets[q] + e];
      out.tensors.push_back(std::move(t));
    }
    result.push_back(std::move(out));
  }
  return result;
}

VoronoiTensorSeries exact_series_oracle(const PointCloud& cloud,
                                        const std::vector<double>& radii,
                                        int r, int s, double spacing) {
  if (spacing <= 0.0) spacing = radii.empty() ? 0.0 : radii.front() / 200.0;
  validate_schedule(radii, spacing, r, s);
  if (cloud.size() > 200 || cloud.dim() > 3)
    throw std::invalid_argument(
        "exact_series_oracle: input too large for the cost budget");
  const int d = cloud.dim();
  const double h = spacing;
  const std::vector<double>& rad = radii;
  const std::size_t nrad = rad.size();
  const double r_max = rad.back();

  const EntryPlan plan(d, r, s);
  const std::size_t nent = plan.p == 0 ? 1 : plan.tuples.size();

  Eigen::VectorXd lo, hi;
  cloud.bounding_box(lo, hi);
  lo.array() -= r_max + h;
  hi.array() += r_max + h;

  std::vector<long> z_lo(d), z_hi(d);
  for (int j = 0; j < d; ++j) {
    z_lo[j] = static_cast<long>(std::floor(lo[j] / h));
    z_hi[j] = static_cast<long>(std::ceil(hi[j] / h));
  }

  KahanBlock acc(nrad * nent);
  std::vector<double> entries(nent), w(d), x(d);
  std::vector<long> idx(z_lo);
  while (true) {
    // midpoint of the lattice cell
    for (int j = 0; j < d; ++j) x[j] = (idx[j] + 0.5) * h;
    const NearestResult nn = cloud.nearest(x.data());
    if (nn.dist <= r_max) {
      const std::size_t bucket = static_cast<std::size_t>(
          std::lower_bound(rad.begin(), rad.end(), nn.dist) - rad.begin());
      if (bucket < nrad) {
        const double* p = cloud.point(nn.index);
        for (int j = 0; j < d; ++j) w[j] = x[j] - p[j];
        plan.evaluate(p, w.data(), entries.data());
        for (std::size_t e = 0; e < nent; ++e)
          acc.add(bucket * nent + e, entries[e]);
      }
    }
    int j = d - 1;
    while (j >= 0 && idx[j] == z_hi[j]) idx[j--] = z_lo[j];
    if (j < 0) break;
    ++idx[j];
  }

  const double cell = std::pow(h, d);
  VoronoiTensorSeries out;
  out.radii = rad;
  out.r = r;
  out.s = s;
  out.spacing = h;
  out.tensors.reserve(nrad);
  std::vector<double> running(nent, 0.0);
  for (std::size_t i = 0; i < nrad; ++i) {
    for (std::size_t e = 0; e < nent; ++e) running[e] += acc.sum[i * nent + e];
    SymTensor t(d, plan.p);
    for (std::size_t e = 0; e < nent; ++e) t[e] = cell * running[e];
    out.tensors.push_back(std::move(t));
  }
  return out;
}

}  // namespace voromink
