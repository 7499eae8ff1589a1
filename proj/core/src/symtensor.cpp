#include "voromink/symtensor.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace voromink {

std::pair<double, double> kappa_omega(int n) {
  if (n < 0) throw std::invalid_argument("kappa_omega: n must be nonnegative");
  const double kappa =
      std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(1.0 + 0.5 * n);
  return {kappa, n * kappa};
}

double unit_ball_volume(int n) { return kappa_omega(n).first; }
double sphere_surface_area(int n) { return kappa_omega(n).second; }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

std::vector<std::vector<int>> sorted_tuples(int dim, int rank) {
  if (dim < 1) throw std::invalid_argument("SymTensor: dim must be positive");
  if (rank < 0)
    throw std::invalid_argument("SymTensor: rank must be nonnegative");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(rank, 0);
  if (rank == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(cur);
    int j = rank - 1;
    while (j >= 0 && cur[j] == dim - 1) --j;
    if (j < 0) break;
    ++cur[j];
    for (int t = j + 1; t < rank; ++t) cur[t] = cur[j];
  }
  return out;
}

SymTensor::SymTensor(int dim, int rank)
    : dim_(dim), rank_(rank), tuples_(sorted_tuples(dim, rank)),
      values_(tuples_.size(), 0.0) {
  if (dim < 1) throw std::invalid_argument("SymTensor: dim must be positive");
  if (rank < 0) throw std::invalid_argument("SymTensor: rank must be nonnegative");
}

SymTensor SymTensor::scalar(int dim, double value) {
  SymTensor t(dim, 0);
  t.values_[0] = value;
  return t;
}

std::size_t SymTensor::tuple_index(std::span<const int> sorted_idx) const {
  std::vector<int> key(sorted_idx.begin(), sorted_idx.end());
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), key);
  if (it == tuples_.end() || *it != key)
    throw std::invalid_argument("SymTensor: invalid index tuple");
  return static_cast<std::size_t>(it - tuples_.begin());
}

double SymTensor::value(std::span<const int> idx) const {
  std::vector<int> key(idx.begin(), idx.end());
  std::sort(key.begin(), key.end());
  return values_[tuple_index(key)];
}

void SymTensor::set(std::span<const int> idx, double v) {
  std::vector<int> key(idx.begin(), idx.end());
  std::sort(key.begin(), key.end());
  values_[tuple_index(key)] = v;
}

double SymTensor::eval(std::span<const Eigen::VectorXd> args) const {
  if (static_cast<int>(args.size()) != rank_)
    throw std::invalid_argument("SymTensor::eval: wrong number of arguments");
  if (rank_ == 0) return values_[0];
  // Sum over all d^p basis combinations; ranks in use are small.
  double sum = 0.0;
  std::vector<int> idx(rank_, 0);
  while (true) {
    double prod = value(idx);
    for (int j = 0; j < rank_; ++j) prod *= args[j][idx[j]];
    sum += prod;
    int j = rank_ - 1;
    while (j >= 0 && idx[j] == dim_ - 1) idx[j--] = 0;
    if (j < 0) break;
    ++idx[j];
  }
  return sum;
}

double SymTensor::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SymTensor& SymTensor::operator+=(const SymTensor& other) {
  if (dim_ != other.dim_ || rank_ != other.rank_)
    throw std::invalid_argument("SymTensor: shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& other) {
  if (dim_ != other.dim_ || rank_ != other.rank_)
    throw std::invalid_argument("SymTensor: shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

SymTensor& SymTensor::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

SymTensor tensor_power(const Eigen::VectorXd& v, int p) {
  const int d = static_cast<int>(v.size());
  SymTensor t(d, p);
  const auto& tuples = t.indices();
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    double prod = 1.0;
    for (int idx : tuples[i]) prod *= v[idx];
    t[i] = prod;
  }
  return t;
}

SymTensor sym_product(const SymTensor& a, const SymTensor& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("sym_product: dimension mismatch");
  const int pa = a.rank();
  const int pb = b.rank();
  const int p = pa + pb;
  SymTensor out(a.dim(), p);
  if (pa == 0) {
    out = b;
    out *= a[0];
    return out;
  }
  if (pb == 0) {
    out = a;
    out *= b[0];
    return out;
  }
  // (A (.) B)(e_J) averages A(e_{J_S}) B(e_{J_{S^c}}) over the C(p,pa)
  // position subsets S; equal to the full symmetrization since A and B
  // are themselves symmetric.
  const double norm = 1.0 / binomial(p, pa);
  const auto& tuples = out.indices();
  std::vector<int> ia(pa), ib(pb);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const auto& J = tuples[t];
    double sum = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
      if (std::popcount(mask) != pa) continue;
      int ka = 0, kb = 0;
      for (int j = 0; j < p; ++j) {
        if (mask & (1u << j))
          ia[ka++] = J[j];
        else
          ib[kb++] = J[j];
      }
      sum += a.value(ia) * b.value(ib);
    }
    out[t] = sum * norm;
  }
  return out;
}

SymTensor metric_power(int dim, int m) {
  SymTensor q(dim, 2);
  for (int i = 0; i < dim; ++i) {
    const int idx[2] = {i, i};
    q.set(idx, 1.0);
  }
  SymTensor result = SymTensor::scalar(dim, 1.0);
  for (int k = 0; k < m; ++k) result = sym_product(result, q);
  return result;
}

SymTensor sphere_moment(int dim, int p) {
  if (dim < 1) throw std::invalid_argument("sphere_moment: dim must be >= 1");
  if (p % 2 != 0) return SymTensor(dim, p);
  const double c =
      2.0 * sphere_surface_area(dim + p) / sphere_surface_area(p + 1);
  SymTensor t = metric_power(dim, p / 2);
  t *= c;
  return t;
}

double trace2(const SymTensor& t) {
  if (t.rank() != 2) throw std::invalid_argument("trace2: rank must be 2");
  double sum = 0.0;
  for (int i = 0; i < t.dim(); ++i) {
    const int idx[2] = {i, i};
    sum += t.value(idx);
  }
  return sum;
}

double multiindex_coefficient(const SymTensor& t, std::span<const int> idx) {
  std::vector<int> key(idx.begin(), idx.end());
  std::sort(key.begin(), key.end());
  const double v = t.value(key);
  // multinomial(p; m_1,...,m_d) from the multiplicities of the tuple
  double coeff = 1.0;
  int total = 0;
  std::size_t i = 0;
  while (i < key.size()) {
    std::size_t j = i;
    while (j < key.size() && key[j] == key[i]) ++j;
    const int m = static_cast<int>(j - i);
    for (int k = 1; k <= m; ++k) coeff = coeff * (++total) / k;
    i = j;
  }
  return coeff * v;
}

Rank2Spectrum rank2_spectrum(const SymTensor& t) {
  if (t.rank() != 2)
    throw std::invalid_argument("rank2_spectrum: rank must be 2");
  const int d = t.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const int idx[2] = {i, j};
      m(i, j) = t.value(idx);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("rank2_spectrum: eigendecomposition failed");

  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = i;
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double aa = std::abs(ev[a]), ab = std::abs(ev[b]);
    if (aa != ab) return aa > ab;
    return ev[a] > ev[b];  // tie in |lambda|: signed value descending
  });

  Rank2Spectrum spec;
  spec.eigenvalues.resize(d);
  spec.eigenvectors.resize(d, d);
  for (int i = 0; i < d; ++i) {
    spec.eigenvalues[i] = ev[order[i]];
    spec.eigenvectors.col(i) = solver.eigenvectors().col(order[i]);
  }
  const double lmax = std::abs(spec.eigenvalues[0]);
  const double lmin = std::abs(spec.eigenvalues[d - 1]);
  spec.anisotropy_ratio = lmax > 0.0 ? lmin / lmax : 0.0;
  return spec;
}

std::string to_json(const SymTensor& t) {
  nlohmann::ordered_json j;
  j["dim"] = t.dim();
  j["rank"] = t.rank();
  nlohmann::ordered_json entries = nlohmann::ordered_json::object();
  const auto& tuples = t.indices();
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < tuples[i].size(); ++k) {
      if (k) key += ',';
      key += std::to_string(tuples[i][k] + 1);
    }
    entries[key] = t[i];
  }
  j["entries"] = entries;
  return j.dump();
}

SymTensor symtensor_from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  SymTensor t(j.at("dim").get<int>(), j.at("rank").get<int>());
  for (const auto& [key, val] : j.at("entries").items()) {
    std::vector<int> idx;
    if (!key.empty()) {
      std::size_t pos = 0;
      while (pos < key.size()) {
        std::size_t next = key.find(',', pos);
        if (next == std::string::npos) next = key.size();
        idx.push_back(std::stoi(key.substr(pos, next - pos)) - 1);
        pos = next + 1;
      }
    }
    t.set(idx, val.get<double>());
  }
  return t;
}

}  // namespace voromink
