#include "voromink/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace voromink {

namespace {

std::vector<double> parse_row(const std::string& line, const std::string& path,
                              std::size_t lineno) {
  std::string cleaned = line;
  for (char& ch : cleaned)
    if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
  std::istringstream iss(cleaned);
  std::vector<double> row;
  std::string tok;
  while (iss >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": non-numeric field '" + tok + "'");
    row.push_back(v);
  }
  return row;
}

PointCloud load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> coords;
  int dim = 0;
  std::string line;
  std::size_t lineno = 0, rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<double> row = parse_row(line, path, lineno);
    if (row.empty()) continue;
    if (dim == 0)
      dim = static_cast<int>(row.size());
    else if (static_cast<int>(row.size()) != dim)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": ragged row (expected " +
                               std::to_string(dim) + " fields, got " +
                               std::to_string(row.size()) + ")");
    coords.insert(coords.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw std::runtime_error(path + ": zero points");
  return PointCloud(dim, std::move(coords));
}

PointCloud load_voxel_mask(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<long> dims;
  double spacing = 0.0;
  std::string word;
  while (in >> word) {
    if (word == "dims:") {
      std::string rest;
      std::getline(in, rest);
      for (const double v : parse_row(rest, path, 0))
        dims.push_back(static_cast<long>(v));
    } else if (word == "spacing:") {
      in >> spacing;
    } else {
      // first data token; push it back by processing below
      break;
    }
  }
  if (dims.size() < 1 || dims.size() > 3)
    throw std::runtime_error(path + ": voxel mask needs 'dims: n1 [n2 [n3]]'");
  if (spacing <= 0.0)
    throw std::runtime_error(path + ": voxel mask needs positive 'spacing:'");
  const int d = static_cast<int>(dims.size());
  long total = 1;
  for (const long n : dims) total *= n;
  std::vector<double> coords;
  long index = 0;
  // `word` already holds the first mask token
  do {
    if (index >= total)
      throw std::runtime_error(path + ": more mask values than dims imply");
    if (word != "0" && word != "1")
      throw std::runtime_error(path + ": mask values must be 0 or 1, got '" +
                               word + "'");
    if (word == "1") {
      long rem = index;
      std::vector<long> idx(d);
      for (int j = d - 1; j >= 0; --j) {  // last axis fastest
        idx[j] = rem % dims[j];
        rem /= dims[j];
      }
      for (int j = 0; j < d; ++j)
        coords.push_back((idx[j] + 0.5) * spacing);
    }
    ++index;
  } while (in >> word);
  if (index != total)
    throw std::runtime_error(path + ": mask has " + std::to_string(index) +
                             " values, dims imply " + std::to_string(total));
  if (coords.empty()) throw std::runtime_error(path + ": zero points");
  return PointCloud(d, std::move(coords));
}

void spectrum_fields(nlohmann::ordered_json& doc, const SymTensor& t) {
  if (t.rank() != 2) return;
  const Rank2Spectrum spec = rank2_spectrum(t);
  doc["eigenvalues"] = std::vector<double>(
      spec.eigenvalues.data(), spec.eigenvalues.data() + spec.eigenvalues.size());
  std::vector<std::vector<double>> vecs;
  for (int j = 0; j < spec.eigenvectors.cols(); ++j) {
    const auto col = spec.eigenvectors.col(j);
    vecs.emplace_back(col.data(), col.data() + col.size());
  }
  doc["eigenvectors"] = vecs;
  doc["anisotropy_ratio"] = spec.anisotropy_ratio;
}

}  // namespace

PointCloud load_points(const std::string& path, PointFormat format) {
  return format == PointFormat::Csv ? load_csv(path) : load_voxel_mask(path);
}

HeightField read_heightfield(const std::string& path, double pitch,
                             double height_scale) {
  if (pitch <= 0.0)
    throw std::runtime_error("heightfield: pitch must be positive");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  HeightField field;
  field.pitch = pitch;
  field.height_scale = height_scale;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<double> row = parse_row(line, path, lineno);
    if (row.empty()) continue;
    if (field.ny == 0)
      field.ny = static_cast<int>(row.size());
    else if (static_cast<int>(row.size()) != field.ny)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": ragged height grid");
    field.heights.insert(field.heights.end(), row.begin(), row.end());
    ++field.nx;
  }
  if (field.nx == 0) throw std::runtime_error(path + ": empty height grid");
  double sq = 0.0;
  for (const double h : field.heights)
    sq += h * height_scale * h * height_scale;
  field.rms = std::sqrt(sq / field.heights.size());
  return field;
}

PointCloud heightfield_points(const HeightField& field) {
  std::vector<double> coords;
  coords.reserve(3 * field.heights.size());
  for (int i = 0; i < field.nx; ++i)
    for (int j = 0; j < field.ny; ++j) {
      coords.push_back(i * field.pitch);
      coords.push_back(j * field.pitch);
      coords.push_back(field.heights[i * field.ny + j] * field.height_scale);
    }
  return PointCloud(3, std::move(coords));
}

FlatPlaneReference flat_plane_reference(double L, double c) {
  if (L <= 0.0) throw std::invalid_argument("flat_plane_reference: L > 0");
  FlatPlaneReference ref;
  const double slope = std::sqrt(1.0 + c * c);
  ref.area = L * L * slope;
  ref.normal = Eigen::Vector3d(-c, 0.0, 1.0) / slope;
  SymTensor t(3, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      t.set({i, j}, ref.area / (4.0 * M_PI) * ref.normal[i] * ref.normal[j]);
  ref.phi02 = t;
  return ref;
}

void save_points_csv(const std::string& path, const PointCloud& cloud) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double* p = cloud.point(i);
    for (int j = 0; j < cloud.dim(); ++j) {
      if (j) out << ',';
      out << p[j];
    }
    out << '\n';
  }
}

nlohmann::ordered_json tensor_document(const SymTensor& t) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(to_json(t));
  spectrum_fields(doc, t);
  return doc;
}

nlohmann::ordered_json result_document(const MinkowskiTensorSet& set) {
  nlohmann::ordered_json doc;
  doc["d"] = set.d;
  doc["r"] = set.r;
  doc["s"] = set.s;
  nlohmann::ordered_json phi = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < set.phi.size(); ++j) {
    nlohmann::ordered_json entry;
    entry["degree"] = set.d - static_cast<int>(j);
    entry["tensor"] = tensor_document(set.phi[j]);
    entry["stderr"] = nlohmann::ordered_json::parse(to_json(set.std_error[j]));
    phi.push_back(entry);
  }
  doc["phi"] = phi;
  doc["meta"] = {{"radii_first", set.radii.empty() ? 0.0 : set.radii.front()},
                 {"radii_last", set.radii.empty() ? 0.0 : set.radii.back()},
                 {"n_radii", set.radii.size()},
                 {"spacing", set.spacing},
                 {"renditions", set.renditions},
                 {"seed", set.seed},
                 {"rotate", set.rotated},
                 {"grid_points", set.grid_points},
                 {"max_residual", set.max_residual},
                 {"runtime_sec", set.runtime_sec}};
  return doc;
}

nlohmann::ordered_json result_document(const SurfaceEstimate& est) {
  nlohmann::ordered_json doc;
  doc["r"] = est.r;
  doc["s"] = est.s;
  doc["eps"] = est.eps;
  doc["tensor"] = tensor_document(est.tensor);
  if (est.r == 0 && est.s == 2)
    doc["surface_from_trace"] = surface_area_from_trace(est);
  doc["meta"] = {{"spacing", est.spacing},
                 {"seed", est.seed},
                 {"grid_points", est.grid_points}};
  return doc;
}

}  // namespace voromink
