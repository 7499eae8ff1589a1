#ifndef VOROMINK_IO_HPP
#define VOROMINK_IO_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "voromink/lsq.hpp"
#include "voromink/spatial.hpp"
#include "voromink/surface.hpp"

namespace voromink {

enum class PointFormat { Csv, VoxelMask };

/// CSV: one point per line, comma- or whitespace-separated coordinates.
/// Voxel mask: header lines "dims: n1 n2 [n3]" and "spacing: s" followed
/// by n1*n2*... zeros/ones (last axis fastest); set voxels become centers
/// (i+0.5)*s.  Distinct diagnostics for ragged rows, non-numeric fields
/// and empty results.
PointCloud load_points(const std::string& path, PointFormat format);

struct HeightField {
  int nx = 0, ny = 0;
  double pitch = 0.0;
  double height_scale = 1.0;
  std::vector<double> heights;  // row-major, nx rows of ny values
  double rms = 0.0;             // of the scaled heights
};

HeightField read_heightfield(const std::string& path, double pitch,
                             double height_scale);

/// Points (i*pitch, j*pitch, h_ij*scale), d = 3.
PointCloud heightfield_points(const HeightField& field);

/// Expected surface tensor of the graph z = c*x over [0,L]^2 (both sides
/// counted): area A = L^2 sqrt(1+c^2), normal nu = (-c,0,1)/sqrt(1+c^2),
/// Phi^{0,2}_2 = (A/4pi) nu^2,  Phi^{0,0}_2 = A.
struct FlatPlaneReference {
  double area = 0.0;
  Eigen::Vector3d normal;
  SymTensor phi02{3, 2};
};
FlatPlaneReference flat_plane_reference(double L, double c);

void save_points_csv(const std::string& path, const PointCloud& cloud);

/// JSON serialization; every rank-2 tensor carries eigen-spectrum and
/// anisotropy ratio.
nlohmann::ordered_json tensor_document(const SymTensor& t);
nlohmann::ordered_json result_document(const MinkowskiTensorSet& set);
nlohmann::ordered_json result_document(const SurfaceEstimate& est);

}  // namespace voromink

#endif
