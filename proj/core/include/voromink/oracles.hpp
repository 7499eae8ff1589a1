#ifndef VOROMINK_ORACLES_HPP
#define VOROMINK_ORACLES_HPP

#include <variant>
#include <vector>

#include "voromink/lsq.hpp"
#include "voromink/symtensor.hpp"

namespace voromink {

/// Exact Minkowski tensors of an axis-aligned box, d in {2,3}, r+s <= 2.
/// Face-sum evaluation: every k-face contributes the symmetric product of
/// its monomial moment tensor and the spherical integral of u^s over its
/// normal cone (discrete normals for facets, quarter arcs for codim-2
/// faces, octants for d=3 vertices).  phi[j] holds the degree d-j tensor.
MinkowskiTensorSet box_minkowski(const Eigen::VectorXd& sides,
                                 const Eigen::VectorXd& center, int r, int s);

/// convenience: single degree-k tensor from the box oracle
SymTensor box_minkowski_k(const Eigen::VectorXd& sides,
                          const Eigen::VectorXd& center, int k, int r, int s);

/// Exact tensor of the spherical shell rho1 <= |x| <= rho2 (closed form,
/// zero for odd r+s).
SymTensor shell_minkowski(int d, double rho1, double rho2, int k, int r,
                          int s);

/// Surface tensor of the planar cut box R_b minus the open R_a:
/// box(b) + (-1)^s box(a), degree 1.
SymTensor cut_box_surface(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                          int r, int s);

/// Rounded rectangle (parallel set at distance r0 of an a1 x a2 rectangle).
double rounded_box_2d_phi0(double a1, double a2, double r0);      // = 1
double rounded_box_2d_phi1(double a1, double a2, double r0);
double rounded_box_2d_phi2(double a1, double a2, double r0);
SymTensor rounded_box_2d_phi1_02(double a1, double a2, double r0);  // r=0,s=2

/// Convex reference bodies with known intrinsic volumes for exact Steiner
/// series.
struct BallBody {
  int d = 2;
  double rho = 1.0;
};
struct BoxBody {
  Eigen::VectorXd sides;
};
using SteinerBody = std::variant<BallBody, BoxBody>;

/// V_0 .. V_d
std::vector<double> intrinsic_volumes(const SteinerBody& body);

/// Exact neighborhood volumes V_R = sum_k kappa_k R^k V_{d-k}.
std::vector<double> steiner_voronoi_series(const SteinerBody& body,
                                           const std::vector<double>& radii);

}  // namespace voromink

#endif
