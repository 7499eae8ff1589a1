#ifndef VOROMINK_BETA_HPP
#define VOROMINK_BETA_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "voromink/symtensor.hpp"

namespace voromink {

/// Expected surface intrinsic volume E V_{d-1} of a beta-polytope with l
/// i.i.d. vertices of density c_{d,beta} (1-|x|^2)^beta on the unit ball.
/// Closed forms for d = 2, beta = +-1/2; otherwise high-resolution
/// quadrature of the double-integral representation (sin substitution
/// keeps the integrand regular for all beta > -1).
double beta_expected_surface(int d, int l, double beta);

/// E V_k for k in {0..d-1} via the dimension-reduction recursion
/// E V_k(P^b_{l,d}) = C(d,k) kappa_d / (kappa_k kappa_{d-k})
///                    * E V_k(P^{b+(d-k)/2}_{l,k}),
/// expressed through a surface expectation in dimension k+1.  k = d (the
/// expected volume) has no closed reference here and throws.
double beta_expected_intrinsic(int d, int k, int l, double beta);

/// Isotropy makes every expected tensor proportional to Q^{s/2}:
/// E Phi^{0,s}_k = 1{s even} (2 w_{d+s} w_{d-k}) /
///                 (s! w_d w_{s+1} w_{d-k+s}) * E V_k * Q^{s/2}.
SymTensor beta_expected_tensor(int d, int k, int l, double beta, int s);

/// l i.i.d. beta-distributed points: uniform direction, squared radius
/// Beta(d/2, beta+1).  Exact, rejection-free.
std::vector<Eigen::VectorXd> sample_beta_polytope(int d, int l, double beta,
                                                  std::uint64_t seed);

}  // namespace voromink

#endif
