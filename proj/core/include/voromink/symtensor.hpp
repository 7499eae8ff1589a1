#ifndef VOROMINK_SYMTENSOR_HPP
#define VOROMINK_SYMTENSOR_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace voromink {

/// Volume kappa_n of the n-dimensional unit ball and surface area
/// omega_n = n * kappa_n of its boundary sphere (omega_0 = 0).
std::pair<double, double> kappa_omega(int n);

double unit_ball_volume(int n);
double sphere_surface_area(int n);

double binomial(int n, int k);

/// All nondecreasing index tuples (i_1 <= ... <= i_p, 0-based entries in
/// [0,d)) in lexicographic order. The empty tuple for p = 0.
std::vector<std::vector<int>> sorted_tuples(int dim, int rank);

/// Symmetric tensor of rank p in dimension d. Stores the evaluations
/// T(e_{i_1},...,e_{i_p}) on basis vectors, indexed by the sorted tuple,
/// not the multinomial-weighted basis coefficients.
class SymTensor {
 public:
  SymTensor() : SymTensor(1, 0) {}
  SymTensor(int dim, int rank);
  static SymTensor scalar(int dim, double value);

  int dim() const { return dim_; }
  int rank() const { return rank_; }

  const std::vector<std::vector<int>>& indices() const { return tuples_; }
  std::size_t size() const { return values_.size(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Evaluation on basis vectors; idx may be in any order (0-based).
  double value(std::span<const int> idx) const;
  void set(std::span<const int> idx, double v);
  double value(std::initializer_list<int> idx) const {
    return value(std::span<const int>(idx.begin(), idx.size()));
  }
  void set(std::initializer_list<int> idx, double v) {
    set(std::span<const int>(idx.begin(), idx.size()), v);
  }

  /// Position of a sorted tuple in the canonical enumeration.
  std::size_t tuple_index(std::span<const int> sorted_idx) const;

  /// Full multilinear evaluation T(x_1,...,x_p).
  double eval(std::span<const Eigen::VectorXd> args) const;

  double max_abs() const;

  SymTensor& operator+=(const SymTensor& other);
  SymTensor& operator-=(const SymTensor& other);
  SymTensor& operator*=(double c);
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(SymTensor a, double c) { return a *= c; }
  friend SymTensor operator*(double c, SymTensor a) { return a *= c; }

 private:
  int dim_;
  int rank_;
  std::vector<std::vector<int>> tuples_;
  std::vector<double> values_;
};

/// p-fold symmetric tensor power of a vector; entry (i_1,...,i_p) is
/// v[i_1]*...*v[i_p]. Rank 0 gives the scalar 1.
SymTensor tensor_power(const Eigen::VectorXd& v, int p);

/// Symmetric tensor product A (.) B (full symmetrization).
SymTensor sym_product(const SymTensor& a, const SymTensor& b);

/// m-th symmetric power of the metric tensor Q = sum_i e_i^2.
SymTensor metric_power(int dim, int m);

/// Integral of u^p over the unit sphere S^{d-1}; zero for odd p,
/// (2 omega_{d+p} / omega_{p+1}) Q^{p/2} for even p.
SymTensor sphere_moment(int dim, int p);

/// Sum of the diagonal evaluations of a rank-2 tensor.
double trace2(const SymTensor& t);

/// Multinomial-weighted basis coefficient t_{i_1...i_p}.
double multiindex_coefficient(const SymTensor& t, std::span<const int> idx);

struct Rank2Spectrum {
  Eigen::VectorXd eigenvalues;   // sorted by |lambda| descending
  Eigen::MatrixXd eigenvectors;  // columns, matching order
  double anisotropy_ratio;       // min|lambda| / max|lambda|, 0 if all zero
};

Rank2Spectrum rank2_spectrum(const SymTensor& t);

/// JSON form {"dim":d,"rank":p,"entries":{"1,1":v,...}} with 1-based keys.
std::string to_json(const SymTensor& t);
SymTensor symtensor_from_json(const std::string& json_text);

}  // namespace voromink

#endif
