#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gsmt/matrix.hpp"

namespace gsmt {

/// Integration settings for multivariate normal probabilities.
/// `tol` is the target absolute error, `seed` fixes the randomized lattice
/// shifts, `max_dim` caps the integration dimension, `parallel` selects the
/// OpenMP kernel (the serial path is the reference used in tests).
struct MvnSettings {
  double tol = 1e-7;
  std::uint64_t seed = 12345;
  int max_dim = 20;
  bool parallel = true;
};

/// A probability together with an estimated absolute error bound.
struct TailProbability {
  double value = 0.0;
  double error_bound = 0.0;
};

/// Validated correlation matrix: symmetric within 1e-12, unit diagonal,
/// entries in [-1, 1], smallest eigenvalue >= -1e-9 (tiny negative
/// eigenvalues are clipped to zero and the diagonal renormalized).
class CorrelationMatrix {
 public:
  static CorrelationMatrix validated(Matrix m);

  int dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

 private:
  explicit CorrelationMatrix(Matrix m) : entries_(std::move(m)) {}
  Matrix entries_;
};

/// P(union over d of {Z_d >= bounds_d}) for jointly standard-normal Z with
/// the given correlation. Bounds of +infinity contribute zero and are
/// dropped before integration; any -infinity bound makes the union certain.
/// Deterministic for fixed (inputs, seed), independent of thread count.
TailProbability union_crossing_probability(std::span<const double> bounds,
                                           const CorrelationMatrix& corr,
                                           const MvnSettings& settings);

namespace detail {

/// Eigenvalues (ascending) of a symmetric matrix via cyclic Jacobi;
/// eigenvectors (columns) optionally returned.
std::vector<double> jacobi_eigen(const Matrix& a, Matrix* vectors = nullptr);

/// Cholesky factor of a positive semidefinite matrix; zero pivots produce
/// zero columns. Throws numeric_error if a pivot is materially negative.
Matrix cholesky_psd(const Matrix& a);

/// P(all Z_d < b_d) by randomized-lattice quasi-Monte Carlo over the
/// Cholesky-transformed rectangle. All bounds finite, dim >= 1.
double mvn_cdf_qmc(std::span<const double> bounds, const Matrix& corr, const MvnSettings& settings,
                   double* error_bound);

}  // namespace detail

}  // namespace gsmt
