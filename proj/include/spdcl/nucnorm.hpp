#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace spdcl {

/// Token-by-hidden representation of one sample: `rows` tokens, `cols`
/// hidden units, stored row-major.
struct EmbeddingMatrix {
  std::string sample_id;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }

  /// Throws unless rows, cols >= 1, the payload size matches and every value
  /// is finite.
  void validate() const;
};

/// Singular values sorted non-increasing, all >= 0, length min(rows, cols).
struct SingularSpectrum {
  std::vector<double> values;

  double sum() const;
};

/// Eigenvalues of the symmetric n x n matrix `a` (row-major; only the upper
/// triangle is read) by cyclic Jacobi rotations. Stops once the off-diagonal
/// Frobenius mass falls below 1e-12 times the matrix norm, or after 100
/// sweeps. Returned in diagonal order, unsorted.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n);

/// Singular values via the eigenvalues of the smaller Gram matrix
/// (E^T E when cols <= rows, else E E^T); eigenvalues are clamped at zero
/// before the square root.
SingularSpectrum singular_values(const EmbeddingMatrix& e);

/// tr(sqrt(E^T E)): the sum of singular values.
double nuclear_norm(const EmbeddingMatrix& e);

}  // namespace spdcl
