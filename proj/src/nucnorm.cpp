#include "spdcl/nucnorm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "spdcl/error.hpp"

namespace spdcl {

namespace {

constexpr double kOffDiagonalTolerance = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_mass(const std::vector<double>& a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * a[i * n + j] * a[i * n + j];
  return std::sqrt(sum);
}

double frobenius(const std::vector<double>& a) {
  double sum = 0.0;
  for (double v : a) sum += v * v;
  return std::sqrt(sum);
}

}  // namespace

void EmbeddingMatrix::validate() const {
  if (rows == 0 || cols == 0)
    fail(ErrorCategory::kInvalidArgument,
         "embedding matrix '" + sample_id + "' has a zero dimension");
  if (values.size() != rows * cols)
    fail(ErrorCategory::kInvalidArgument,
         "embedding matrix '" + sample_id + "' holds " + std::to_string(values.size()) +
             " values, expected " + std::to_string(rows * cols));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      fail(ErrorCategory::kInvalidArgument,
           "embedding matrix '" + sample_id + "' has a non-finite value at row " +
               std::to_string(i / cols) + ", col " + std::to_string(i % cols));
  }
}

double SingularSpectrum::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  require(a.size() == n * n, "symmetric_eigenvalues: buffer is not n x n");
  // Mirror the upper triangle so the rotation updates can read either half.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a[j * n + i] = a[i * n + j];

  const double scale = frobenius(a);
  if (scale > 0.0) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (off_diagonal_mass(a, n) <= kOffDiagonalTolerance * scale) break;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = a[p * n + q];
          if (apq == 0.0) continue;
          const double app = a[p * n + p];
          const double aqq = a[q * n + q];
          // Rotation angle that annihilates a(p,q); stable form of tan(theta).
          const double theta = (aqq - app) / (2.0 * apq);
          const double t = std::copysign(1.0, theta) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;
          for (std::size_t k = 0; k < n; ++k) {
            const double akp = a[k * n + p];
            const double akq = a[k * n + q];
            a[k * n + p] = c * akp - s * akq;
            a[k * n + q] = s * akp + c * akq;
          }
          for (std::size_t k = 0; k < n; ++k) {
            const double apk = a[p * n + k];
            const double aqk = a[q * n + k];
            a[p * n + k] = c * apk - s * aqk;
            a[q * n + k] = s * apk + c * aqk;
          }
          a[p * n + q] = 0.0;
          a[q * n + p] = 0.0;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
  return eig;
}

SingularSpectrum singular_values(const EmbeddingMatrix& e) {
  e.validate();
  const bool use_columns = e.cols <= e.rows;
  const std::size_t n = use_columns ? e.cols : e.rows;
  std::vector<double> gram(n * n, 0.0);
  if (use_columns) {
    // E^T E, accumulated row by row (upper triangle only).
    for (std::size_t r = 0; r < e.rows; ++r) {
      const double* row = &e.values[r * e.cols];
      for (std::size_t i = 0; i < n; ++i) {
        if (row[i] == 0.0) continue;
        for (std::size_t j = i; j < n; ++j) gram[i * n + j] += row[i] * row[j];
      }
    }
  } else {
    // E E^T.
    for (std::size_t i = 0; i < n; ++i) {
      const double* ri = &e.values[i * e.cols];
      for (std::size_t j = i; j < n; ++j) {
        const double* rj = &e.values[j * e.cols];
        double dot = 0.0;
        for (std::size_t c = 0; c < e.cols; ++c) dot += ri[c] * rj[c];
        gram[i * n + j] = dot;
      }
    }
  }

  SingularSpectrum spectrum;
  spectrum.values = symmetric_eigenvalues(std::move(gram), n);
  for (double& v : spectrum.values) v = std::sqrt(std::max(v, 0.0));
  std::sort(spectrum.values.begin(), spectrum.values.end(), std::greater<>());
  return spectrum;
}

double nuclear_norm(const EmbeddingMatrix& e) {
  return singular_values(e).sum();
}

}  // namespace spdcl
