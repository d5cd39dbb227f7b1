#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ahdacs {

// Kept DCT coefficients after magnitude truncation. K is the kept count;
// an all-zero input yields an empty spectrum (K = 0).
struct SparseSpectrum {
  std::size_t length = 0;
  std::vector<std::pair<int, double>> coefficients;  // (index, value), index ascending
  double truncation_fraction = 0.0;

  int sparsity() const { return static_cast<int>(coefficients.size()); }
  std::vector<double> densify() const;
};

// Orthonormal DCT-II basis, rows = frequencies. Cached per length;
// safe to call from multiple threads.
const Eigen::MatrixXd& dct_basis(int n);

std::vector<double> dct_forward(const std::vector<double>& x);
std::vector<double> dct_inverse(const std::vector<double>& coeffs);

SparseSpectrum truncate_spectrum(const std::vector<double>& coeffs, double fraction);

// K of the readings under the given truncation fraction.
int estimate_sparsity(const std::vector<double>& readings, double fraction);

// Readings compressed to their kept coefficients (what a CS-enabled head
// encodes before measuring). Keeps the top-k magnitudes when k is given,
// otherwise the truncation set.
std::vector<double> truncated_signal(const std::vector<double>& readings, double fraction);
std::vector<double> top_k_signal(const std::vector<double>& readings, int k);

}  // namespace ahdacs
