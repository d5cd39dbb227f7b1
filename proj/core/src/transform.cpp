#include "ahdacs/transform.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace ahdacs {

namespace {

Eigen::MatrixXd make_dct_basis(int n) {
  Eigen::MatrixXd d(n, n);
  const double scale = std::sqrt(2.0 / n);
  for (int k = 0; k < n; ++k) {
    const double s = (k == 0) ? scale * std::sqrt(0.5) : scale;
    for (int i = 0; i < n; ++i) {
      d(k, i) = s * std::cos(M_PI * (i + 0.5) * k / n);
    }
  }
  return d;
}

}  // namespace

const Eigen::MatrixXd& dct_basis(int n) {
  static std::mutex mu;
  static std::unordered_map<int, Eigen::MatrixXd> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_dct_basis(n)).first;
  return it->second;
}

std::vector<double> dct_forward(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("dct_forward: empty vector");
  const int n = static_cast<int>(x.size());
  Eigen::Map<const Eigen::VectorXd> v(x.data(), n);
  Eigen::VectorXd c = dct_basis(n) * v;
  return {c.data(), c.data() + n};
}

std::vector<double> dct_inverse(const std::vector<double>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("dct_inverse: empty vector");
  const int n = static_cast<int>(coeffs.size());
  Eigen::Map<const Eigen::VectorXd> c(coeffs.data(), n);
  Eigen::VectorXd x = dct_basis(n).transpose() * c;
  return {x.data(), x.data() + n};
}

std::vector<double> SparseSpectrum::densify() const {
  std::vector<double> dense(length, 0.0);
  for (const auto& [idx, val] : coefficients) dense[static_cast<std::size_t>(idx)] = val;
  return dense;
}

SparseSpectrum truncate_spectrum(const std::vector<double>& coeffs, double fraction) {
  if (coeffs.empty()) throw std::invalid_argument("truncate_spectrum: empty vector");
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("truncate_spectrum: fraction must be in (0,1)");

  SparseSpectrum s;
  s.length = coeffs.size();
  s.truncation_fraction = fraction;

  double peak = 0.0;
  for (double c : coeffs) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return s;  // all-zero input: empty spectrum

  const double threshold = fraction * peak;
  for (int i = 0; i < static_cast<int>(coeffs.size()); ++i) {
    if (std::abs(coeffs[static_cast<std::size_t>(i)]) >= threshold)
      s.coefficients.emplace_back(i, coeffs[static_cast<std::size_t>(i)]);
  }
  return s;
}

int estimate_sparsity(const std::vector<double>& readings, double fraction) {
  return truncate_spectrum(dct_forward(readings), fraction).sparsity();
}

std::vector<double> truncated_signal(const std::vector<double>& readings, double fraction) {
  SparseSpectrum s = truncate_spectrum(dct_forward(readings), fraction);
  if (s.sparsity() == 0) return std::vector<double>(readings.size(), 0.0);
  return dct_inverse(s.densify());
}

std::vector<double> top_k_signal(const std::vector<double>& readings, int k) {
  const int n = static_cast<int>(readings.size());
  if (k < 0) throw std::invalid_argument("top_k_signal: k must be >= 0");
  if (k == 0) return std::vector<double>(readings.size(), 0.0);
  if (k >= n) return readings;

  std::vector<double> coeffs = dct_forward(readings);
  std::vector<int> order(readings.size());
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(coeffs[static_cast<std::size_t>(a)]) >
           std::abs(coeffs[static_cast<std::size_t>(b)]);
  });
  std::vector<double> kept(readings.size(), 0.0);
  for (int i = 0; i < k; ++i) {
    const auto idx = static_cast<std::size_t>(order[static_cast<std::size_t>(i)]);
    kept[idx] = coeffs[idx];
  }
  return dct_inverse(kept);
}

}  // namespace ahdacs
