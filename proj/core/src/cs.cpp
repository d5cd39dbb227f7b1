#include "ahdacs/cs.hpp"

#include <cmath>
#include <stdexcept>

#include "ahdacs/rng.hpp"
#include "ahdacs/transform.hpp"

namespace ahdacs {

int measurement_count(int k, int n) {
  if (k < 1) throw std::invalid_argument("measurement_count: k must be >= 1");
  if (n < 2) throw std::invalid_argument("measurement_count: n must be >= 2");
  return static_cast<int>(std::ceil(k * std::log2(static_cast<double>(n))));
}

double gate_threshold(int n) {
  return n / std::log2(static_cast<double>(n));
}

bool cs_gate(int k, int n) {
  if (n < 1) throw std::invalid_argument("cs_gate: n must be >= 1");
  if (n <= 3) return false;
  return k < gate_threshold(n);
}

Eigen::MatrixXd sensing_matrix(int m, int n, std::uint64_t seed) {
  if (m < 1 || m > n) throw std::invalid_argument("sensing_matrix: need 1 <= m <= n");
  Rng rng(seed);
  const double stddev = 1.0 / std::sqrt(static_cast<double>(m));
  Eigen::MatrixXd phi(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) phi(i, j) = stddev * rng.gaussian();
  return phi;
}

std::vector<double> measure(const Eigen::MatrixXd& phi, const std::vector<double>& x) {
  if (phi.cols() != static_cast<Eigen::Index>(x.size()))
    throw std::invalid_argument("measure: dimension mismatch");
  Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd y = phi * v;
  return {y.data(), y.data() + y.size()};
}

RecoveryResult recover(const std::vector<double>& y, const MeasurementPlan& plan) {
  if (plan.measurements < 1) throw std::invalid_argument("recover: plan.measurements must be >= 1");
  if (static_cast<int>(y.size()) != plan.measurements)
    throw std::invalid_argument("recover: measurement vector does not match plan");
  const int n = plan.signal_length;
  const int m = plan.measurements;

  Eigen::MatrixXd phi = sensing_matrix(m, n, plan.matrix_seed);
  // Dictionary over spectra: y = phi * idct(s) = (phi * D^T) s.
  Eigen::MatrixXd dict = phi * dct_basis(n).transpose();
  Eigen::VectorXd norms(n);
  for (int j = 0; j < n; ++j) {
    double nj = dict.col(j).norm();
    norms(j) = (nj > 0.0) ? nj : 1.0;
  }

  Eigen::Map<const Eigen::VectorXd> yv(y.data(), m);
  Eigen::VectorXd residual = yv;
  std::vector<int> support;
  Eigen::VectorXd coeffs;
  bool ridge = false;

  const int iterations = std::min(plan.sparsity, std::min(m, n));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd corr = dict.transpose() * residual;
    int best = -1;
    double best_val = 0.0;
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      double v = std::abs(corr(j)) / norms(j);
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    if (best < 0 || best_val == 0.0) break;
    used[static_cast<std::size_t>(best)] = 1;
    support.push_back(best);

    const int s = static_cast<int>(support.size());
    Eigen::MatrixXd sub(m, s);
    for (int j = 0; j < s; ++j) sub.col(j) = dict.col(support[static_cast<std::size_t>(j)]);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    if (qr.rank() < s) {
      ridge = true;
      Eigen::MatrixXd gram = sub.transpose() * sub;
      gram.diagonal().array() += 1e-10;
      coeffs = gram.ldlt().solve(sub.transpose() * yv);
    } else {
      coeffs = qr.solve(yv);
    }
    residual = yv - sub * coeffs;
  }

  std::vector<double> spectrum(static_cast<std::size_t>(n), 0.0);
  for (std::size_t j = 0; j < support.size(); ++j)
    spectrum[static_cast<std::size_t>(support[j])] = coeffs(static_cast<Eigen::Index>(j));

  RecoveryResult out;
  out.signal = dct_inverse(spectrum);
  out.ridge_fallback = ridge;
  return out;
}

std::uint64_t derive_matrix_seed(std::uint64_t run_seed, int level, int cluster, int round) {
  return seed_chain({run_seed, 0xC5u, static_cast<std::uint64_t>(level),
                     static_cast<std::uint64_t>(cluster), static_cast<std::uint64_t>(round)});
}

}  // namespace ahdacs
