#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace ahdacs {

// Everything a receiver needs to rebuild the sensing matrix and run recovery.
struct MeasurementPlan {
  int sparsity = 0;          // K transmitted with the packet
  int signal_length = 0;     // N
  int measurements = 0;      // M = ceil(K * log2(N))
  std::uint64_t matrix_seed = 0;
};

struct MeasurementPacket {
  MeasurementPlan plan;
  std::vector<double> values;  // length == plan.measurements
  int level = 0;
  int cluster = 0;
};

// M = ceil(K * log2 N). Base-2 log throughout.
int measurement_count(int k, int n);

// CS pays off: N >= 4 and K < N / log2 N. Sizes <= 3 never enable.
bool cs_gate(int k, int n);

double gate_threshold(int n);  // N / log2 N

// Deterministic i.i.d. Gaussian ensemble, mean 0, variance 1/M.
Eigen::MatrixXd sensing_matrix(int m, int n, std::uint64_t seed);

std::vector<double> measure(const Eigen::MatrixXd& phi, const std::vector<double>& x);

struct RecoveryResult {
  std::vector<double> signal;   // x-hat, length N
  bool ridge_fallback = false;  // least squares needed ridge damping
};

// Orthogonal matching pursuit over the DCT dictionary, run for exactly
// plan.sparsity iterations (early exit only on an exactly-zero residual).
RecoveryResult recover(const std::vector<double>& y, const MeasurementPlan& plan);

// Sender and receiver derive the matrix seed from shared run context.
std::uint64_t derive_matrix_seed(std::uint64_t run_seed, int level, int cluster, int round = 0);

}  // namespace ahdacs
