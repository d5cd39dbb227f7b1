#pragma once

#include <array>
#include <vector>

#include "ahdacs/protocol.hpp"
#include "ahdacs/topology.hpp"

namespace ahdacs {

struct LevelDisabledStats {
  int level = 0;
  int eligible = 0;                  // gate-eligible clusters (size >= 4)
  int disabled = 0;                  // cs-disabled among the eligible
  double rho = 0.0;                  // disabled / eligible (0 when none eligible)
  std::vector<int> disabled_clusters;
  std::vector<double> sigma_per_cluster;  // disabled-children fraction, levels >= 2
  double sigma_mean = 0.0;
  bool has_sigma = false;
};

struct DisabledStats {
  std::vector<LevelDisabledStats> levels;  // levels 1..up_to
  double zeta_direct = 0.0;                // disabled eligible / total eligible, levels <= up_to
  double zeta_product = 0.0;               // via rho_j = rho_i * sigma_i ... sigma_{j+1}
  bool has_product = false;                // product form needs sigma defined at every level
};

// Census of CS-disabled clusters over levels 1..up_to_level (transmitting
// levels only). zeta is computed both by direct count and by the product
// expansion; on trees with dropped cells the direct count is authoritative.
DisabledStats disabled_stats(const AggregationTrace& trace, const ClusterTree& tree,
                             int up_to_level);

// MSE_i = mean over clusters at level i of the mean squared error between
// the vector assembled at the cluster head and the true subtree readings.
// Index 0 holds level 1; the last entry is the root MSE.
std::vector<double> mse_per_level(const AggregationTrace& trace, const ClusterTree& tree,
                                  const NodeSet& nodes);

// Ordering of local sparsity, global sparsity and the gate threshold, per
// transmitting cluster above the first level whose threshold the global
// sparsity exceeds:
//   1: f > K_local > K_T   (both enabled, global needs fewer measurements)
//   2: K_local > f > K_T   (global enables, adaptive sends raw)
//   3: K_T > f > K_local   (adaptive enables, global sends raw)
//   4: f > K_T > K_local   (both enabled, global needs more; ties land here)
//   5: neither enables
struct ConditionCensus {
  std::array<int, 5> counts{};
  int cutoff_level = 0;  // 0 when the premise K_T > K_{i_T} never holds
  int classified = 0;
};

ConditionCensus condition_census(const AggregationTrace& adaptive_trace,
                                 const AggregationTrace& global_trace, int global_k,
                                 const ClusterTree& tree);

// Smallest gate-eligible level whose threshold K_T exceeds (0 if none).
int prop1_cutoff(const SparsityReport& report, int global_k, int top_level);

}  // namespace ahdacs
