#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ahdacs/energy.hpp"
#include "ahdacs/topology.hpp"

namespace ahdacs {

inline constexpr std::uint64_t kHeaderBits = 64;  // (K, N, level, cluster, status)
inline constexpr std::uint64_t kWordBits = 32;    // one reading or measurement

enum class Protocol { AHdacs, Hdacs };

std::string to_string(Protocol p);

enum class DecisionStatus { Leaf, CsEnabled, CsDisabled };

std::string to_string(DecisionStatus s);

// One record per transmitting unit. Level 0 entries aggregate the
// member->head collection phase of a level-1 cluster; levels 1..T-1 record
// the cluster head's gate decision and upward transmission.
struct ClusterDecision {
  int level = 0;
  int cluster = 0;
  int subtree_size = 0;            // N_i^(l)
  int sparsity = 0;                // K used by this cluster (0 for leaf entries)
  DecisionStatus status = DecisionStatus::Leaf;
  int measurements = 0;            // M_i^(l), 0 unless cs-enabled
  std::uint64_t bits_sent = 0;
  bool ridge_fallback = false;     // recovery at the parent needed ridge damping
  bool unrecoverable = false;      // recovery produced non-finite values
  std::vector<double> delivered;   // subtree vector available at the parent
};

struct LevelThreshold {
  double value = 0.0;      // max over gate-eligible clusters of N / log2 N
  bool has_eligible = false;
};

struct SparsityReport {
  int global_sparsity = 0;                          // K_T (omniscient oracle)
  std::vector<std::vector<int>> cluster_sparsity;   // [level-1][cluster], levels 1..T
  std::vector<LevelThreshold> level_thresholds;     // [level-1], levels 1..T
};

struct AggregationTrace {
  Protocol protocol = Protocol::AHdacs;
  double fraction = 0.0;
  std::uint64_t seed = 0;
  std::vector<ClusterDecision> decisions;  // levels 0..T-1
  std::vector<double> root_estimate;       // length N
  SparsityReport sparsity;
  EnergyLedger energy;

  const ClusterDecision* find(int level, int cluster) const;
};

// K_T over the canonical (tree-ordered) reading vector.
int global_sparsity(const ClusterTree& tree, const NodeSet& nodes, double fraction);

// K_{i_T} = max over gate-eligible clusters at the level of N / log2 N.
LevelThreshold level_threshold(const ClusterTree& tree, int level);

AggregationTrace run_ahdacs(const ClusterTree& tree, const NodeSet& nodes, double fraction,
                            std::uint64_t seed);

AggregationTrace run_hdacs(const ClusterTree& tree, const NodeSet& nodes, int global_k,
                           double fraction, std::uint64_t seed);

}  // namespace ahdacs
