#include "ahdacs/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ahdacs/cs.hpp"
#include "ahdacs/rng.hpp"
#include "ahdacs/transform.hpp"

namespace ahdacs {

std::string to_string(Protocol p) {
  return p == Protocol::AHdacs ? "ahdacs" : "hdacs";
}

std::string to_string(DecisionStatus s) {
  switch (s) {
    case DecisionStatus::Leaf: return "leaf";
    case DecisionStatus::CsEnabled: return "cs-enabled";
    default: return "cs-disabled";
  }
}

const ClusterDecision* AggregationTrace::find(int level, int cluster) const {
  for (const ClusterDecision& d : decisions)
    if (d.level == level && d.cluster == cluster) return &d;
  return nullptr;
}

int global_sparsity(const ClusterTree& tree, const NodeSet& nodes, double fraction) {
  const int top = tree.levels();
  return estimate_sparsity(tree.subtree_readings(top, 0, nodes), fraction);
}

LevelThreshold level_threshold(const ClusterTree& tree, int level) {
  LevelThreshold t;
  for (const Cluster& cl : tree.level(level)) {
    if (cl.size() <= 3) continue;  // gate-degenerate
    t.has_eligible = true;
    t.value = std::max(t.value, gate_threshold(cl.size()));
  }
  return t;
}

namespace {

struct Outbox {
  bool cs = false;
  MeasurementPlan plan;
  std::vector<double> payload;  // measurements if cs, raw vector otherwise
};

Point node_pos(const NodeSet& nodes, int id) {
  return nodes.nodes[static_cast<std::size_t>(id)].position;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

AggregationTrace run_protocol(Protocol proto, const ClusterTree& tree, const NodeSet& nodes,
                              int global_k, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("run: fraction must be in (0,1)");
  const int top = tree.levels();
  const bool adaptive = proto == Protocol::AHdacs;
  if (!adaptive && global_k < 1) throw std::invalid_argument("run_hdacs: global_k must be >= 1");

  AggregationTrace trace;
  trace.protocol = proto;
  trace.fraction = fraction;
  trace.seed = seed;
  trace.energy = EnergyLedger(nodes.size(), top);
  trace.sparsity.global_sparsity =
      adaptive ? global_sparsity(tree, nodes, fraction) : global_k;
  trace.sparsity.cluster_sparsity.resize(static_cast<std::size_t>(top));
  trace.sparsity.level_thresholds.resize(static_cast<std::size_t>(top));
  for (int lev = 1; lev <= top; ++lev) {
    trace.sparsity.level_thresholds[static_cast<std::size_t>(lev - 1)] =
        level_threshold(tree, lev);
    trace.sparsity.cluster_sparsity[static_cast<std::size_t>(lev - 1)].assign(
        tree.level(lev).size(), 0);
  }

  // Outboxes of the level currently feeding upward.
  std::vector<Outbox> below;

  for (int lev = 1; lev <= top; ++lev) {
    const auto& clusters = tree.level(lev);
    std::vector<Outbox> current(clusters.size());

    for (int li = 0; li < static_cast<int>(clusters.size()); ++li) {
      const Cluster& cl = clusters[static_cast<std::size_t>(li)];
      std::vector<double> assembled;

      if (lev == 1) {
        // Step 1: members hand their single reading to the head.
        assembled = tree.subtree_readings(1, li, nodes);
        ClusterDecision leaf_phase;
        leaf_phase.level = 0;
        leaf_phase.cluster = li;
        leaf_phase.subtree_size = cl.size();
        leaf_phase.status = DecisionStatus::Leaf;
        for (int id : cl.members) {
          if (id == cl.head) continue;
          const std::uint64_t bits = kHeaderBits + kWordBits;
          charge(trace.energy, id, cl.head, bits,
                 distance(node_pos(nodes, id), node_pos(nodes, cl.head)), 0);
          leaf_phase.bits_sent += bits;
        }
        trace.decisions.push_back(std::move(leaf_phase));
      } else {
        // Step 2: recover child packets, concatenate in child order.
        assembled.reserve(static_cast<std::size_t>(cl.size()));
        for (int child : cl.children) {
          Outbox& box = below[static_cast<std::size_t>(child)];
          ClusterDecision* child_decision = nullptr;
          for (ClusterDecision& d : trace.decisions)
            if (d.level == lev - 1 && d.cluster == child) child_decision = &d;

          std::vector<double> piece;
          if (box.cs && box.plan.sparsity > 0) {
            RecoveryResult rec = recover(box.payload, box.plan);
            child_decision->ridge_fallback = rec.ridge_fallback;
            if (!all_finite(rec.signal)) {
              child_decision->unrecoverable = true;
              piece.assign(static_cast<std::size_t>(box.plan.signal_length), 0.0);
            } else {
              piece = std::move(rec.signal);
            }
          } else if (box.cs) {
            piece.assign(static_cast<std::size_t>(box.plan.signal_length), 0.0);
          } else {
            piece = box.payload;
          }
          child_decision->delivered = piece;
          assembled.insert(assembled.end(), piece.begin(), piece.end());
        }
      }

      const int n = cl.size();
      int k = 0;
      if (adaptive) {
        bool zero = true;
        for (double v : assembled)
          if (v != 0.0) { zero = false; break; }
        k = zero ? 0 : estimate_sparsity(assembled, fraction);
      } else {
        k = global_k;
      }
      trace.sparsity.cluster_sparsity[static_cast<std::size_t>(lev - 1)]
                                     [static_cast<std::size_t>(li)] = k;

      if (lev == top) {
        trace.root_estimate = std::move(assembled);
        break;
      }

      const bool enabled = cs_gate(k, n);
      const Cluster& parent = tree.level(lev + 1)[static_cast<std::size_t>(cl.parent)];

      ClusterDecision d;
      d.level = lev;
      d.cluster = li;
      d.subtree_size = n;
      d.sparsity = k;
      d.status = enabled ? DecisionStatus::CsEnabled : DecisionStatus::CsDisabled;

      Outbox& box = current[static_cast<std::size_t>(li)];
      if (enabled) {
        box.cs = true;
        box.plan.sparsity = k;
        box.plan.signal_length = n;
        box.plan.matrix_seed = derive_matrix_seed(seed, lev, li);
        if (k > 0) {
          box.plan.measurements = measurement_count(k, n);
          Eigen::MatrixXd phi = sensing_matrix(box.plan.measurements, n, box.plan.matrix_seed);
          box.payload = measure(phi, top_k_signal(assembled, k));
        } else {
          box.plan.measurements = 0;  // all-zero signal: header only
        }
        d.measurements = box.plan.measurements;
      } else {
        box.payload = assembled;
      }
      d.bits_sent = kHeaderBits + kWordBits * static_cast<std::uint64_t>(
                                                  enabled ? d.measurements : n);
      charge(trace.energy, cl.head, parent.head, d.bits_sent,
             distance(node_pos(nodes, cl.head), node_pos(nodes, parent.head)), lev);
      trace.decisions.push_back(std::move(d));
    }

    if (lev == top) break;
    below = std::move(current);
  }

  return trace;
}

}  // namespace

AggregationTrace run_ahdacs(const ClusterTree& tree, const NodeSet& nodes, double fraction,
                            std::uint64_t seed) {
  return run_protocol(Protocol::AHdacs, tree, nodes, 0, fraction, seed);
}

AggregationTrace run_hdacs(const ClusterTree& tree, const NodeSet& nodes, int global_k,
                           double fraction, std::uint64_t seed) {
  return run_protocol(Protocol::Hdacs, tree, nodes, global_k, fraction, seed);
}

}  // namespace ahdacs
