#include "ahdacs/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "ahdacs/cs.hpp"

namespace ahdacs {

DisabledStats disabled_stats(const AggregationTrace& trace, const ClusterTree& tree,
                             int up_to_level) {
  const int top = tree.levels();
  if (up_to_level < 1 || up_to_level > top - 1)
    throw std::out_of_range("disabled_stats: level out of range");

  DisabledStats stats;
  int total_eligible = 0;
  int total_disabled = 0;

  for (int lev = 1; lev <= up_to_level; ++lev) {
    LevelDisabledStats ls;
    ls.level = lev;
    const auto& clusters = tree.level(lev);
    for (int li = 0; li < static_cast<int>(clusters.size()); ++li) {
      const ClusterDecision* d = trace.find(lev, li);
      if (d == nullptr) throw std::invalid_argument("disabled_stats: trace missing a decision");
      if (d->subtree_size <= 3) continue;
      ++ls.eligible;
      if (d->status == DecisionStatus::CsDisabled) {
        ++ls.disabled;
        ls.disabled_clusters.push_back(li);
        if (lev >= 2) {
          const auto& children = clusters[static_cast<std::size_t>(li)].children;
          int disabled_children = 0;
          for (int c : children) {
            const ClusterDecision* cd = trace.find(lev - 1, c);
            if (cd != nullptr && cd->status == DecisionStatus::CsDisabled) ++disabled_children;
          }
          ls.sigma_per_cluster.push_back(static_cast<double>(disabled_children) /
                                         static_cast<double>(children.size()));
        }
      }
    }
    ls.rho = ls.eligible > 0 ? static_cast<double>(ls.disabled) / ls.eligible : 0.0;
    if (lev >= 2 && !ls.sigma_per_cluster.empty()) {
      double sum = 0.0;
      for (double s : ls.sigma_per_cluster) sum += s;
      ls.sigma_mean = sum / static_cast<double>(ls.sigma_per_cluster.size());
      ls.has_sigma = true;
    }
    total_eligible += ls.eligible;
    total_disabled += ls.disabled;
    stats.levels.push_back(std::move(ls));
  }

  stats.zeta_direct =
      total_eligible > 0 ? static_cast<double>(total_disabled) / total_eligible : 0.0;

  // Product expansion: rho_j = rho_i * sigma_i * ... * sigma_{j+1}. Only
  // meaningful when every level above j has a defined sigma.
  bool product_ok = true;
  for (int lev = 2; lev <= up_to_level; ++lev)
    if (!stats.levels[static_cast<std::size_t>(lev - 1)].has_sigma) product_ok = false;
  if (product_ok && total_eligible > 0) {
    double weighted = 0.0;
    for (int j = 1; j <= up_to_level; ++j) {
      double rho_j = stats.levels[static_cast<std::size_t>(up_to_level - 1)].rho;
      for (int t = up_to_level; t > j; --t)
        rho_j *= stats.levels[static_cast<std::size_t>(t - 1)].sigma_mean;
      weighted += rho_j * stats.levels[static_cast<std::size_t>(j - 1)].eligible;
    }
    stats.zeta_product = weighted / total_eligible;
    stats.has_product = true;
  }
  return stats;
}

std::vector<double> mse_per_level(const AggregationTrace& trace, const ClusterTree& tree,
                                  const NodeSet& nodes) {
  const int top = tree.levels();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(top));

  for (int lev = 1; lev <= top; ++lev) {
    const auto& clusters = tree.level(lev);
    double level_sum = 0.0;
    for (int li = 0; li < static_cast<int>(clusters.size()); ++li) {
      const Cluster& cl = clusters[static_cast<std::size_t>(li)];
      std::vector<double> assembled;
      if (lev == 1) {
        assembled = tree.subtree_readings(1, li, nodes);  // heads collect raw readings
      } else if (lev == top) {
        assembled = trace.root_estimate;
      } else {
        assembled.reserve(static_cast<std::size_t>(cl.size()));
        for (int c : cl.children) {
          const ClusterDecision* cd = trace.find(lev - 1, c);
          if (cd == nullptr || cd->delivered.empty() ||
              static_cast<int>(cd->delivered.size()) !=
                  tree.level(lev - 1)[static_cast<std::size_t>(c)].size())
            throw std::invalid_argument("mse_per_level: trace missing delivered vectors");
          assembled.insert(assembled.end(), cd->delivered.begin(), cd->delivered.end());
        }
      }
      std::vector<double> truth = tree.subtree_readings(lev, li, nodes);
      double err = 0.0;
      for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = assembled[i] - truth[i];
        err += d * d;
      }
      level_sum += err / static_cast<double>(truth.size());
    }
    out.push_back(level_sum / static_cast<double>(clusters.size()));
  }
  return out;
}

int prop1_cutoff(const SparsityReport& report, int global_k, int top_level) {
  for (int lev = 1; lev <= top_level - 1; ++lev) {
    const LevelThreshold& t = report.level_thresholds[static_cast<std::size_t>(lev - 1)];
    if (t.has_eligible && static_cast<double>(global_k) > t.value) return lev;
  }
  return 0;
}

ConditionCensus condition_census(const AggregationTrace& adaptive_trace,
                                 const AggregationTrace& global_trace, int global_k,
                                 const ClusterTree& tree) {
  const int top = tree.levels();
  ConditionCensus census;
  census.cutoff_level = prop1_cutoff(adaptive_trace.sparsity, global_k, top);

  for (int lev = census.cutoff_level + 1; lev <= top - 1; ++lev) {
    const auto& clusters = tree.level(lev);
    for (int li = 0; li < static_cast<int>(clusters.size()); ++li) {
      const ClusterDecision* da = adaptive_trace.find(lev, li);
      const ClusterDecision* dg = global_trace.find(lev, li);
      if (da == nullptr || dg == nullptr || da->subtree_size != dg->subtree_size)
        throw std::invalid_argument("condition_census: traces disagree on the tree");

      const int n = da->subtree_size;
      const int k_local = da->sparsity;
      const bool ena = cs_gate(k_local, n);
      const bool eng = cs_gate(global_k, n);
      int condition;
      if (ena && eng) {
        condition = global_k < k_local ? 1 : 4;
      } else if (eng) {
        condition = 2;
      } else if (ena) {
        condition = 3;
      } else {
        condition = 5;
      }
      ++census.counts[static_cast<std::size_t>(condition - 1)];
      ++census.classified;
    }
  }
  return census;
}

}  // namespace ahdacs
