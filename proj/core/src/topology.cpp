#include "ahdacs/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ahdacs/rng.hpp"

namespace ahdacs {

NodeSet place_nodes(int count, double extent, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("place_nodes: count must be >= 1");
  if (extent <= 0.0) throw std::invalid_argument("place_nodes: extent must be > 0");

  Rng rng(mix64(seed, 0x9a11ULL));
  std::vector<Point> positions;
  positions.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    positions.push_back({rng.uniform(0.0, extent), rng.uniform(0.0, extent)});
  std::sort(positions.begin(), positions.end(), [](Point a, Point b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });

  NodeSet set;
  set.nodes.reserve(positions.size());
  for (int i = 0; i < count; ++i) set.nodes.push_back({i, positions[static_cast<std::size_t>(i)], 0.0});

  const Point center{extent / 2.0, extent / 2.0};
  double best = std::numeric_limits<double>::infinity();
  for (const SensorNode& n : set.nodes) {
    double d = distance(n.position, center);
    if (d < best) {
      best = d;
      set.sink_id = n.id;
    }
  }
  return set;
}

void assign_readings(NodeSet& nodes, const ScalarField& field) {
  for (SensorNode& n : nodes.nodes) n.reading = field.sample(n.position);
}

const std::vector<Cluster>& ClusterTree::level(int i) const {
  if (i < 1 || i > levels()) throw std::out_of_range("ClusterTree::level: level out of range");
  return levels_[static_cast<std::size_t>(i - 1)];
}

std::vector<Cluster>& ClusterTree::level_mutable(int i) {
  if (i < 1 || i > levels()) throw std::out_of_range("ClusterTree::level: level out of range");
  return levels_[static_cast<std::size_t>(i - 1)];
}

std::vector<double> ClusterTree::subtree_readings(int level, int cluster,
                                                  const NodeSet& nodes) const {
  const auto& lv = this->level(level);
  if (cluster < 0 || cluster >= static_cast<int>(lv.size()))
    throw std::out_of_range("subtree_readings: cluster index out of range");
  const Cluster& cl = lv[static_cast<std::size_t>(cluster)];
  std::vector<double> out;
  out.reserve(cl.members.size());
  for (int id : cl.members) out.push_back(nodes.nodes[static_cast<std::size_t>(id)].reading);
  return out;
}

namespace {

// Subcells of a cell in row-major order. Square n splits k x k; other n
// splits into strips along one axis, alternating per depth so cells stay
// roughly square.
std::vector<Cell> split_cell(const Cell& c, int n, int depth) {
  // Keep far edges exact so the subcells partition the parent.
  auto cut = [](double lo, double hi, int parts, int i) {
    return i == parts ? hi : lo + i * ((hi - lo) / parts);
  };
  std::vector<Cell> cells;
  const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (k * k == n) {
    for (int r = 0; r < k; ++r)
      for (int q = 0; q < k; ++q)
        cells.push_back({cut(c.x0, c.x1, k, q), cut(c.y0, c.y1, k, r),
                         cut(c.x0, c.x1, k, q + 1), cut(c.y0, c.y1, k, r + 1)});
  } else if (depth % 2 == 0) {
    for (int q = 0; q < n; ++q)
      cells.push_back({cut(c.x0, c.x1, n, q), c.y0, cut(c.x0, c.x1, n, q + 1), c.y1});
  } else {
    for (int q = 0; q < n; ++q)
      cells.push_back({c.x0, cut(c.y0, c.y1, n, q), c.x1, cut(c.y0, c.y1, n, q + 1)});
  }
  return cells;
}

int nearest_member(const std::vector<int>& members, const NodeSet& nodes, Point target) {
  int best_id = members.front();
  double best = std::numeric_limits<double>::infinity();
  for (int id : members) {
    double d = distance(nodes.nodes[static_cast<std::size_t>(id)].position, target);
    if (d < best || (d == best && id < best_id)) {
      best = d;
      best_id = id;
    }
  }
  return best_id;
}

}  // namespace

ClusterTree build_hierarchy(const NodeSet& nodes, int branching, int levels) {
  if (branching < 2) throw std::invalid_argument("build_hierarchy: branching must be >= 2");
  if (levels < 2) throw std::invalid_argument("build_hierarchy: levels must be >= 2");
  if (nodes.nodes.empty()) throw std::invalid_argument("build_hierarchy: no nodes");
  double cells_at_leaf = std::pow(static_cast<double>(branching), levels - 1);
  if (cells_at_leaf > static_cast<double>(nodes.size()))
    throw std::invalid_argument("build_hierarchy: branching^(levels-1) exceeds node count");

  double extent = 0.0;
  for (const SensorNode& n : nodes.nodes) extent = std::max({extent, n.position.x, n.position.y});

  ClusterTree tree;
  tree.branching_ = branching;
  tree.levels_.assign(static_cast<std::size_t>(levels), {});

  Cluster root;
  // Right-open cells; nudge the outer edge so boundary nodes land inside.
  const double edge = std::nextafter(extent, std::numeric_limits<double>::infinity());
  root.cell = {0.0, 0.0, edge, edge};
  root.members.resize(nodes.nodes.size());
  for (int i = 0; i < nodes.size(); ++i) root.members[static_cast<std::size_t>(i)] = i;
  tree.levels_[static_cast<std::size_t>(levels - 1)].push_back(std::move(root));

  // Split downward, dropping empty cells.
  for (int lev = levels; lev >= 2; --lev) {
    auto& upper = tree.levels_[static_cast<std::size_t>(lev - 1)];
    auto& lower = tree.levels_[static_cast<std::size_t>(lev - 2)];
    for (int ci = 0; ci < static_cast<int>(upper.size()); ++ci) {
      Cluster& parent = upper[static_cast<std::size_t>(ci)];
      for (const Cell& cell : split_cell(parent.cell, branching, levels - lev)) {
        Cluster child;
        child.cell = cell;
        for (int id : parent.members)
          if (cell.contains(nodes.nodes[static_cast<std::size_t>(id)].position))
            child.members.push_back(id);
        if (child.members.empty()) continue;
        child.parent = ci;
        parent.children.push_back(static_cast<int>(lower.size()));
        lower.push_back(std::move(child));
      }
    }
  }

  // Canonical member order: level-1 members by id, upper levels by child
  // concatenation. Ids are spatially sorted at placement, so level-1 member
  // order is a coherent scan of the cell.
  for (auto& lv : tree.levels_) {
    for (Cluster& cl : lv) std::sort(cl.members.begin(), cl.members.end());
  }
  for (int lev = 2; lev <= levels; ++lev) {
    auto& upper = tree.levels_[static_cast<std::size_t>(lev - 1)];
    const auto& lower = tree.levels_[static_cast<std::size_t>(lev - 2)];
    for (Cluster& cl : upper) {
      cl.members.clear();
      for (int child : cl.children) {
        const auto& cm = lower[static_cast<std::size_t>(child)].members;
        cl.members.insert(cl.members.end(), cm.begin(), cm.end());
      }
    }
  }

  for (int lev = 1; lev <= levels; ++lev)
    for (Cluster& cl : tree.levels_[static_cast<std::size_t>(lev - 1)])
      cl.head = nearest_member(cl.members, nodes, cl.cell.centroid());
  tree.levels_.back().front().head = nodes.sink_id;

  return tree;
}

}  // namespace ahdacs
