#pragma once

#include <cstdint>
#include <vector>

#include "ahdacs/field.hpp"

namespace ahdacs {

struct SensorNode {
  int id = 0;
  Point position;
  double reading = 0.0;
};

struct NodeSet {
  std::vector<SensorNode> nodes;  // ids are contiguous from 0, in node order
  int sink_id = 0;

  int size() const { return static_cast<int>(nodes.size()); }
};

// Uniform placement over the square; ids are assigned in (x, y) lexicographic
// order so id order doubles as a spatially coherent scan. The sink is the
// node nearest the square's center.
NodeSet place_nodes(int count, double extent, std::uint64_t seed);

void assign_readings(NodeSet& nodes, const ScalarField& field);

struct Cell {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  Point centroid() const { return {(x0 + x1) / 2.0, (y0 + y1) / 2.0}; }
  bool contains(Point p) const { return p.x >= x0 && p.x < x1 && p.y >= y0 && p.y < y1; }
};

struct Cluster {
  Cell cell;
  std::vector<int> members;    // all subtree node ids, canonical order
  int head = -1;               // member nearest the cell centroid (sink at the top level)
  int parent = -1;             // index within the level above
  std::vector<int> children;   // indices within the level below
  int size() const { return static_cast<int>(members.size()); }
};

// Multi-resolution spatial hierarchy. Level 1 holds the finest cells, level
// T the single root cluster. Square branching factors split k x k; other
// factors split into n strips, axis alternating per level. Empty cells are
// dropped. Cluster order within a level follows row-major cell order.
class ClusterTree {
 public:
  int levels() const { return static_cast<int>(levels_.size()); }        // T
  int branching() const { return branching_; }                           // n
  const std::vector<Cluster>& level(int i) const;                        // i in [1, T]
  std::vector<Cluster>& level_mutable(int i);

  const Cluster& root() const { return levels_.back().front(); }

  // Leaf readings of the subtree in canonical order; length N_i^(l).
  std::vector<double> subtree_readings(int level, int cluster, const NodeSet& nodes) const;

 private:
  friend ClusterTree build_hierarchy(const NodeSet&, int, int);
  std::vector<std::vector<Cluster>> levels_;  // [0] = level 1 ... [T-1] = level T
  int branching_ = 0;
};

ClusterTree build_hierarchy(const NodeSet& nodes, int branching, int levels);

}  // namespace ahdacs
