#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "ahdacs/field.hpp"
#include "ahdacs/topology.hpp"

using namespace ahdacs;

namespace {

NodeSet grid_nodes(const std::vector<Point>& positions) {
  NodeSet set;
  for (int i = 0; i < static_cast<int>(positions.size()); ++i)
    set.nodes.push_back({i, positions[static_cast<std::size_t>(i)], 0.0});
  return set;
}

void check_tree_invariants(const ClusterTree& tree, const NodeSet& nodes) {
  const int top = tree.levels();
  REQUIRE(tree.level(top).size() == 1);
  for (int lev = 1; lev <= top; ++lev) {
    std::set<int> seen;
    for (const Cluster& cl : tree.level(lev)) {
      CHECK(std::find(cl.members.begin(), cl.members.end(), cl.head) != cl.members.end());
      for (int id : cl.members) CHECK(seen.insert(id).second);  // pairwise disjoint
      if (lev > 1) {
        int child_sum = 0;
        std::vector<double> concat;
        for (int c : cl.children) {
          const Cluster& ch = tree.level(lev - 1)[static_cast<std::size_t>(c)];
          child_sum += ch.size();
          auto r = tree.subtree_readings(lev - 1, c, nodes);
          concat.insert(concat.end(), r.begin(), r.end());
        }
        CHECK(child_sum == cl.size());  // size recursion
        CHECK(concat == tree.subtree_readings(lev, static_cast<int>(&cl - tree.level(lev).data()),
                                              nodes));  // order stability
      }
    }
    CHECK(static_cast<int>(seen.size()) == nodes.size());  // full cover
  }
  CHECK(tree.root().size() == nodes.size());
  CHECK(tree.root().head == nodes.sink_id);
}

}  // namespace

TEST_CASE("placement: determinism, bounds, spatial id order, central sink") {
  auto a = place_nodes(400, 4000.0, 7);
  auto b = place_nodes(400, 4000.0, 7);
  REQUIRE(a.size() == 400);
  for (int i = 0; i < 400; ++i) {
    const auto u = static_cast<std::size_t>(i);
    CHECK(a.nodes[u].id == i);
    CHECK(a.nodes[u].position.x == b.nodes[u].position.x);
    CHECK(a.nodes[u].position.y == b.nodes[u].position.y);
    CHECK(a.nodes[u].position.x >= 0.0);
    CHECK(a.nodes[u].position.x <= 4000.0);
    if (i > 0) CHECK(a.nodes[static_cast<std::size_t>(i - 1)].position.x <= a.nodes[u].position.x);
  }
  const Point center{2000.0, 2000.0};
  double sink_d = distance(a.nodes[static_cast<std::size_t>(a.sink_id)].position, center);
  for (const SensorNode& n : a.nodes) CHECK(sink_d <= distance(n.position, center));

  CHECK_THROWS_AS(place_nodes(0, 4000.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(place_nodes(10, -1.0, 1), std::invalid_argument);
}

TEST_CASE("quad hierarchy on random placements keeps all invariants") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto nodes = place_nodes(400, 4000.0, seed);
    auto field = ScalarField::piecewise(4000.0, 10.0, 20.0, 0.01, seed);
    assign_readings(nodes, field);
    auto tree = build_hierarchy(nodes, 4, 4);
    check_tree_invariants(tree, nodes);
    CHECK(static_cast<int>(tree.level(1).size()) <= 64);  // n^(T-1)
    CHECK(static_cast<int>(tree.level(2).size()) <= 16);
  }
}

TEST_CASE("mean occupied level-1 cell size stays near count / cells") {
  double mean_sum = 0.0;
  int runs = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto nodes = place_nodes(400, 4000.0, seed);
    auto tree = build_hierarchy(nodes, 4, 4);
    mean_sum += 400.0 / static_cast<double>(tree.level(1).size());
    ++runs;
  }
  const double mean = mean_sum / runs;  // 400 / 64 = 6.25 if no cell were empty
  CHECK(mean >= 5.0);
  CHECK(mean <= 8.0);
}

TEST_CASE("alternating strip splits keep invariants for non-square branching") {
  for (std::uint64_t seed : {11ULL, 12ULL}) {
    auto nodes = place_nodes(300, 4000.0, seed);
    auto field = ScalarField::piecewise(4000.0, 10.0, 20.0, 0.0, seed);
    assign_readings(nodes, field);
    auto tree = build_hierarchy(nodes, 2, 5);
    check_tree_invariants(tree, nodes);
    CHECK(static_cast<int>(tree.level(1).size()) <= 16);
    // level-1 cells are square after two x and two y splits
    const Cell& c = tree.level(1).front().cell;
    CHECK((c.x1 - c.x0) == doctest::Approx(c.y1 - c.y0).epsilon(1e-9));
  }
}

TEST_CASE("one node per occupied cell degenerates to singleton clusters") {
  auto nodes = grid_nodes({{500, 500}, {1500, 500}, {500, 1500}, {1500, 1500}});
  nodes.sink_id = 0;
  auto tree = build_hierarchy(nodes, 4, 2);
  REQUIRE(tree.level(1).size() == 4);
  for (const Cluster& cl : tree.level(1)) CHECK(cl.size() == 1);
}

TEST_CASE("head selection: nearest member to the cell centroid") {
  // Cell [0,2000)^2 holds nodes 0..2; node 1 sits closest to (1000,1000).
  auto nodes = grid_nodes({{100, 100}, {900, 1100}, {1900, 1900}, {4000, 4000}});
  nodes.sink_id = 3;
  auto tree = build_hierarchy(nodes, 4, 2);
  const auto& first = tree.level(1).front();
  REQUIRE(first.size() == 3);
  CHECK(first.head == 1);
}

TEST_CASE("subtree readings: level-1 member order and root coverage") {
  auto nodes = place_nodes(100, 4000.0, 5);
  auto field = ScalarField::piecewise(4000.0, 10.0, 20.0, 0.01, 5);
  assign_readings(nodes, field);
  auto tree = build_hierarchy(nodes, 4, 3);

  const Cluster& cl = tree.level(1).front();
  auto r = tree.subtree_readings(1, 0, nodes);
  REQUIRE(static_cast<int>(r.size()) == cl.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    CHECK(r[i] == nodes.nodes[static_cast<std::size_t>(cl.members[i])].reading);

  CHECK(static_cast<int>(tree.subtree_readings(3, 0, nodes).size()) == 100);
  CHECK_THROWS_AS(tree.subtree_readings(1, 999, nodes), std::out_of_range);
  CHECK_THROWS_AS(tree.subtree_readings(9, 0, nodes), std::out_of_range);
}

TEST_CASE("construction preconditions") {
  auto nodes = place_nodes(10, 1000.0, 1);
  CHECK_THROWS_AS(build_hierarchy(nodes, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_hierarchy(nodes, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_hierarchy(nodes, 4, 3), std::invalid_argument);  // 16 cells > 10 nodes
  NodeSet empty;
  CHECK_THROWS_AS(build_hierarchy(empty, 4, 2), std::invalid_argument);
}
