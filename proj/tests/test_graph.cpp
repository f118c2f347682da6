#include <stdexcept>

#include "doctest.h"
#include "graph.hpp"
#include "helpers.hpp"

using namespace cfp;
using testutil::make_graph;

TEST_CASE("validate rejects malformed graphs") {
  WeightedGraph g;
  g.n = 3;

  SUBCASE("self-loop") {
    g.edges = {{0, 1, 1, BigInt(2)}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
  SUBCASE("parallel edge, either orientation") {
    g.edges = {{0, 0, 1, BigInt(1)}, {1, 1, 0, BigInt(3)}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
  SUBCASE("endpoint out of range") {
    g.edges = {{0, 0, 3, BigInt(1)}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
  SUBCASE("non-positive cost") {
    g.edges = {{0, 0, 1, BigInt(0)}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
  SUBCASE("edge ids out of order") {
    g.edges = {{1, 0, 1, BigInt(1)}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
}

TEST_CASE("adjacency is sorted by (neighbor, edge id)") {
  auto g = make_graph(4, {{2, 0, 5}, {0, 1, 5}, {0, 3, 5}});
  auto adj = g.adjacency();
  REQUIRE(adj[0].size() == 3);
  CHECK(adj[0][0] == std::pair<EdgeId, NodeId>{1, 1});
  CHECK(adj[0][1] == std::pair<EdgeId, NodeId>{0, 2});
  CHECK(adj[0][2] == std::pair<EdgeId, NodeId>{2, 3});
}

TEST_CASE("connected components use the minimum node id as component id") {
  auto g = make_graph(5, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}});
  auto p = connected_components(g.n, g.edges, {0, 1, 2});
  CHECK(p.of(0) == 0);
  CHECK(p.of(2) == 0);
  CHECK(p.of(4) == 3);
  CHECK(p.component_ids() == std::vector<NodeId>{0, 3});
  auto groups = p.groups();
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == std::vector<NodeId>{0, 1, 2});
  CHECK(groups[1] == std::vector<NodeId>{3, 4});

  // restricting the edge set splits the first component
  auto q = connected_components(g.n, g.edges, {1});
  CHECK(q.of(0) == 0);
  CHECK(q.of(1) == 1);
  CHECK(q.of(2) == 1);
}

TEST_CASE("DisjointSet keeps the minimum id as representative") {
  DisjointSet d(6);
  CHECK(d.unite(4, 5));
  CHECK(d.unite(5, 2));
  CHECK(!d.unite(2, 4));
  CHECK(d.find(5) == 2);
  CHECK(d.find(4) == 2);
  CHECK(d.find(0) == 0);
}

TEST_CASE("scale_zero_weights lifts zeros to 1 and scales the rest") {
  WeightedGraph g;
  g.n = 4;
  g.edges = {{0, 0, 1, BigInt(0)}, {1, 1, 2, BigInt(3)}, {2, 2, 3, BigInt(1)}};
  auto s = scale_zero_weights(g, Rational(1, 2));
  // multiplier = ceil(4 / (1/2)) = 8
  CHECK(s.edges[0].cost == 1);
  CHECK(s.edges[1].cost == 24);
  CHECK(s.edges[2].cost == 8);
  CHECK_THROWS_AS(scale_zero_weights(g, Rational(0)), std::invalid_argument);
}

TEST_CASE("minimum_spanning_forest breaks weight ties by edge id") {
  auto g = make_graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  std::vector<Rational> w;
  for (const auto& e : g.edges) w.emplace_back(e.cost);
  CHECK(minimum_spanning_forest(g, w) == std::vector<EdgeId>{0, 1});
}

TEST_CASE("minimum_spanning_forest spans each component") {
  auto g = make_graph(5, {{0, 1, 4}, {1, 2, 2}, {0, 2, 3}, {3, 4, 7}});
  std::vector<Rational> w;
  for (const auto& e : g.edges) w.emplace_back(e.cost);
  CHECK(minimum_spanning_forest(g, w) == std::vector<EdgeId>{1, 2, 3});
}

namespace {

std::vector<Rational> costs_of(const WeightedGraph& g) {
  std::vector<Rational> w;
  for (const auto& e : g.edges) w.emplace_back(e.cost);
  return w;
}

}  // namespace

TEST_CASE("sssp_forest on a fixed graph: distances, parents, radius cut") {
  auto g = make_graph(6, {{0, 1, 2}, {1, 2, 2}, {0, 3, 1}, {3, 4, 1}, {4, 2, 1}, {1, 4, 3}, {2, 5, 4}});
  auto f = sssp_forest(g, costs_of(g), {0}, Rational(4));

  CHECK(f.kept == std::vector<bool>{true, true, true, true, true, false});
  CHECK(f.dist[0] == Rational(0));
  CHECK(f.dist[1] == Rational(2));
  CHECK(f.dist[2] == Rational(3));
  CHECK(f.dist[3] == Rational(1));
  CHECK(f.dist[4] == Rational(2));
  CHECK(f.hops == std::vector<int>{0, 1, 3, 1, 2, 0});
  CHECK(f.parent_edge == std::vector<EdgeId>{-1, 0, 4, 2, 3, -1});
  CHECK(f.root[2] == 0);
  CHECK(f.root[5] == -1);
  CHECK(f.forest_edges == std::vector<EdgeId>{0, 2, 3, 4});
}

TEST_CASE("sssp_forest prefers fewer hops at equal distance") {
  // v1 is reachable at distance 2 both directly (1 hop) and via v2 (2 hops)
  auto g = make_graph(3, {{0, 1, 2}, {0, 2, 1}, {2, 1, 1}});
  auto f = sssp_forest(g, costs_of(g), {0}, Rational(10));
  CHECK(f.dist[1] == Rational(2));
  CHECK(f.hops[1] == 1);
  CHECK(f.parent_edge[1] == 0);
}

TEST_CASE("sssp_forest picks the minimum (node, edge) parent on ties") {
  // diamond: both 0-1-3 and 0-2-3 reach v3 at (2, 2 hops); parent must be v1
  auto g = make_graph(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  auto f = sssp_forest(g, costs_of(g), {0}, Rational(5));
  CHECK(f.parent_node[3] == 1);
  CHECK(f.parent_edge[3] == 2);
}

TEST_CASE("sssp_forest respects the live-edge mask") {
  auto g = make_graph(3, {{0, 1, 1}, {0, 2, 5}, {1, 2, 1}});
  auto all = sssp_forest(g, costs_of(g), {0}, Rational(10));
  CHECK(all.dist[2] == Rational(2));
  auto masked = sssp_forest(g, costs_of(g), {0}, Rational(10), Rational(1), {true, true, false});
  CHECK(masked.dist[2] == Rational(5));
  CHECK(masked.parent_edge[2] == 1);
}

TEST_CASE("sssp_forest with several sources assigns the nearest root") {
  auto g = make_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  auto f = sssp_forest(g, costs_of(g), {0, 3}, Rational(1));
  CHECK(f.root == std::vector<NodeId>{0, 0, 3, 3});
  CHECK(f.forest_edges == std::vector<EdgeId>{0, 2});
}
