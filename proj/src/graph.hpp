#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace cfp {

using NodeId = int;
using EdgeId = int;

struct Edge {
  EdgeId id = -1;
  NodeId u = -1;
  NodeId v = -1;
  BigInt cost;  // strictly positive after scaling

  NodeId other(NodeId w) const { return w == u ? v : u; }
};

// Simple undirected weighted graph. Node identifiers are 0..n-1 and double
// as the tie-breaking order everywhere.
struct WeightedGraph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<bool> virtual_node;  // FPC facility node; empty means none

  bool is_virtual(NodeId v) const {
    return !virtual_node.empty() && virtual_node[static_cast<size_t>(v)];
  }
  BigInt max_cost() const;
  // adjacency as (edge-id, neighbor) lists, sorted by neighbor then edge id
  std::vector<std::vector<std::pair<EdgeId, NodeId>>> adjacency() const;
  void validate() const;  // throws std::invalid_argument on malformed input
};

// Component-id per node; the id is the minimum node id of the component.
struct Partition {
  std::vector<NodeId> component_of;

  NodeId of(NodeId v) const { return component_of[static_cast<size_t>(v)]; }
  bool same(NodeId u, NodeId v) const { return of(u) == of(v); }
  std::vector<NodeId> component_ids() const;
  std::vector<std::vector<NodeId>> groups() const;  // keyed by component id order
};

class DisjointSet {
 public:
  explicit DisjointSet(int n);
  NodeId find(NodeId v);
  bool unite(NodeId a, NodeId b);  // false if already joined

 private:
  std::vector<NodeId> parent_;
};

Partition connected_components(int n, const std::vector<Edge>& all_edges,
                               const std::vector<EdgeId>& edge_set);
Partition connected_components(int n, const std::vector<std::pair<NodeId, NodeId>>& pairs);

// Replaces zero costs by 1 and multiplies all non-zero costs by ceil(n/eps),
// so that any solution's relative cost perturbation is at most eps.
WeightedGraph scale_zero_weights(const WeightedGraph& g, const Rational& eps);

// Kruskal by (weight, edge-id); returns edge ids of the minimum spanning
// forest under the given weight map.
std::vector<EdgeId> minimum_spanning_forest(const WeightedGraph& g,
                                            const std::vector<Rational>& weight);

// Set-source shortest-path forest, truncated to the ball of radius r.
// Distances are lexicographic (weighted distance, hop count); parents are
// the minimum (node-id, edge-id) predecessor attaining the distance. The
// hop component keeps parent chains acyclic across zero-cost clusters.
struct SsspForest {
  std::vector<bool> kept;              // d(sources, v) <= r
  std::vector<Rational> dist;          // valid where kept
  std::vector<int> hops;               // valid where kept
  std::vector<EdgeId> parent_edge;     // -1 for roots / not kept
  std::vector<NodeId> parent_node;     // -1 for roots / not kept
  std::vector<NodeId> root;            // source reached; -1 if not kept
  std::vector<EdgeId> forest_edges;    // all kept parent edges, sorted
};

// live[e] restricts the edge set when non-empty. alpha = 1 runs exact
// Dijkstra; alpha > 1 rounds costs up to powers of alpha first (the
// distances reported are then the rounded ones, within factor alpha of
// the true distances).
SsspForest sssp_forest(const WeightedGraph& g, const std::vector<Rational>& reduced_cost,
                       const std::vector<NodeId>& sources, const Rational& radius,
                       const Rational& alpha = Rational(1),
                       const std::vector<bool>& live = {});

// Turns converged (distance, hops) labels into the truncated forest: applies
// the radius cut and the local minimum (node-id, edge-id) parent rule. Shared
// by the Dijkstra front-end above and the distributed Bellman-Ford, so both
// produce the identical forest from identical distances.
SsspForest finish_sssp(const WeightedGraph& g, const std::vector<Rational>& w,
                       const std::vector<bool>& live, const std::vector<NodeId>& sources,
                       const Rational& radius, const std::vector<bool>& reached,
                       const std::vector<Rational>& dist, const std::vector<int>& hops);

}  // namespace cfp
