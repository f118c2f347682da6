#pragma once

#include <tuple>
#include <vector>

#include "problem.hpp"

namespace cfp::testutil {

inline WeightedGraph make_graph(int n, const std::vector<std::tuple<NodeId, NodeId, int>>& edges) {
  WeightedGraph g;
  g.n = n;
  for (const auto& [u, v, c] : edges)
    g.edges.push_back({static_cast<EdgeId>(g.edges.size()), u, v, BigInt(c)});
  g.validate();
  return g;
}

inline ProblemSpec ic_spec(int n, const std::vector<std::pair<NodeId, int>>& labels) {
  SfIc p;
  p.label.assign(static_cast<size_t>(n), -1);
  for (auto [v, l] : labels) p.label[static_cast<size_t>(v)] = l;
  return ProblemSpec{p};
}

}  // namespace cfp::testutil
