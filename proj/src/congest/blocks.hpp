#pragma once

#include "../problem.hpp"
#include "network.hpp"

namespace cfp::congest {

struct BfsTree {
  NodeId root = -1;
  std::vector<NodeId> parent;       // -1 for root and virtual nodes
  std::vector<EdgeId> parent_edge;
  std::vector<int> depth;           // -1 for unreached
  std::vector<std::vector<NodeId>> children;
  int height = 0;  // measured D proxy
  long long rounds = 0;
};

// Flooding from the root; parents picked as the minimum (node-id, edge-id)
// announcing neighbor. Throws if some physical node stays unreached.
BfsTree build_bfs_tree(SimNetwork& net, NodeId root);

// Rooted spanning tree per part of the physical forest-edge partition.
// Part id = minimum node id of the part (leader election by min-id flooding,
// then BFS from the leader inside the part).
struct PartForest {
  std::vector<NodeId> part_of;
  std::vector<NodeId> parent;
  std::vector<EdgeId> parent_edge;
  std::vector<int> depth;
  std::vector<std::vector<NodeId>> children;
  std::vector<NodeId> roots;  // sorted part leaders
  int max_depth = 0;
  long long rounds = 0;
};

PartForest build_part_forest(SimNetwork& net, const std::vector<EdgeId>& forest_edges);

// Convergecast of op-folds to each part root. Only the roots' results are
// meaningful in the returned vector.
std::vector<BigInt> part_convergecast(SimNetwork& net, const PartForest& pf,
                                      const std::vector<BigInt>& x,
                                      const std::function<BigInt(const BigInt&, const BigInt&)>& op,
                                      const std::string& tag);

// Broadcast of the root's value down each part tree.
std::vector<BigInt> part_broadcast(SimNetwork& net, const PartForest& pf,
                                   const std::vector<BigInt>& root_value, const std::string& tag);

// Convergecast + broadcast: every node of part V_i ends with the op-fold
// over V_i. Returns (per-node value, rounds used by this call).
std::pair<std::vector<BigInt>, long long> partwise_aggregate(
    SimNetwork& net, const PartForest& pf, const std::vector<BigInt>& x,
    const std::function<BigInt(const BigInt&, const BigInt&)>& op, const std::string& tag);

// Exact synchronous Bellman-Ford on the live physical edges with the given
// weights, lexicographic (distance, hops). Distance messages are audited as
// width-exempt (their exact encodings exceed B; the maximum seen is recorded
// in net.exempt_max_bits). Virtual sources/relaxations are folded in from
// globally-replicated state, charged via extra_broadcast rounds.
struct DistSssp {
  SsspForest forest;
  long long rounds = 0;
};
DistSssp distributed_sssp(SimNetwork& net, const std::vector<Rational>& w,
                          const std::vector<bool>& live, const std::vector<NodeId>& sources,
                          const Rational& radius, int bfs_height);

// Deterministic Boruvka over the eligible edges under the strict total order
// key (ties impossible: keys must be distinct). Components merge through a
// maximal matching on the fragment graph, 3-colored with Cole-Vishkin.
struct MsfResult {
  std::vector<EdgeId> edges;
  int phases = 0;
  long long rounds = 0;
};
MsfResult msf_partwise(SimNetwork& net, const std::vector<char>& eligible,
                       const std::vector<BigInt>& key, const BfsTree& bfs);

// Root-Path Selection: marked nodes pull in their root paths within the SSSP
// forest; realized as a subtree-OR convergecast (a node keeps its parent edge
// iff its subtree contains a marked node).
struct RpsResult {
  std::vector<EdgeId> edges;  // sorted
  long long rounds = 0;
};
RpsResult rps_select(SimNetwork& net, const SsspForest& sssp, const std::vector<bool>& marked);

// Components of (V, F) as seen by the simulator: physical part trees plus
// the global fusion through virtual nodes.
struct ComponentView {
  PartForest pf;
  Partition comps;                    // true components incl. virtual nodes
  std::vector<NodeId> comp_of_part;   // indexed by part leader id
  long long rounds = 0;
};
ComponentView build_component_view(SimNetwork& net, const std::vector<EdgeId>& forest,
                                   const BfsTree& bfs);

// Splittable coin: bit derived deterministically from (seed, test, a, b).
int prg_coin(uint64_t seed, int test, uint64_t a, uint64_t b);

// Reference parity test for one SCR component (pure; used by ffe_distributed
// and by Monte-Carlo harnesses). Returns true iff the test PASSES (sum even).
bool scr_parity_passes(const std::vector<std::set<NodeId>>& requests,
                       const std::vector<char>& in_component, uint64_t seed, int test);

struct FfeResult {
  ActivityMap activity;
  long long rounds = 0;
};

// Per-variant Forest-Function Evaluation over the current components.
// kappa = 0 selects max(60, 3 ceil(log2 n)) parallel tests for the
// randomized paths (per-call error at most 2^-60).
FfeResult ffe_distributed(SimNetwork& net, const ProblemSpec& spec, const ComponentView& cv,
                          const BfsTree& bfs, uint64_t seed, int kappa = 0);

}  // namespace cfp::congest
