#pragma once

#include <functional>
#include <string>
#include <vector>

#include "problem.hpp"

namespace cfp {

struct EngineState {
  std::vector<EdgeId> forest;          // F, sorted edge ids
  std::vector<bool> live;              // current live edge set
  std::vector<Rational> reduced_cost;  // c' per edge (also for dead edges)
  Partition components;                // components of (V, F)
  std::vector<NodeId> active_sources;  // T^1: min-id terminal per active component
  Rational radius;
  Rational lower_bound;
  int phase = 0;
};

struct PhaseTrace {
  int phase = 0;
  Rational radius;
  int active_before = 0;
  int active_after = 0;
  std::vector<NodeId> ball_nodes;      // U (full nodes)
  std::vector<EdgeId> sssp_edges;      // F'
  std::vector<EdgeId> merge_candidates;  // M
  std::vector<EdgeId> merge_selected;    // A
  std::vector<EdgeId> pruned_edges;
  Rational lb_increment;
};

struct RunReport {
  std::string algorithm;  // "shell" | "gw" | "congest"
  std::vector<EdgeId> forest;
  BigInt cost;
  Rational lower_bound;
  int terminal_count = 0;
  Rational certified_ratio;  // (2 - 2/t)(1 + e')(1 + e'')^2, or 2 for t <= 1
  int phases = 0;
  std::vector<PhaseTrace> traces;
  // congest runs: per phase, rounds per building block tag
  std::vector<std::map<std::string, long long>> phase_rounds;
  long long total_rounds = 0;
  long long total_messages = 0;
  int bfs_depth = 0;           // measured D (hop depth of the BFS tree used)
  long long pa_rounds_max = 0; // measured T^PA (worst single partwise aggregation)
  std::vector<NodeId> opened_facilities;  // FPC: neighbors of s in F
};

// Per-phase building blocks of the shell-decomposition loop; exposed for
// tests and reused by the distributed executor for the shared bookkeeping.
namespace shell {

// c'(e) <- max{0, c'(e) - sum over endpoints of max{r - d(v), 0}}
void edge_cost_reduction(std::vector<Rational>& reduced_cost, const std::vector<bool>& live,
                         const WeightedGraph& g, const SsspForest& sssp, const Rational& radius);

// live edges with c' = 0, both endpoints kept, in distinct trees
std::vector<EdgeId> candidate_merges(const WeightedGraph& g, const std::vector<Rational>& reduced_cost,
                                     const std::vector<bool>& live, const SsspForest& sssp);

// two-tier Kruskal: F' edges (class 0) before M edges (class 1), by edge id
std::vector<EdgeId> select_merge_forest(const WeightedGraph& g, const SsspForest& sssp,
                                        const std::vector<EdgeId>& merge_candidates);

// Root paths of all endpoints of A within the truncated forest.
std::vector<EdgeId> root_path_edges(const WeightedGraph& g, const SsspForest& sssp,
                                    const std::vector<EdgeId>& selected);

// F <- forest(F ∪ A ∪ root paths): additions consumed in the order given
// (callers pass them id-sorted), skipping any edge whose endpoints are
// already connected in F.
std::vector<EdgeId> extend_forest(const WeightedGraph& g, const std::vector<EdgeId>& forest,
                                  const std::vector<EdgeId>& additions);

// min-id terminal of each active component
std::vector<NodeId> active_terminals(const ProblemSpec& spec, const Partition& components,
                                     const ActivityMap& activity, int n);

Rational initial_radius(const Rational& eps_dprime);

// ceil(log_{1+e''}(4 (1+e') n maxcost / e'')) + 1
int phase_bound(const WeightedGraph& g, const Rational& eps_prime, const Rational& eps_dprime);

Rational certified_ratio(int terminal_count, const Rational& eps_prime, const Rational& eps_dprime);

}  // namespace shell

RunReport run_shell_decomposition(const WeightedGraph& g, const ProblemSpec& spec,
                                  const Rational& eps_prime, const Rational& eps_dprime,
                                  const Rational& alpha = Rational(1));

// Original moat-growing algorithm with final filtering; event-driven exact
// simulation of the continuous growth. (2 - 2/t) certificate.
RunReport run_gw_reference(const WeightedGraph& g, const ProblemSpec& spec);

BigInt forest_cost(const WeightedGraph& g, const std::vector<EdgeId>& forest);

}  // namespace cfp
