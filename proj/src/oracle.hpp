#pragma once

#include <optional>
#include <string>
#include <vector>

#include "engine.hpp"

namespace cfp {

struct BruteForceResult {
  BigInt cost;
  std::vector<EdgeId> edges;  // lexicographically smallest argmin
};

// Exact optimum by exhaustive search. With prune_cycles the enumeration walks
// forests only (an optimal solution is always a forest: dropping a cycle edge
// preserves components); without it, all 2^m subsets (m <= 16).
BruteForceResult brute_force_opt(const WeightedGraph& g, const ProblemSpec& spec,
                                 bool prune_cycles = true);

struct FeasibilityResult {
  bool pass = true;
  std::vector<NodeId> witness;  // a violated node set, if any
  std::string detail;
};

// Component-level check f(C) = 0 for every component of (V, F); for n <= 10
// additionally exhaustive over every cut.
FeasibilityResult check_primal_feasible(const WeightedGraph& g, const ProblemSpec& spec,
                                        const std::vector<EdgeId>& forest);

struct Certificate {
  std::string digest;
  BigInt engine_cost;  // recomputed from the forest, not trusted
  Rational lower_bound;
  Rational ratio;
  int terminal_count = 0;
  bool feasible = false;
  bool cost_le_ratio_lb = false;
  bool opt_known = false;
  BigInt opt_cost;
  bool lb_le_opt = true;
  bool opt_le_cost = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  std::string to_text() const;
};

// Re-derives and checks the chain LB <= OPT <= c(F) <= ratio * LB from raw
// data; OPT links only when an oracle result is supplied.
Certificate certify_run(const WeightedGraph& g, const ProblemSpec& spec,
                        const std::vector<EdgeId>& forest, const Rational& lower_bound,
                        const Rational& eps_prime, const Rational& eps_dprime,
                        const std::optional<BruteForceResult>& opt = std::nullopt);

// Stable content hash of (graph, problem); used to tie certificates to inputs.
std::string instance_digest(const WeightedGraph& g, const ProblemSpec& spec);

}  // namespace cfp
