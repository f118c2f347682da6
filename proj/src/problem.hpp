#pragma once

#include <map>
#include <set>
#include <variant>
#include <vector>

#include "graph.hpp"

namespace cfp {

// Steiner Forest via input components: label per node, or none.
struct SfIc {
  std::vector<int> label;  // -1 for non-terminals, otherwise 0..k-1
};

// Steiner Forest via (possibly asymmetric) connection requests.
struct SfCr {
  std::vector<std::set<NodeId>> requests;  // requests[v] = R_v
};

// Symmetric connection requests: u in R_v  <=>  v in R_u.
struct SfScr {
  std::vector<std::set<NodeId>> requests;
};

// As SF-IC, with the cardinality of each input component given as input.
struct SfCic {
  std::vector<int> label;
  std::vector<int> cardinality;  // per label
};

// Balance sources and targets per component.
struct Ppc {
  std::set<NodeId> sources;
  std::set<NodeId> targets;
};

// Facility placement rephrased as a Steiner Tree on the augmented graph:
// terminals are the clients plus the virtual facility node s.
struct Fpc {
  std::set<NodeId> clients;
  NodeId virtual_node = -1;
};

struct ProblemSpec {
  std::variant<SfIc, SfCr, SfScr, SfCic, Ppc, Fpc> data;

  const char* variant_name() const;
  // Structural validation against the graph; throws std::invalid_argument.
  void validate(const WeightedGraph& g) const;
  // Nodes v with f({v}) = 1, sorted.
  std::vector<NodeId> terminals(int n) const;
};

using ActivityMap = std::map<NodeId, bool>;  // component-id -> f(C)

// Reference subset semantics of the forest function; exponential callers only.
bool f_subset(const ProblemSpec& spec, const std::set<NodeId>& s, int n);

// f evaluated per component via counting; agrees with f_subset on each part.
ActivityMap evaluate_components(const ProblemSpec& spec, const Partition& partition);

// Adds the virtual facility node s with edges {v, s} of cost o_v.
std::pair<WeightedGraph, ProblemSpec> augment_fpc(const WeightedGraph& g,
                                                  const std::vector<BigInt>& opening_cost,
                                                  const std::set<NodeId>& clients);

struct AxiomReport {
  bool zero_ok = true;       // f(V) = 0
  bool nontrivial = true;    // exists S with f(S) = 1
  std::vector<uint32_t> symmetry_violations;                  // masks S with f(S) != f(V\S)
  std::vector<std::pair<uint32_t, uint32_t>> disjointness_violations;  // (A, B) masks

  bool ok() const {
    return zero_ok && nontrivial && symmetry_violations.empty() && disjointness_violations.empty();
  }
};

// Exhaustive sweep over all subsets; refuses n > 16.
AxiomReport check_proper(const ProblemSpec& spec, int n);

// Evaluates f on every subset mask (n <= 20); shared by the axiom checker
// and the oracle's all-cuts feasibility check.
std::vector<char> f_all_subsets(const ProblemSpec& spec, int n);

}  // namespace cfp
