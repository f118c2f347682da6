#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "problem.hpp"

namespace cfp {

// Versioned human-readable instance document: graph, problem data, optional
// generator metadata. Round-trips losslessly through serialize/parse.
struct InstanceFile {
  int version = 1;
  WeightedGraph graph;
  ProblemSpec problem;
  std::map<std::string, std::string> meta;
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

InstanceFile parse_instance(const std::string& text);
std::string serialize_instance(const InstanceFile& inst);

// Connected random instance: uniform spanning tree skeleton plus extra edges,
// costs uniform in [1, max_cost], problem data sampled per variant.
// variant is one of SF_IC, SF_CR, SF_SCR, SF_CIC, PPC, FPC.
InstanceFile gen_random(const std::string& family, const std::string& variant, int n, int m,
                        int max_cost, uint64_t seed);

// Double-star equality-testing graph: 2n+4 nodes, unit costs except the two
// heavy cross edges at W = rho*(2n+2)+1. variant is SF_SCR or SF_CIC.
InstanceFile gen_lower_bound(int n, int rho, uint64_t a_bits, uint64_t b_bits,
                             const std::string& variant);

}  // namespace cfp
