#pragma once

#include "../engine.hpp"
#include "blocks.hpp"

namespace cfp::congest {

// Distributed executor of the shell-decomposition loop on the simulated
// synchronous network. Produces the same forest as the centralized run
// (byte-identical edge set) plus round/message accounting per phase.
//
// seed drives the randomized forest-function tests (SCR/CIC); kappa = 0
// selects the default number of parallel tests. c_b scales the message
// width B = c_b * ceil(log2 n). trace, when given, receives one line per
// (round, node) with the bits sent.
RunReport run_distributed_cfp(const WeightedGraph& g, const ProblemSpec& spec,
                              const Rational& eps_prime, const Rational& eps_dprime,
                              uint64_t seed, int c_b = 4, int kappa = 0,
                              std::vector<std::string>* trace = nullptr);

}  // namespace cfp::congest
