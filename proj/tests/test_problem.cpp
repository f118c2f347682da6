#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "instance.hpp"
#include "problem.hpp"

using namespace cfp;
using testutil::ic_spec;
using testutil::make_graph;

namespace {

std::set<NodeId> mask_to_set(uint32_t mask, int n) {
  std::set<NodeId> s;
  for (NodeId v = 0; v < n; ++v)
    if (mask & (1u << v)) s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("SF-IC: terminals and subset activity") {
  auto spec = ic_spec(5, {{0, 0}, {2, 0}, {3, 1}, {4, 1}});
  CHECK(spec.terminals(5) == std::vector<NodeId>{0, 2, 3, 4});
  CHECK(f_subset(spec, {0}, 5));        // separates 0 from 2
  CHECK(f_subset(spec, {0, 2}, 5) == false);
  CHECK(f_subset(spec, {0, 2, 3}, 5)); // separates 3 from 4
  CHECK(f_subset(spec, {1}, 5) == false);
  CHECK(f_subset(spec, {0, 1, 2, 3, 4}, 5) == false);
}

TEST_CASE("SF-CR: asymmetric requests give symmetric separation") {
  SfCr cr;
  cr.requests.resize(4);
  cr.requests[0] = {2};  // only 0 asks for 2
  ProblemSpec spec{cr};
  CHECK(spec.terminals(4) == std::vector<NodeId>{0, 2});
  CHECK(f_subset(spec, {0}, 4));
  CHECK(f_subset(spec, {2}, 4));  // the pair {0,2} is cut either way
  CHECK(f_subset(spec, {0, 2}, 4) == false);
  CHECK(f_subset(spec, {1, 3}, 4) == false);
}

TEST_CASE("SF-SCR validation requires symmetric requests") {
  auto g = make_graph(3, {{0, 1, 1}, {1, 2, 1}});
  SfScr scr;
  scr.requests.resize(3);
  scr.requests[0] = {2};
  CHECK_THROWS_AS(ProblemSpec{scr}.validate(g), std::invalid_argument);
  scr.requests[2] = {0};
  CHECK_NOTHROW(ProblemSpec{scr}.validate(g));
}

TEST_CASE("SF-CIC: activity compares counts against the given cardinalities") {
  SfCic cic;
  cic.label = {0, 0, 1, 1, -1};
  cic.cardinality = {2, 2};
  ProblemSpec spec{cic};
  CHECK(f_subset(spec, {0}, 5));            // sees 1 of 2 class-0 nodes
  CHECK(f_subset(spec, {0, 1}, 5) == false);
  CHECK(f_subset(spec, {0, 1, 2}, 5));      // class 1 is split
  CHECK(f_subset(spec, {4}, 5) == false);
  CHECK(f_subset(spec, {0, 1, 2, 3}, 5) == false);
}

TEST_CASE("PPC: activity is source/target imbalance") {
  Ppc p;
  p.sources = {0, 1};
  p.targets = {2, 3};
  ProblemSpec spec{p};
  CHECK(f_subset(spec, {0}, 5));
  CHECK(f_subset(spec, {0, 2}, 5) == false);
  CHECK(f_subset(spec, {0, 1, 2}, 5));
  CHECK(f_subset(spec, {0, 1, 2, 3}, 5) == false);
  CHECK(f_subset(spec, {4}, 5) == false);
  CHECK(spec.terminals(5) == std::vector<NodeId>{0, 1, 2, 3});
}

TEST_CASE("FPC: clients must reach the virtual facility node") {
  Fpc f;
  f.clients = {0, 2};
  f.virtual_node = 3;
  ProblemSpec spec{f};
  CHECK(spec.terminals(4) == std::vector<NodeId>{0, 2, 3});
  CHECK(f_subset(spec, {0}, 4));
  CHECK(f_subset(spec, {3}, 4));
  CHECK(f_subset(spec, {0, 2, 3}, 4) == false);
  CHECK(f_subset(spec, {1}, 4) == false);
}

TEST_CASE("augment_fpc appends the facility node with opening-cost edges") {
  auto g = make_graph(2, {{0, 1, 1}});
  auto [ag, aspec] = augment_fpc(g, {BigInt(1), BigInt(3)}, {0, 1});
  CHECK(ag.n == 3);
  CHECK(ag.is_virtual(2));
  CHECK(!ag.is_virtual(0));
  REQUIRE(ag.edges.size() == 3);
  CHECK(ag.edges[1].cost == 1);
  CHECK(ag.edges[2].cost == 3);
  CHECK(ag.edges[1].other(2) == 0);
  CHECK(ag.edges[2].other(2) == 1);
  CHECK(std::get<Fpc>(aspec.data).virtual_node == 2);
  CHECK_NOTHROW(aspec.validate(ag));
}

TEST_CASE("evaluate_components agrees with the subset semantics") {
  // every variant, several random partitions: per-component activity must
  // match the reference subset evaluation on that component's node set
  for (const char* variant : {"SF_IC", "SF_CR", "SF_SCR", "SF_CIC", "PPC", "FPC"}) {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
      auto inst = gen_random("random", variant, 9, 12, 5, seed);
      int n = inst.graph.n;
      for (size_t take = 0; take + 1 < inst.graph.edges.size(); take += 3) {
        std::vector<EdgeId> sub;
        for (size_t i = 0; i <= take; ++i) sub.push_back(static_cast<EdgeId>(i));
        auto parts = connected_components(n, inst.graph.edges, sub);
        auto act = evaluate_components(inst.problem, parts);
        for (const auto& group : parts.groups()) {
          std::set<NodeId> s(group.begin(), group.end());
          CAPTURE(variant);
          CAPTURE(seed);
          CHECK(act.at(parts.of(group[0])) == f_subset(inst.problem, s, n));
        }
      }
    }
  }
}

TEST_CASE("check_proper accepts generated instances of every variant") {
  for (const char* variant : {"SF_IC", "SF_CR", "SF_SCR", "SF_CIC", "PPC", "FPC"}) {
    auto inst = gen_random("random", variant, 8, 10, 4, 7);
    auto report = check_proper(inst.problem, inst.graph.n);
    CAPTURE(variant);
    CHECK(report.ok());
  }
}

TEST_CASE("check_proper flags a function that is nonzero on the full set") {
  Ppc p;
  p.sources = {0};
  p.targets = {};  // globally unbalanced: f(V) = 1
  auto report = check_proper(ProblemSpec{p}, 3);
  CHECK(!report.zero_ok);
  CHECK(!report.ok());
}

TEST_CASE("f_all_subsets matches f_subset pointwise") {
  auto spec = ic_spec(4, {{0, 0}, {3, 0}});
  auto table = f_all_subsets(spec, 4);
  REQUIRE(table.size() == 16u);
  for (uint32_t mask = 0; mask < 16; ++mask)
    CHECK(static_cast<bool>(table[mask]) == f_subset(spec, mask_to_set(mask, 4), 4));
}
