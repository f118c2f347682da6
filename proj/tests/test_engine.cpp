#include "doctest.h"
#include "engine.hpp"
#include "helpers.hpp"
#include "instance.hpp"

using namespace cfp;
using testutil::ic_spec;
using testutil::make_graph;

namespace {

std::vector<Rational> costs_of(const WeightedGraph& g) {
  std::vector<Rational> w;
  for (const auto& e : g.edges) w.emplace_back(e.cost);
  return w;
}

}  // namespace

TEST_CASE("edge_cost_reduction subtracts endpoint slack, floored at zero") {
  auto g = make_graph(3, {{0, 1, 4}, {1, 2, 1}});
  std::vector<bool> live(g.edges.size(), true);
  auto w = costs_of(g);
  auto sssp = sssp_forest(g, w, {0}, Rational(3));
  // kept: v0 (d=0), v1 (d=4 > 3? no: 4 > 3, so not kept)
  REQUIRE(sssp.kept[0]);
  REQUIRE(!sssp.kept[1]);
  auto reduced = w;
  shell::edge_cost_reduction(reduced, live, g, sssp, Rational(3));
  CHECK(reduced[0] == Rational(1));  // 4 - (3 - 0)
  CHECK(reduced[1] == Rational(1));  // untouched: neither endpoint kept
}

TEST_CASE("edge_cost_reduction floors at zero with slack from both sides") {
  auto g = make_graph(2, {{0, 1, 3}});
  std::vector<bool> live = {true};
  auto w = costs_of(g);
  auto sssp = sssp_forest(g, w, {0, 1}, Rational(2));
  auto reduced = w;
  shell::edge_cost_reduction(reduced, live, g, sssp, Rational(2));
  CHECK(reduced[0] == Rational(0));  // 3 - 2 - 2 clamped
}

TEST_CASE("candidate_merges wants zero reduced cost and distinct roots") {
  auto g = make_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  std::vector<bool> live(g.edges.size(), true);
  auto w = costs_of(g);
  auto sssp = sssp_forest(g, w, {0, 3}, Rational(1));
  std::vector<Rational> reduced = {Rational(0), Rational(0), Rational(0)};
  auto m = shell::candidate_merges(g, reduced, live, sssp);
  // edge 0 joins root 0's own tree; edge 1 bridges the trees of 0 and 3
  CHECK(m == std::vector<EdgeId>{1});

  reduced[1] = Rational(1, 7);
  CHECK(shell::candidate_merges(g, reduced, live, sssp).empty());

  live[1] = false;
  reduced[1] = Rational(0);
  CHECK(shell::candidate_merges(g, reduced, live, sssp).empty());
}

TEST_CASE("select_merge_forest drops candidates that close a cycle") {
  // three sources, pairwise bridges; the third bridge is redundant
  auto g = make_graph(3, {{0, 1, 2}, {1, 2, 2}, {0, 2, 2}});
  std::vector<Rational> w = {Rational(0), Rational(0), Rational(0)};
  auto sssp = sssp_forest(g, w, {0, 1, 2}, Rational(0));
  auto a = shell::select_merge_forest(g, sssp, {0, 1, 2});
  CHECK(a == std::vector<EdgeId>{0, 1});
}

TEST_CASE("root_path_edges pulls in the tree paths of the selected endpoints") {
  auto g = make_graph(5, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {2, 3, 1}});
  auto w = costs_of(g);
  auto sssp = sssp_forest(g, w, {0, 4}, Rational(2));
  // trees: 0-1-2 and 4-3; edge 3 bridges them at nodes 2 and 3
  auto rp = shell::root_path_edges(g, sssp, {3});
  CHECK(rp == std::vector<EdgeId>{0, 1, 2});
}

TEST_CASE("extend_forest adds in the order given and skips cycle edges") {
  auto g = make_graph(4, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 1}});
  // sorted additions (the engine's calling convention): edge 2 closes the triangle
  CHECK(shell::extend_forest(g, {}, {0, 1, 2, 3}) == std::vector<EdgeId>{0, 1, 3});
  // the caller's order decides which cycle edge survives
  CHECK(shell::extend_forest(g, {}, {2, 0, 1, 3}) == std::vector<EdgeId>{0, 2, 3});
  CHECK(shell::extend_forest(g, {2}, {0, 1, 3}) == std::vector<EdgeId>{0, 2, 3});
}

TEST_CASE("certified ratio by terminal count") {
  CHECK(shell::certified_ratio(0, Rational(1, 4), Rational(1, 4)) == Rational(2) * Rational(5, 4) * Rational(25, 16));
  CHECK(shell::certified_ratio(1, Rational(1, 4), Rational(1, 4)) == Rational(2) * Rational(5, 4) * Rational(25, 16));
  CHECK(shell::certified_ratio(2, Rational(1, 4), Rational(1, 4)) == Rational(125, 64));
  CHECK(shell::certified_ratio(4, Rational(1, 4), Rational(1, 4)) == Rational(375, 128));
  CHECK(shell::certified_ratio(2, Rational(0), Rational(0)) == Rational(1));
}

TEST_CASE("initial radius and phase bound") {
  CHECK(shell::initial_radius(Rational(1, 4)) == Rational(1, 16));
  auto g = make_graph(3, {{0, 1, 1}, {1, 2, 2}});
  // ceil(log_{5/4}(4 * (5/4) * 3 * 2 / (1/4))) + 1 = ceil(log_{5/4} 120) + 1
  CHECK(shell::phase_bound(g, Rational(1, 4), Rational(1, 4)) == ceil_log(Rational(5, 4), Rational(120)) + 1);
  CHECK(shell::phase_bound(g, Rational(1, 4), Rational(1, 4)) == 23);
}

TEST_CASE("path instance: exact run values") {
  auto g = make_graph(3, {{0, 1, 1}, {1, 2, 2}});
  auto spec = ic_spec(3, {{0, 0}, {2, 0}});
  auto rep = run_shell_decomposition(g, spec, Rational(1, 4), Rational(1, 4));
  CHECK(rep.forest == std::vector<EdgeId>{0, 1});
  CHECK(rep.cost == 3);
  CHECK(rep.terminal_count == 2);
  CHECK(rep.certified_ratio == Rational(125, 64));
  CHECK(rep.phases == 9);
  CHECK(rep.lower_bound == Rational(325089, 163840));
  CHECK(rep.cost <= rep.certified_ratio * rep.lower_bound);
  CHECK(rep.phases <= shell::phase_bound(g, Rational(1, 4), Rational(1, 4)));

  auto gw = run_gw_reference(g, spec);
  CHECK(gw.cost == 3);
  CHECK(gw.lower_bound == Rational(3));
  CHECK(gw.forest == std::vector<EdgeId>{0, 1});
}

TEST_CASE("fixed random instance: regression anchor") {
  auto inst = gen_random("random", "SF_IC", 8, 12, 8, 42);
  auto rep = run_shell_decomposition(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4));
  CHECK(rep.cost == 27);
  CHECK(rep.lower_bound == Rational(490275369, 41943040));
  CHECK(rep.phases == 13);
  CHECK(rep.terminal_count == 7);
  CHECK(rep.forest == std::vector<EdgeId>{0, 2, 4, 5, 7, 11});

  auto gw = run_gw_reference(inst.graph, inst.problem);
  CHECK(gw.cost == 24);
  CHECK(gw.lower_bound == Rational(35, 2));
}

TEST_CASE("runs are deterministic") {
  auto inst = gen_random("random", "PPC", 10, 16, 6, 9);
  auto a = run_shell_decomposition(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4));
  auto b = run_shell_decomposition(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4));
  CHECK(a.forest == b.forest);
  CHECK(a.lower_bound == b.lower_bound);
  CHECK(a.phases == b.phases);
}

TEST_CASE("inactive problem yields the empty forest") {
  auto g = make_graph(3, {{0, 1, 1}, {1, 2, 2}});
  auto spec = ic_spec(3, {});
  auto rep = run_shell_decomposition(g, spec, Rational(1, 4), Rational(1, 4));
  CHECK(rep.forest.empty());
  CHECK(rep.cost == 0);
  CHECK(rep.lower_bound == Rational(0));
  CHECK(rep.phases == 0);
}

TEST_CASE("FPC run reports the opened facilities") {
  auto g = make_graph(2, {{0, 1, 1}});
  auto [ag, aspec] = augment_fpc(g, {BigInt(1), BigInt(3)}, {0, 1});
  auto rep = run_shell_decomposition(ag, aspec, Rational(1, 4), Rational(1, 4));
  CHECK(rep.cost == 2);
  CHECK(rep.opened_facilities == std::vector<NodeId>{0});
}

TEST_CASE("phase traces account the lower bound") {
  auto inst = gen_random("random", "SF_IC", 8, 12, 8, 42);
  auto rep = run_shell_decomposition(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4));
  REQUIRE(static_cast<int>(rep.traces.size()) == rep.phases);
  Rational lb(0);
  for (const auto& t : rep.traces) lb += t.lb_increment;
  CHECK(lb == rep.lower_bound);
  // the final phase deactivates everything
  CHECK(rep.traces.back().active_after == 0);
}
