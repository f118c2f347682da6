#include "congest/distributed.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "instance.hpp"
#include "oracle.hpp"

using namespace cfp;
using namespace cfp::congest;
using testutil::ic_spec;
using testutil::make_graph;

TEST_CASE("distributed run equals the centralized run on every variant") {
  for (const char* variant : {"SF_IC", "SF_CR", "SF_SCR", "SF_CIC", "PPC", "FPC"}) {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      auto inst = gen_random("random", variant, 10, 15, 7, seed);
      auto central = run_shell_decomposition(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4));
      auto dist = run_distributed_cfp(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4), seed);
      CAPTURE(variant);
      CAPTURE(seed);
      CHECK(dist.forest == central.forest);
      CHECK(dist.cost == central.cost);
      CHECK(dist.lower_bound == central.lower_bound);
      CHECK(dist.phases == central.phases);
      CHECK(dist.terminal_count == central.terminal_count);
      CHECK(dist.opened_facilities == central.opened_facilities);
    }
  }
}

TEST_CASE("distributed run produces per-phase round accounting") {
  auto inst = gen_random("random", "SF_SCR", 12, 18, 6, 4);
  auto rep = run_distributed_cfp(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4), 4);
  REQUIRE(rep.phases > 0);
  REQUIRE(static_cast<int>(rep.phase_rounds.size()) == rep.phases);
  CHECK(rep.total_rounds > 0);
  CHECK(rep.total_messages > 0);
  CHECK(rep.bfs_depth > 0);
  CHECK(rep.pa_rounds_max > 0);
  long long phase_total = 0;
  for (const auto& per_tag : rep.phase_rounds) {
    CHECK(per_tag.count("SSSP"));
    CHECK(per_tag.count("FFE"));
    CHECK(per_tag.count("MSF"));
    for (const auto& [tag, r] : per_tag) {
      CHECK(r >= 0);
      phase_total += r;
    }
  }
  // setup (BFS, initial component view) also costs rounds
  CHECK(phase_total <= rep.total_rounds);
}

TEST_CASE("message width follows c_b") {
  auto inst = gen_random("random", "SF_IC", 10, 14, 5, 2);
  // a generous width and a tight-but-sufficient width agree on the output
  auto a = run_distributed_cfp(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4), 1, 8);
  auto b = run_distributed_cfp(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4), 1, 4);
  CHECK(a.forest == b.forest);
  CHECK(a.total_rounds == b.total_rounds);
}

TEST_CASE("trace sink receives per-round lines") {
  auto g = make_graph(4, {{0, 1, 2}, {1, 2, 1}, {2, 3, 2}, {0, 3, 4}});
  auto spec = ic_spec(4, {{0, 0}, {3, 0}});
  std::vector<std::string> trace;
  auto rep = run_distributed_cfp(g, spec, Rational(1, 4), Rational(1, 4), 1, 4, 0, &trace);
  CHECK(rep.cost > 0);
  CHECK(!trace.empty());
}

TEST_CASE("distributed runs are reproducible for a fixed seed") {
  auto inst = gen_random("random", "SF_CIC", 12, 18, 6, 11);
  auto a = run_distributed_cfp(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4), 77);
  auto b = run_distributed_cfp(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4), 77);
  CHECK(a.forest == b.forest);
  CHECK(a.total_rounds == b.total_rounds);
  CHECK(a.total_messages == b.total_messages);
}

TEST_CASE("distributed result certifies against the oracle") {
  auto inst = gen_random("random", "PPC", 9, 13, 6, 6);
  auto rep = run_distributed_cfp(inst.graph, inst.problem, Rational(1, 4), Rational(1, 4), 6);
  auto opt = brute_force_opt(inst.graph, inst.problem);
  auto cert = certify_run(inst.graph, inst.problem, rep.forest, rep.lower_bound, Rational(1, 4),
                          Rational(1, 4), opt);
  CHECK(cert.ok());
}
