#include "congest/network.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cfp;
using namespace cfp::congest;
using testutil::make_graph;

TEST_CASE("message width accounting") {
  Message m;
  m.ints = {BigInt(0)};
  CHECK(m.bits() == 2);  // one magnitude bit plus sign
  m.ints = {BigInt(5)};  // 3 magnitude bits + sign
  CHECK(m.bits() == 4);
  m.ints = {BigInt(5), BigInt(1)};
  CHECK(m.bits() == 6);
}

TEST_CASE("width limit scales with c_b and log n") {
  auto g = make_graph(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}});
  CHECK(SimNetwork(g, 4).width_limit() == 12);  // 4 * ceil(log2 5)
  CHECK(SimNetwork(g, 2).width_limit() == 6);
}

TEST_CASE("exchange rejects oversized messages") {
  auto g = make_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  SimNetwork net(g, 1);  // B = 2 bits
  auto send = [&](NodeId v) -> SimNetwork::Outbox {
    if (v != 0) return {};
    Message m;
    m.ints = {BigInt(100)};
    return {{0, m}};
  };
  CHECK_THROWS_AS(net.exchange("T", send), CongestionError);
  // the same traffic is fine when declared width-exempt
  net.exchange("T", send, /*width_exempt=*/true);
  CHECK(net.exempt_max_bits >= 8);
}

TEST_CASE("exchange rejects two messages on one edge in one round") {
  auto g = make_graph(2, {{0, 1, 1}});
  SimNetwork net(g);
  auto send = [&](NodeId v) -> SimNetwork::Outbox {
    if (v != 0) return {};
    Message m;
    m.ints = {BigInt(1)};
    return {{0, m}, {0, m}};
  };
  CHECK_THROWS_AS(net.exchange("T", send), CongestionError);
}

TEST_CASE("exchange rejects sends on non-incident edges") {
  auto g = make_graph(3, {{0, 1, 1}, {1, 2, 1}});
  SimNetwork net(g);
  auto send = [&](NodeId v) -> SimNetwork::Outbox {
    if (v != 0) return {};
    Message m;
    m.ints = {BigInt(1)};
    return {{1, m}};  // edge 1 is 1-2, not incident to 0
  };
  CHECK_THROWS_AS(net.exchange("T", send), CongestionError);
}

TEST_CASE("virtual nodes are outside the topology") {
  WeightedGraph g;
  g.n = 3;
  g.edges = {{0, 0, 1, BigInt(1)}, {1, 1, 2, BigInt(4)}};
  g.virtual_node = {false, false, true};
  SimNetwork net(g);
  auto send = [&](NodeId v) -> SimNetwork::Outbox {
    if (v != 1) return {};
    Message m;
    m.ints = {BigInt(1)};
    return {{1, m}};  // edge to the virtual node
  };
  CHECK_THROWS_AS(net.exchange("T", send), CongestionError);
}

TEST_CASE("round and message accounting by tag") {
  auto g = make_graph(3, {{0, 1, 1}, {1, 2, 1}});
  SimNetwork net(g);
  Message m;
  m.ints = {BigInt(3)};
  auto inboxes = net.exchange("X", [&](NodeId v) -> SimNetwork::Outbox {
    if (v == 0) return {{0, m}};
    if (v == 2) return {{1, m}};
    return {};
  });
  CHECK(net.round_count == 1);
  CHECK(net.message_count == 2);
  CHECK(net.rounds_by_tag.at("X") == 1);
  REQUIRE(inboxes[1].size() == 2u);
  CHECK(std::get<1>(inboxes[1][0]) == 0);
  CHECK(std::get<1>(inboxes[1][1]) == 2);
  CHECK(std::get<2>(inboxes[1][0]).ints[0] == 3);

  net.tick("Y", 5);
  CHECK(net.round_count == 6);
  CHECK(net.rounds_by_tag.at("Y") == 5);
  CHECK(net.message_count == 2);
}

TEST_CASE("trace records per-node traffic") {
  auto g = make_graph(2, {{0, 1, 1}});
  SimNetwork net(g);
  std::vector<std::string> trace;
  net.trace = &trace;
  Message m;
  m.ints = {BigInt(1)};
  net.exchange("Z", [&](NodeId v) -> SimNetwork::Outbox {
    if (v == 0) return {{0, m}};
    return {};
  });
  CHECK(!trace.empty());
}
