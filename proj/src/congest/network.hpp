#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>

#include "../graph.hpp"

namespace cfp::congest {

// One logical message on one edge in one round. Fields are typed (ids,
// counters, bitmasks as integers; exact distances as rationals); the audit
// charges an encoded width per field.
struct Message {
  std::vector<BigInt> ints;
  std::vector<Rational> rats;
  long long bits() const;
};

struct CongestionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Synchronous message-passing layer over the physical graph. Virtual nodes
// are excluded from the topology: sending on an edge with a virtual endpoint
// is an error; their state lives in the controllers and is charged via tick.
struct SimNetwork {
  const WeightedGraph* g = nullptr;
  int c_b = 4;
  bool audit = true;
  long long round_count = 0;
  long long message_count = 0;
  long long exempt_max_bits = 0;  // widest audited-exempt message seen
  std::map<std::string, long long> rounds_by_tag;
  std::vector<std::string>* trace = nullptr;

  explicit SimNetwork(const WeightedGraph& graph, int c_b_ = 4, bool audit_ = true);

  long long width_limit() const;  // B = c_b * ceil(log2 n)
  bool physical(NodeId v) const { return !g->is_virtual(v); }
  // physical adjacency, sorted by (neighbor, edge id)
  const std::vector<std::vector<std::pair<EdgeId, NodeId>>>& adj() const { return adj_; }

  using Outbox = std::vector<std::pair<EdgeId, Message>>;
  using Inbox = std::vector<std::tuple<EdgeId, NodeId, Message>>;  // (edge, from, msg)

  // One round: send(v) is called per physical node and may address only
  // physical edges incident to v; returns the per-node inboxes.
  std::vector<Inbox> exchange(const std::string& tag, const std::function<Outbox(NodeId)>& send,
                              bool width_exempt = false);

  // Charges rounds for globally-known bookkeeping (virtual-node state
  // updates, controller barriers) without traffic.
  void tick(const std::string& tag, long long rounds = 1);

 private:
  std::vector<std::vector<std::pair<EdgeId, NodeId>>> adj_;
};

}  // namespace cfp::congest
