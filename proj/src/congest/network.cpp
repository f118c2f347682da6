#include "network.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace cfp::congest {

namespace {

long long int_bits(const BigInt& v) {
  BigInt a = v < 0 ? BigInt(-v) : v;
  long long b = (a == 0) ? 1 : static_cast<long long>(boost::multiprecision::msb(a)) + 1;
  return b + 1;  // sign bit
}

}  // namespace

long long Message::bits() const {
  long long total = 0;
  for (const auto& v : ints) total += int_bits(v);
  for (const auto& r : rats) total += int_bits(numerator(r)) + int_bits(denominator(r));
  return std::max<long long>(total, 1);
}

SimNetwork::SimNetwork(const WeightedGraph& graph, int c_b_, bool audit_)
    : g(&graph), c_b(c_b_), audit(audit_) {
  if (c_b < 1) throw std::invalid_argument("SimNetwork: c_b must be >= 1");
  adj_.resize(static_cast<size_t>(g->n));
  for (const auto& e : g->edges) {
    if (g->is_virtual(e.u) || g->is_virtual(e.v)) continue;
    adj_[static_cast<size_t>(e.u)].emplace_back(e.id, e.v);
    adj_[static_cast<size_t>(e.v)].emplace_back(e.id, e.u);
  }
  for (auto& lst : adj_)
    std::sort(lst.begin(), lst.end(), [](const auto& a, const auto& b) {
      return std::tie(a.second, a.first) < std::tie(b.second, b.first);
    });
}

long long SimNetwork::width_limit() const {
  int n = std::max(g->n, 2);
  return static_cast<long long>(c_b) * ceil_log(Rational(2), Rational(n));
}

std::vector<SimNetwork::Inbox> SimNetwork::exchange(const std::string& tag,
                                                    const std::function<Outbox(NodeId)>& send,
                                                    bool width_exempt) {
  std::vector<Inbox> in(static_cast<size_t>(g->n));
  const long long limit = width_limit();
  for (NodeId v = 0; v < g->n; ++v) {
    if (!physical(v)) continue;
    long long sent_bits = 0;
    std::vector<char> used(g->edges.size(), 0);
    for (auto& [eid, msg] : send(v)) {
      if (eid < 0 || static_cast<size_t>(eid) >= g->edges.size())
        throw CongestionError(tag + ": message on unknown edge");
      const Edge& e = g->edges[static_cast<size_t>(eid)];
      if (e.u != v && e.v != v)
        throw CongestionError(tag + ": node " + std::to_string(v) + " sent on a non-incident edge");
      NodeId to = e.other(v);
      if (!physical(to) || !physical(v))
        throw CongestionError(tag + ": message on a virtual-node edge");
      if (used[static_cast<size_t>(eid)])
        throw CongestionError(tag + ": two messages on one edge in one round");
      used[static_cast<size_t>(eid)] = 1;
      long long b = msg.bits();
      if (width_exempt) {
        exempt_max_bits = std::max(exempt_max_bits, b);
      } else if (audit && b > limit) {
        throw CongestionError(tag + ": message of " + std::to_string(b) + " bits exceeds B=" +
                              std::to_string(limit));
      }
      sent_bits += b;
      ++message_count;
      in[static_cast<size_t>(to)].emplace_back(eid, v, std::move(msg));
    }
    if (trace && sent_bits > 0)
      trace->push_back("round " + std::to_string(round_count) + " node " + std::to_string(v) +
                       " bits " + std::to_string(sent_bits) + " tag " + tag);
  }
  ++round_count;
  ++rounds_by_tag[tag];
  // deterministic inbox order regardless of scheduling
  for (auto& box : in)
    std::sort(box.begin(), box.end(), [](const auto& a, const auto& b) {
      return std::get<0>(a) < std::get<0>(b);
    });
  return in;
}

void SimNetwork::tick(const std::string& tag, long long rounds) {
  round_count += rounds;
  rounds_by_tag[tag] += rounds;
  if (trace && rounds > 0)
    trace->push_back("round " + std::to_string(round_count) + " node - bits 0 tag " + tag);
}

}  // namespace cfp::congest
