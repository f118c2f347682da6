#include "graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace cfp {

BigInt WeightedGraph::max_cost() const {
  BigInt m = 0;
  for (const auto& e : edges) m = std::max(m, e.cost);
  return m;
}

std::vector<std::vector<std::pair<EdgeId, NodeId>>> WeightedGraph::adjacency() const {
  std::vector<std::vector<std::pair<EdgeId, NodeId>>> adj(static_cast<size_t>(n));
  for (const auto& e : edges) {
    adj[static_cast<size_t>(e.u)].emplace_back(e.id, e.v);
    adj[static_cast<size_t>(e.v)].emplace_back(e.id, e.u);
  }
  for (auto& lst : adj) {
    std::sort(lst.begin(), lst.end(),
              [](const auto& a, const auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
  }
  return adj;
}

void WeightedGraph::validate() const {
  std::set<std::pair<NodeId, NodeId>> seen;
  for (size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.id != static_cast<EdgeId>(i)) throw std::invalid_argument("edge ids must be 0..m-1 in order");
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert({key.first, key.second}).second) throw std::invalid_argument("parallel edge");
    if (e.cost < 1) throw std::invalid_argument("edge cost must be >= 1");
  }
  if (!virtual_node.empty() && virtual_node.size() != static_cast<size_t>(n))
    throw std::invalid_argument("virtual-node flags size mismatch");
}

std::vector<NodeId> Partition::component_ids() const {
  std::vector<NodeId> ids(component_of);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<std::vector<NodeId>> Partition::groups() const {
  std::map<NodeId, std::vector<NodeId>> by_id;
  for (size_t v = 0; v < component_of.size(); ++v) by_id[component_of[v]].push_back(static_cast<NodeId>(v));
  std::vector<std::vector<NodeId>> out;
  out.reserve(by_id.size());
  for (auto& [id, nodes] : by_id) out.push_back(std::move(nodes));
  return out;
}

DisjointSet::DisjointSet(int n) : parent_(static_cast<size_t>(n)) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

NodeId DisjointSet::find(NodeId v) {
  while (parent_[static_cast<size_t>(v)] != v) {
    parent_[static_cast<size_t>(v)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(v)])];
    v = parent_[static_cast<size_t>(v)];
  }
  return v;
}

bool DisjointSet::unite(NodeId a, NodeId b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  // keep the smaller id as representative, so find() already yields the
  // canonical component id
  if (a > b) std::swap(a, b);
  parent_[static_cast<size_t>(b)] = a;
  return true;
}

namespace {

Partition finish_partition(int n, DisjointSet& dsu) {
  Partition p;
  p.component_of.resize(static_cast<size_t>(n));
  for (NodeId v = 0; v < n; ++v) p.component_of[static_cast<size_t>(v)] = dsu.find(v);
  return p;
}

}  // namespace

Partition connected_components(int n, const std::vector<Edge>& all_edges,
                               const std::vector<EdgeId>& edge_set) {
  DisjointSet dsu(n);
  for (EdgeId id : edge_set) dsu.unite(all_edges[static_cast<size_t>(id)].u, all_edges[static_cast<size_t>(id)].v);
  return finish_partition(n, dsu);
}

Partition connected_components(int n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  DisjointSet dsu(n);
  for (auto [u, v] : pairs) dsu.unite(u, v);
  return finish_partition(n, dsu);
}

WeightedGraph scale_zero_weights(const WeightedGraph& g, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
  for (const auto& e : g.edges)
    if (e.cost < 0) throw std::invalid_argument("negative edge cost");
  // multiplier ceil(n / eps)
  BigInt num = BigInt(g.n) * denominator(eps);
  BigInt den = numerator(eps);
  BigInt mult = num / den + (num % den == 0 ? 0 : 1);
  if (mult < 1) mult = 1;
  WeightedGraph out = g;
  for (auto& e : out.edges) e.cost = (e.cost == 0) ? BigInt(1) : e.cost * mult;
  return out;
}

std::vector<EdgeId> minimum_spanning_forest(const WeightedGraph& g,
                                            const std::vector<Rational>& weight) {
  std::vector<EdgeId> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    const auto& wa = weight[static_cast<size_t>(a)];
    const auto& wb = weight[static_cast<size_t>(b)];
    if (wa != wb) return wa < wb;
    return a < b;
  });
  DisjointSet dsu(g.n);
  std::vector<EdgeId> out;
  for (EdgeId id : order) {
    const auto& e = g.edges[static_cast<size_t>(id)];
    if (dsu.unite(e.u, e.v)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SsspForest sssp_forest(const WeightedGraph& g, const std::vector<Rational>& reduced_cost,
                       const std::vector<NodeId>& sources, const Rational& radius,
                       const Rational& alpha, const std::vector<bool>& live) {
  if (sources.empty()) throw std::invalid_argument("sssp_forest: empty source set");
  if (alpha < 1) throw std::invalid_argument("sssp_forest: alpha must be >= 1");
  for (const auto& c : reduced_cost)
    if (c < 0) throw std::invalid_argument("sssp_forest: negative reduced cost");

  std::vector<Rational> w(reduced_cost);
  if (alpha > 1) {
    for (auto& c : w)
      if (c > 0) c = round_up_to_power(alpha, c);
  }

  auto edge_live = [&](EdgeId id) { return live.empty() || live[static_cast<size_t>(id)]; };
  auto adj = g.adjacency();

  const size_t N = static_cast<size_t>(g.n);
  std::vector<bool> reached(N, false);
  std::vector<Rational> dist(N);
  std::vector<int> hops(N, 0);
  std::vector<bool> settled(N, false);

  // lexicographic Dijkstra on (distance, hop count), popping by node id on ties
  using QK = std::tuple<Rational, int, NodeId>;
  std::priority_queue<QK, std::vector<QK>, std::greater<>> pq;
  for (NodeId s : sources) {
    if (s < 0 || s >= g.n) throw std::invalid_argument("sssp_forest: source out of range");
    if (!reached[static_cast<size_t>(s)]) {
      reached[static_cast<size_t>(s)] = true;
      dist[static_cast<size_t>(s)] = 0;
      hops[static_cast<size_t>(s)] = 0;
      pq.emplace(Rational(0), 0, s);
    }
  }
  while (!pq.empty()) {
    auto [d, h, u] = pq.top();
    pq.pop();
    const size_t ui = static_cast<size_t>(u);
    if (settled[ui] || d != dist[ui] || h != hops[ui]) continue;
    settled[ui] = true;
    for (auto [eid, v] : adj[ui]) {
      if (!edge_live(eid)) continue;
      const size_t vi = static_cast<size_t>(v);
      Rational nd = d + w[static_cast<size_t>(eid)];
      int nh = h + 1;
      if (!reached[vi] || std::tie(nd, nh) < std::tie(dist[vi], hops[vi])) {
        reached[vi] = true;
        dist[vi] = nd;
        hops[vi] = nh;
        pq.emplace(nd, nh, v);
      }
    }
  }

  return finish_sssp(g, w, live, sources, radius, reached, dist, hops);
}

SsspForest finish_sssp(const WeightedGraph& g, const std::vector<Rational>& w,
                       const std::vector<bool>& live, const std::vector<NodeId>& sources,
                       const Rational& radius, const std::vector<bool>& reached,
                       const std::vector<Rational>& dist, const std::vector<int>& hops) {
  auto edge_live = [&](EdgeId id) { return live.empty() || live[static_cast<size_t>(id)]; };
  auto adj = g.adjacency();
  const size_t N = static_cast<size_t>(g.n);

  SsspForest out;
  out.kept.assign(N, false);
  out.dist.assign(N, Rational(0));
  out.hops.assign(N, 0);
  out.parent_edge.assign(N, -1);
  out.parent_node.assign(N, -1);
  out.root.assign(N, -1);

  std::vector<bool> is_source(N, false);
  for (NodeId s : sources) is_source[static_cast<size_t>(s)] = true;

  for (size_t v = 0; v < N; ++v) {
    if (!reached[v] || dist[v] > radius) continue;
    out.kept[v] = true;
    out.dist[v] = dist[v];
    out.hops[v] = hops[v];
  }
  // Parents are recomputed from converged distances via a local rule, so a
  // synchronous distributed computation of the same distances selects the
  // same forest: minimum (node-id, edge-id) predecessor attaining (d, h).
  for (size_t v = 0; v < N; ++v) {
    if (!out.kept[v] || is_source[v]) continue;
    for (auto [eid, u] : adj[v]) {
      if (!edge_live(eid)) continue;
      const size_t ui = static_cast<size_t>(u);
      if (!reached[ui]) continue;
      if (dist[ui] + w[static_cast<size_t>(eid)] == dist[v] && hops[ui] + 1 == hops[v]) {
        out.parent_node[v] = static_cast<NodeId>(u);
        out.parent_edge[v] = eid;
        break;  // adjacency is sorted by (neighbor, edge id)
      }
    }
  }
  // roots in (dist, hops, id) order so parents are resolved first
  std::vector<NodeId> order;
  for (size_t v = 0; v < N; ++v)
    if (out.kept[v]) order.push_back(static_cast<NodeId>(v));
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const size_t ai = static_cast<size_t>(a), bi = static_cast<size_t>(b);
    return std::tie(dist[ai], hops[ai], a) < std::tie(dist[bi], hops[bi], b);
  });
  for (NodeId v : order) {
    const size_t vi = static_cast<size_t>(v);
    if (is_source[vi]) {
      out.root[vi] = v;
    } else {
      out.root[vi] = out.root[static_cast<size_t>(out.parent_node[vi])];
      out.forest_edges.push_back(out.parent_edge[vi]);
    }
  }
  std::sort(out.forest_edges.begin(), out.forest_edges.end());
  return out;
}

}  // namespace cfp
