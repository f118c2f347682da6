#include "blocks.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace cfp::congest {

namespace {

size_t idx(NodeId v) { return static_cast<size_t>(v); }

// ---- generic pipelined tree communication -------------------------------

// Aggregated upcast over an ordered key space: each node holds (key, value)
// contributions; values are combined along the tree. A node forwards key k
// to its parent once every child has moved past k (children emit keys in
// increasing order and finish with an end marker). One (key, value) message
// per edge per round.
struct TreeShape {
  const std::vector<NodeId>* parent;
  const std::vector<EdgeId>* parent_edge;
  const std::vector<std::vector<NodeId>>* children;
};

std::vector<std::map<int, BigInt>> aggregated_upcast(
    SimNetwork& net, const TreeShape& tree, const std::vector<std::map<int, BigInt>>& contrib,
    const std::function<BigInt(const BigInt&, const BigInt&)>& combine, int key_end,
    const std::string& tag) {
  const int n = net.g->n;
  std::vector<std::map<int, BigInt>> agg(contrib);
  std::vector<int> watermark_min(idx(n), 0);  // min over children of keys fully received
  std::vector<std::map<NodeId, int>> child_mark(idx(n));
  std::vector<int> cursor(idx(n), 0);   // next key this node may emit
  std::vector<char> done(idx(n), 0);    // end marker sent
  std::vector<char> leaf_done(idx(n), 0);

  for (NodeId v = 0; v < n; ++v) {
    if (!net.physical(v)) {
      done[idx(v)] = 1;
      continue;
    }
    for (NodeId c : (*tree.children)[idx(v)]) child_mark[idx(v)][c] = 0;
  }
  auto child_floor = [&](NodeId v) {
    int m = key_end + 1;
    for (auto& [c, k] : child_mark[idx(v)]) m = std::min(m, k);
    return m;
  };

  auto all_done = [&]() {
    for (NodeId v = 0; v < n; ++v)
      if (net.physical(v) && (*tree.parent)[idx(v)] >= 0 && !done[idx(v)]) return false;
    return true;
  };

  long long guard = 0;
  while (!all_done()) {
    if (++guard > 4LL * n + 4LL * key_end + 16)
      throw std::logic_error("aggregated_upcast failed to drain");
    auto in = net.exchange(tag, [&](NodeId v) -> SimNetwork::Outbox {
      SimNetwork::Outbox out;
      NodeId p = (*tree.parent)[idx(v)];
      if (p < 0 || done[idx(v)]) return out;
      int floor = child_floor(v);
      // emit the smallest pending key below the floor, else advance/end
      auto it = agg[idx(v)].lower_bound(cursor[idx(v)]);
      if (it != agg[idx(v)].end() && it->first < floor) {
        Message m;
        m.ints = {BigInt(it->first), it->second};
        out.emplace_back((*tree.parent_edge)[idx(v)], std::move(m));
        cursor[idx(v)] = it->first + 1;
      } else if (floor == key_end + 1 &&
                 agg[idx(v)].lower_bound(cursor[idx(v)]) == agg[idx(v)].end()) {
        Message m;
        m.ints = {BigInt(key_end), BigInt(0)};  // end marker
        out.emplace_back((*tree.parent_edge)[idx(v)], std::move(m));
        done[idx(v)] = 1;
      }
      return out;
    });
    for (NodeId v = 0; v < n; ++v) {
      for (auto& [eid, from, msg] : in[idx(v)]) {
        int key = static_cast<int>(msg.ints[0]);
        if (key == key_end) {
          child_mark[idx(v)][from] = key_end + 1;
        } else {
          child_mark[idx(v)][from] = key + 1;
          auto it = agg[idx(v)].find(key);
          if (it == agg[idx(v)].end())
            agg[idx(v)][key] = msg.ints[1];
          else
            it->second = combine(it->second, msg.ints[1]);
        }
      }
    }
  }
  return agg;
}

// Pipelined flooding of a fixed item list from the BFS root to every node.
long long pipelined_downcast(SimNetwork& net, const BfsTree& bfs,
                             const std::vector<std::vector<BigInt>>& items, const std::string& tag) {
  const int n = net.g->n;
  if (items.empty()) return 0;
  std::vector<size_t> have(idx(n), 0);  // items received (root: all)
  std::vector<size_t> sent(idx(n), 0);
  have[idx(bfs.root)] = items.size();
  long long start = net.round_count;
  auto all_have = [&]() {
    for (NodeId v = 0; v < n; ++v)
      if (net.physical(v) && bfs.depth[idx(v)] >= 0 && have[idx(v)] < items.size()) return false;
    return true;
  };
  long long guard = 0;
  while (!all_have()) {
    if (++guard > 4LL * n + 4LL * static_cast<long long>(items.size()) + 16)
      throw std::logic_error("pipelined_downcast failed to drain");
    auto in = net.exchange(tag, [&](NodeId v) -> SimNetwork::Outbox {
      SimNetwork::Outbox out;
      if (sent[idx(v)] >= have[idx(v)] || sent[idx(v)] >= items.size()) return out;
      size_t k = sent[idx(v)];
      for (NodeId c : bfs.children[idx(v)]) {
        Message m;
        m.ints = items[k];
        out.emplace_back(bfs.parent_edge[idx(c)], std::move(m));
      }
      ++sent[idx(v)];
      return out;
    });
    // one message per round per tree edge: arrival order equals send order
    for (NodeId v = 0; v < n; ++v)
      if (!in[idx(v)].empty()) ++have[idx(v)];
  }
  return net.round_count - start;
}

BigInt combine_add(const BigInt& a, const BigInt& b) { return a + b; }
BigInt combine_min(const BigInt& a, const BigInt& b) { return std::min(a, b); }
BigInt combine_or(const BigInt& a, const BigInt& b) { return (a != 0 || b != 0) ? BigInt(1) : BigInt(0); }
BigInt combine_xor(const BigInt& a, const BigInt& b) { return a ^ b; }

// IC-style label status lattice, encoded in one integer:
// 0 = not seen, 1 + c = all seen in component c, SPLIT = seen in two.
BigInt ic_split_sentinel(int n) { return BigInt(n) + 2; }
BigInt ic_combine(const BigInt& a, const BigInt& b, const BigInt& split) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (a == b) return a;
  return split;
}

}  // namespace

// ---- BFS tree -------------------------------------------------------------

BfsTree build_bfs_tree(SimNetwork& net, NodeId root) {
  const int n = net.g->n;
  if (root < 0 || root >= n || !net.physical(root))
    throw std::invalid_argument("build_bfs_tree: root must be a physical node");
  BfsTree t;
  t.root = root;
  t.parent.assign(idx(n), -1);
  t.parent_edge.assign(idx(n), -1);
  t.depth.assign(idx(n), -1);
  t.children.resize(idx(n));
  t.depth[idx(root)] = 0;
  long long start = net.round_count;

  std::vector<NodeId> frontier{root};
  while (!frontier.empty()) {
    std::vector<char> in_frontier(idx(n), 0);
    for (NodeId v : frontier) in_frontier[idx(v)] = 1;
    auto in = net.exchange("BFS", [&](NodeId v) -> SimNetwork::Outbox {
      SimNetwork::Outbox out;
      if (!in_frontier[idx(v)]) return out;
      for (auto [eid, u] : net.adj()[idx(v)]) {
        Message m;
        m.ints = {BigInt(v)};
        out.emplace_back(eid, std::move(m));
      }
      return out;
    });
    std::vector<NodeId> next;
    for (NodeId v = 0; v < n; ++v) {
      if (!net.physical(v) || t.depth[idx(v)] >= 0) continue;
      NodeId best_from = -1;
      EdgeId best_edge = -1;
      for (auto& [eid, from, msg] : in[idx(v)]) {
        if (best_from < 0 || std::tie(from, eid) < std::tie(best_from, best_edge)) {
          best_from = from;
          best_edge = eid;
        }
      }
      if (best_from >= 0) {
        t.parent[idx(v)] = best_from;
        t.parent_edge[idx(v)] = best_edge;
        t.depth[idx(v)] = t.depth[idx(best_from)] + 1;
        next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!net.physical(v)) continue;
    if (t.depth[idx(v)] < 0)
      throw std::invalid_argument("build_bfs_tree: physical graph is disconnected");
    t.height = std::max(t.height, t.depth[idx(v)]);
    if (t.parent[idx(v)] >= 0) t.children[idx(t.parent[idx(v)])].push_back(v);
  }
  t.rounds = net.round_count - start;
  return t;
}

// ---- part forest ------------------------------------------------------------

PartForest build_part_forest(SimNetwork& net, const std::vector<EdgeId>& forest_edges) {
  const int n = net.g->n;
  PartForest pf;
  pf.part_of.assign(idx(n), -1);
  pf.parent.assign(idx(n), -1);
  pf.parent_edge.assign(idx(n), -1);
  pf.depth.assign(idx(n), -1);
  pf.children.resize(idx(n));
  long long start = net.round_count;

  std::vector<std::vector<std::pair<EdgeId, NodeId>>> tree_adj(idx(n));
  for (EdgeId id : forest_edges) {
    const Edge& e = net.g->edges[idx(id)];
    if (!net.physical(e.u) || !net.physical(e.v)) continue;  // virtual fusion handled elsewhere
    tree_adj[idx(e.u)].emplace_back(id, e.v);
    tree_adj[idx(e.v)].emplace_back(id, e.u);
  }
  for (auto& lst : tree_adj)
    std::sort(lst.begin(), lst.end(),
              [](const auto& a, const auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });

  // leader election: flood the minimum known id until stable
  std::vector<NodeId> known(idx(n));
  std::iota(known.begin(), known.end(), 0);
  std::vector<char> changed(idx(n), 1);
  while (true) {
    bool any = false;
    for (NodeId v = 0; v < n; ++v)
      if (net.physical(v) && changed[idx(v)]) any = true;
    if (!any) break;
    std::vector<char> send_now(changed);
    changed.assign(idx(n), 0);
    auto in = net.exchange("PART", [&](NodeId v) -> SimNetwork::Outbox {
      SimNetwork::Outbox out;
      if (!send_now[idx(v)]) return out;
      for (auto [eid, u] : tree_adj[idx(v)]) {
        Message m;
        m.ints = {BigInt(known[idx(v)])};
        out.emplace_back(eid, std::move(m));
      }
      return out;
    });
    for (NodeId v = 0; v < n; ++v) {
      for (auto& [eid, from, msg] : in[idx(v)]) {
        NodeId cand = static_cast<int>(msg.ints[0]);
        if (cand < known[idx(v)]) {
          known[idx(v)] = cand;
          changed[idx(v)] = 1;
        }
      }
    }
  }
  pf.part_of = known;

  // BFS from each leader inside its part
  std::vector<NodeId> frontier;
  for (NodeId v = 0; v < n; ++v) {
    if (!net.physical(v)) continue;
    if (known[idx(v)] == v) {
      pf.depth[idx(v)] = 0;
      pf.roots.push_back(v);
      frontier.push_back(v);
    }
  }
  while (!frontier.empty()) {
    std::vector<char> in_frontier(idx(n), 0);
    for (NodeId v : frontier) in_frontier[idx(v)] = 1;
    auto in = net.exchange("PART", [&](NodeId v) -> SimNetwork::Outbox {
      SimNetwork::Outbox out;
      if (!in_frontier[idx(v)]) return out;
      for (auto [eid, u] : tree_adj[idx(v)]) {
        Message m;
        m.ints = {BigInt(v)};
        out.emplace_back(eid, std::move(m));
      }
      return out;
    });
    std::vector<NodeId> next;
    for (NodeId v = 0; v < n; ++v) {
      if (!net.physical(v) || pf.depth[idx(v)] >= 0) continue;
      NodeId best_from = -1;
      EdgeId best_edge = -1;
      for (auto& [eid, from, msg] : in[idx(v)]) {
        if (best_from < 0 || std::tie(from, eid) < std::tie(best_from, best_edge)) {
          best_from = from;
          best_edge = eid;
        }
      }
      if (best_from >= 0) {
        pf.parent[idx(v)] = best_from;
        pf.parent_edge[idx(v)] = best_edge;
        pf.depth[idx(v)] = pf.depth[idx(best_from)] + 1;
        next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!net.physical(v)) continue;
    pf.max_depth = std::max(pf.max_depth, pf.depth[idx(v)]);
    if (pf.parent[idx(v)] >= 0) pf.children[idx(pf.parent[idx(v)])].push_back(v);
  }
  pf.rounds = net.round_count - start;
  return pf;
}

// ---- partwise aggregation ---------------------------------------------------

std::vector<BigInt> part_convergecast(SimNetwork& net, const PartForest& pf,
                                      const std::vector<BigInt>& x,
                                      const std::function<BigInt(const BigInt&, const BigInt&)>& op,
                                      const std::string& tag) {
  const int n = net.g->n;
  std::vector<BigInt> acc(x);
  for (int d = pf.max_depth; d >= 1; --d) {
    auto in = net.exchange(tag, [&](NodeId v) -> SimNetwork::Outbox {
      SimNetwork::Outbox out;
      if (pf.depth[idx(v)] != d) return out;
      Message m;
      m.ints = {acc[idx(v)]};
      out.emplace_back(pf.parent_edge[idx(v)], std::move(m));
      return out;
    });
    for (NodeId v = 0; v < n; ++v)
      for (auto& [eid, from, msg] : in[idx(v)]) acc[idx(v)] = op(acc[idx(v)], msg.ints[0]);
  }
  return acc;
}

std::vector<BigInt> part_broadcast(SimNetwork& net, const PartForest& pf,
                                   const std::vector<BigInt>& root_value, const std::string& tag) {
  const int n = net.g->n;
  std::vector<BigInt> out_val(root_value);
  for (int d = 1; d <= pf.max_depth; ++d) {
    auto in = net.exchange(tag, [&](NodeId v) -> SimNetwork::Outbox {
      SimNetwork::Outbox out;
      if (pf.depth[idx(v)] != d - 1) return out;
      for (NodeId c : pf.children[idx(v)]) {
        Message m;
        m.ints = {out_val[idx(v)]};
        out.emplace_back(pf.parent_edge[idx(c)], std::move(m));
      }
      return out;
    });
    for (NodeId v = 0; v < n; ++v)
      for (auto& [eid, from, msg] : in[idx(v)])
        if (pf.depth[idx(v)] == d) out_val[idx(v)] = msg.ints[0];
  }
  return out_val;
}

std::pair<std::vector<BigInt>, long long> partwise_aggregate(
    SimNetwork& net, const PartForest& pf, const std::vector<BigInt>& x,
    const std::function<BigInt(const BigInt&, const BigInt&)>& op, const std::string& tag) {
  long long start = net.round_count;
  auto folded = part_convergecast(net, pf, x, op, tag);
  auto result = part_broadcast(net, pf, folded, tag);
  return {result, net.round_count - start};
}

// ---- distributed SSSP -------------------------------------------------------

DistSssp distributed_sssp(SimNetwork& net, const std::vector<Rational>& w,
                          const std::vector<bool>& live, const std::vector<NodeId>& sources,
                          const Rational& radius, int bfs_height) {
  const WeightedGraph& g = *net.g;
  const int n = g.n;
  if (sources.empty()) throw std::invalid_argument("distributed_sssp: empty source set");
  long long start = net.round_count;

  std::vector<bool> reached(idx(n), false);
  std::vector<Rational> dist(idx(n));
  std::vector<int> hops(idx(n), 0);
  std::vector<char> changed(idx(n), 0);
  bool virt_touched = false;

  auto lex_less = [](const Rational& d1, int h1, const Rational& d2, int h2) {
    return std::tie(d1, h1) < std::tie(d2, h2);
  };
  auto relax = [&](NodeId to, const Rational& nd, int nh) {
    if (!reached[idx(to)] || lex_less(nd, nh, dist[idx(to)], hops[idx(to)])) {
      reached[idx(to)] = true;
      dist[idx(to)] = nd;
      hops[idx(to)] = nh;
      changed[idx(to)] = 1;
      if (!net.physical(to)) virt_touched = true;
      return true;
    }
    return false;
  };

  for (NodeId s : sources) {
    if (s < 0 || s >= n) throw std::invalid_argument("distributed_sssp: source out of range");
    reached[idx(s)] = true;
    dist[idx(s)] = 0;
    hops[idx(s)] = 0;
    changed[idx(s)] = 1;
    if (!net.physical(s)) virt_touched = true;
  }

  auto edge_live = [&](EdgeId id) { return live.empty() || live[idx(id)]; };

  // local fixpoint across virtual-node edges; the virtual state is globally
  // replicated, and physical endpoints know their virtual-edge weights
  auto relax_virtual_local = [&]() {
    bool again = true;
    while (again) {
      again = false;
      for (const Edge& e : g.edges) {
        if (net.physical(e.u) == net.physical(e.v) && net.physical(e.u)) continue;
        if (!edge_live(e.id)) continue;
        for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
          if (!reached[idx(a)]) continue;
          if (relax(b, dist[idx(a)] + w[idx(e.id)], hops[idx(a)] + 1)) again = true;
        }
      }
    }
  };

  relax_virtual_local();
  while (true) {
    std::vector<char> send_now(changed);
    bool any = false;
    for (NodeId v = 0; v < n; ++v)
      if (net.physical(v) && send_now[idx(v)]) any = true;
    if (!any) break;
    changed.assign(idx(n), 0);
    auto in = net.exchange(
        "SSSP",
        [&](NodeId v) -> SimNetwork::Outbox {
          SimNetwork::Outbox out;
          if (!send_now[idx(v)]) return out;
          for (auto [eid, u] : net.adj()[idx(v)]) {
            if (!edge_live(eid)) continue;
            Message m;
            m.rats = {dist[idx(v)]};
            m.ints = {BigInt(hops[idx(v)])};
            out.emplace_back(eid, std::move(m));
          }
          return out;
        },
        /*width_exempt=*/true);
    for (NodeId v = 0; v < n; ++v)
      for (auto& [eid, from, msg] : in[idx(v)])
        relax(v, msg.rats[0] + w[idx(eid)], static_cast<int>(msg.ints[0]) + 1);
    relax_virtual_local();
  }
  if (virt_touched) net.tick("SSSP", 2LL * (bfs_height + 1));

  DistSssp out;
  out.forest = finish_sssp(g, w, live, sources, radius, reached, dist, hops);
  // root-id dissemination down the forest
  int maxh = 0;
  for (NodeId v = 0; v < n; ++v)
    if (out.forest.kept[idx(v)]) maxh = std::max(maxh, out.forest.hops[idx(v)]);
  net.tick("SSSP", maxh);
  out.rounds = net.round_count - start;
  return out;
}

// ---- deterministic MSF ------------------------------------------------------

namespace {

int cv_step_color(int own, int par) {
  int k = 0;
  while (((own >> k) & 1) == ((par >> k) & 1)) ++k;
  return 2 * k + ((own >> k) & 1);
}

}  // namespace

MsfResult msf_partwise(SimNetwork& net, const std::vector<char>& eligible,
                       const std::vector<BigInt>& key, const BfsTree& bfs) {
  const WeightedGraph& g = *net.g;
  const int n = g.n;
  long long start = net.round_count;

  BigInt inf = 0;
  std::map<BigInt, EdgeId> by_key;
  for (const Edge& e : g.edges) {
    if (!eligible[idx(e.id)]) continue;
    if (!by_key.emplace(key[idx(e.id)], e.id).second)
      throw std::invalid_argument("msf_partwise: keys must be a strict total order");
    inf = std::max(inf, key[idx(e.id)]);
  }
  inf += 1;

  bool has_virtual = false;
  for (NodeId v = 0; v < n; ++v)
    if (!net.physical(v)) has_virtual = true;

  std::vector<EdgeId> added;
  int phases = 0;
  const int phase_guard = ceil_log(Rational(2), Rational(std::max(n, 2))) + 1;

  while (true) {
    auto pf = build_part_forest(net, added);
    auto comps = connected_components(n, g.edges, added);

    // one round: announce the component id over every eligible physical edge
    std::vector<BigInt> neigh_comp(g.edges.size(), BigInt(-1));
    auto in = net.exchange("MSF", [&](NodeId v) -> SimNetwork::Outbox {
      SimNetwork::Outbox out;
      for (auto [eid, u] : net.adj()[idx(v)]) {
        if (!eligible[idx(eid)]) continue;
        Message m;
        m.ints = {BigInt(comps.of(v))};
        out.emplace_back(eid, std::move(m));
      }
      return out;
    });
    std::vector<std::map<EdgeId, NodeId>> heard(idx(n));
    for (NodeId v = 0; v < n; ++v)
      for (auto& [eid, from, msg] : in[idx(v)]) heard[idx(v)][eid] = static_cast<int>(msg.ints[0]);

    // per-node minimum key over eligible outgoing edges (locally witnessed)
    std::vector<BigInt> best(idx(n), inf);
    for (NodeId v = 0; v < n; ++v) {
      if (!net.physical(v)) continue;
      for (const Edge& e : g.edges) {
        if (!eligible[idx(e.id)] || (e.u != v && e.v != v)) continue;
        NodeId u = e.other(v);
        NodeId ucomp = net.physical(u) ? (heard[idx(v)].count(e.id) ? heard[idx(v)][e.id] : comps.of(u))
                                       : comps.of(u);  // virtual neighbor: globally known
        if (ucomp == comps.of(v)) continue;
        best[idx(v)] = std::min(best[idx(v)], key[idx(e.id)]);
      }
    }
    auto [part_min, pa_rounds] = partwise_aggregate(net, pf, best, combine_min, "MSF");
    (void)pa_rounds;

    // fuse parts into components; fold in edges witnessed only by virtual nodes
    std::map<NodeId, BigInt> comp_min;
    for (NodeId v = 0; v < n; ++v) {
      if (!net.physical(v)) continue;
      NodeId c = comps.of(v);
      auto it = comp_min.find(c);
      BigInt val = part_min[idx(v)];
      if (it == comp_min.end())
        comp_min[c] = val;
      else
        it->second = std::min(it->second, val);
    }
    for (const Edge& e : g.edges) {
      if (!eligible[idx(e.id)]) continue;
      if (net.physical(e.u) && net.physical(e.v)) continue;
      if (comps.of(e.u) == comps.of(e.v)) continue;
      for (NodeId x : {e.u, e.v}) {
        if (net.physical(x)) continue;
        NodeId c = comps.of(x);
        auto it = comp_min.find(c);
        if (it == comp_min.end())
          comp_min[c] = key[idx(e.id)];
        else
          it->second = std::min(it->second, key[idx(e.id)]);
      }
    }
    if (has_virtual) net.tick("MSF", 2LL * (bfs.height + 1));

    std::map<NodeId, EdgeId> sel;
    for (auto& [c, k] : comp_min)
      if (k < inf) sel[c] = by_key.at(k);
    if (sel.empty()) break;
    if (++phases > phase_guard) throw std::logic_error("msf_partwise: phase bound exceeded");

    // fragment graph: comp -> comp over its selected edge
    std::map<NodeId, NodeId> frag_parent;
    for (auto& [c, eid] : sel) {
      const Edge& e = g.edges[idx(eid)];
      frag_parent[c] = (comps.of(e.u) == c) ? comps.of(e.v) : comps.of(e.u);
    }
    auto frag_step_cost = [&]() { net.tick("MSF", 2LL * pf.max_depth + 1); };

    // Cole-Vishkin 3-coloring of the fragment pseudoforest
    std::map<NodeId, int> color;
    for (auto& [c, k] : comp_min) color[c] = c;
    auto par_color = [&](NodeId c) {
      auto it = frag_parent.find(c);
      if (it != frag_parent.end() && color.count(it->second)) return color[it->second];
      return color[c] == 0 ? 1 : 0;  // root: any differing color
    };
    int cv_iters = 0;
    while (true) {
      bool big = false;
      for (auto& [c, col] : color)
        if (col >= 6) big = true;
      if (!big) break;
      if (++cv_iters > 64) throw std::logic_error("msf_partwise: coloring failed to converge");
      std::map<NodeId, int> next;
      for (auto& [c, col] : color) next[c] = cv_step_color(col, par_color(c));
      color = std::move(next);
      frag_step_cost();
    }
    // shift-down + recolor to eliminate colors 3, 4, 5
    std::map<NodeId, std::vector<NodeId>> frag_children;
    for (auto& [c, p] : frag_parent) frag_children[p].push_back(c);
    for (int target = 5; target >= 3; --target) {
      std::map<NodeId, int> shifted;
      for (auto& [c, col] : color) {
        auto it = frag_parent.find(c);
        if (it != frag_parent.end() && color.count(it->second))
          shifted[c] = color[it->second];
        else
          shifted[c] = (col == 0) ? 1 : 0;
      }
      for (auto& [c, col] : shifted) {
        if (col != target) continue;
        std::set<int> used;
        auto it = frag_parent.find(c);
        if (it != frag_parent.end() && shifted.count(it->second)) used.insert(shifted[it->second]);
        auto ch = frag_children.find(c);
        if (ch != frag_children.end())
          for (NodeId child : ch->second)
            if (shifted.count(child)) used.insert(shifted[child]);
        for (int cand = 0; cand < 3; ++cand)
          if (!used.count(cand)) {
            col = cand;
            break;
          }
      }
      color = shifted;
      frag_step_cost();
    }

    // maximal matching by color class, then unmatched fragments keep their pick
    std::map<NodeId, bool> matched;
    for (auto& [c, col] : color) matched[c] = false;
    std::vector<EdgeId> phase_added;
    for (int col = 0; col < 3; ++col) {
      for (auto& [c, ccol] : color) {
        if (ccol != col || matched[c]) continue;
        NodeId best_from = -1;
        for (auto& [o, p] : frag_parent)
          if (p == c && !matched[o] && (best_from < 0 || o < best_from)) best_from = o;
        if (best_from >= 0) {
          matched[c] = matched[best_from] = true;
          phase_added.push_back(sel.at(best_from));
        }
      }
      frag_step_cost();
    }
    for (auto& [c, eid] : sel)
      if (!matched[c]) phase_added.push_back(eid);
    frag_step_cost();

    std::sort(phase_added.begin(), phase_added.end());
    phase_added.erase(std::unique(phase_added.begin(), phase_added.end()), phase_added.end());
    for (EdgeId id : phase_added) added.push_back(id);
    // new component ids settle via O(1) aggregations over the merged fragments
    net.tick("MSF", 2LL * pf.max_depth + 2);
  }

  std::sort(added.begin(), added.end());
  MsfResult res;
  res.edges = std::move(added);
  res.phases = phases;
  res.rounds = net.round_count - start;
  return res;
}

// ---- root-path selection ----------------------------------------------------

RpsResult rps_select(SimNetwork& net, const SsspForest& sssp, const std::vector<bool>& marked) {
  const WeightedGraph& g = *net.g;
  const int n = g.n;
  long long start = net.round_count;

  int maxh = 0;
  bool virt_involved = false;
  for (NodeId v = 0; v < n; ++v) {
    if (!sssp.kept[idx(v)]) continue;
    maxh = std::max(maxh, sssp.hops[idx(v)]);
    if (!net.physical(v)) virt_involved = true;
  }
  std::vector<char> flag(idx(n), 0);
  for (NodeId v = 0; v < n; ++v)
    if (sssp.kept[idx(v)] && marked[idx(v)]) flag[idx(v)] = 1;

  // subtree-OR by hop level; parent hops are exactly child hops minus one
  for (int h = maxh; h >= 1; --h) {
    auto in = net.exchange("RPS", [&](NodeId v) -> SimNetwork::Outbox {
      SimNetwork::Outbox out;
      if (!sssp.kept[idx(v)] || sssp.hops[idx(v)] != h || !flag[idx(v)]) return out;
      NodeId p = sssp.parent_node[idx(v)];
      if (p < 0 || !net.physical(p) || !net.physical(v)) return out;
      Message m;
      m.ints = {BigInt(1)};
      out.emplace_back(sssp.parent_edge[idx(v)], std::move(m));
      return out;
    });
    for (NodeId v = 0; v < n; ++v)
      for (auto& [eid, from, msg] : in[idx(v)])
        if (msg.ints[0] != 0) flag[idx(v)] = 1;
    // links through virtual nodes: globally replicated state
    for (NodeId v = 0; v < n; ++v) {
      if (!sssp.kept[idx(v)] || sssp.hops[idx(v)] != h || !flag[idx(v)]) continue;
      NodeId p = sssp.parent_node[idx(v)];
      if (p >= 0 && (!net.physical(p) || !net.physical(v))) flag[idx(p)] = 1;
    }
  }
  if (virt_involved) net.tick("RPS", 2);

  RpsResult res;
  for (NodeId v = 0; v < n; ++v)
    if (sssp.kept[idx(v)] && flag[idx(v)] && sssp.parent_edge[idx(v)] >= 0)
      res.edges.push_back(sssp.parent_edge[idx(v)]);
  std::sort(res.edges.begin(), res.edges.end());
  res.rounds = net.round_count - start;
  return res;
}

// ---- component view ---------------------------------------------------------

ComponentView build_component_view(SimNetwork& net, const std::vector<EdgeId>& forest,
                                   const BfsTree& bfs) {
  long long start = net.round_count;
  ComponentView cv;
  cv.pf = build_part_forest(net, forest);
  cv.comps = connected_components(net.g->n, net.g->edges, forest);
  cv.comp_of_part.assign(idx(net.g->n), -1);
  bool fused = false;
  for (NodeId r : cv.pf.roots) {
    cv.comp_of_part[idx(r)] = cv.comps.of(r);
    if (cv.comps.of(r) != r) fused = true;
  }
  for (EdgeId id : forest) {
    const Edge& e = net.g->edges[idx(id)];
    if (!net.physical(e.u) || !net.physical(e.v)) fused = true;
  }
  if (fused) net.tick("CC", 2LL * (bfs.height + 1));
  cv.rounds = net.round_count - start;
  return cv;
}

// ---- forest-function evaluation ----------------------------------------------

int prg_coin(uint64_t seed, int test, uint64_t a, uint64_t b) {
  // splitmix64 over the mixed key
  uint64_t x = seed;
  x ^= 0x9e3779b97f4a7c15ull * (static_cast<uint64_t>(test) + 1);
  x ^= (a + 0x85ebca6bull) * 0xff51afd7ed558ccdull;
  x ^= (b + 0xc2b2ae35ull) * 0xc4ceb9fe1a85ec53ull;
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  x = x ^ (x >> 31);
  return static_cast<int>(x & 1);
}

bool scr_parity_passes(const std::vector<std::set<NodeId>>& requests,
                       const std::vector<char>& in_component, uint64_t seed, int test) {
  int parity = 0;
  for (size_t u = 0; u < requests.size(); ++u) {
    if (!in_component[u]) continue;
    for (NodeId v : requests[u]) {
      uint64_t a = std::min<uint64_t>(u, static_cast<uint64_t>(v));
      uint64_t b = std::max<uint64_t>(u, static_cast<uint64_t>(v));
      parity ^= prg_coin(seed, test, a, b);
    }
  }
  return parity == 0;
}

namespace {

struct FfeContext {
  SimNetwork& net;
  const ComponentView& cv;
  const BfsTree& bfs;
  uint64_t seed;
  int kappa;
};

ActivityMap blank_activity(const ComponentView& cv) {
  ActivityMap a;
  for (NodeId c : cv.comps.component_ids()) a[c] = false;
  return a;
}

// PA-OR of per-node marks, fused per component (virtual marks folded in by
// the globally replicated state).
ActivityMap activity_from_marks(FfeContext& ctx, const std::vector<char>& marked,
                                const std::vector<char>& virtual_marked) {
  const int n = ctx.net.g->n;
  std::vector<BigInt> x(idx(n), BigInt(0));
  for (NodeId v = 0; v < n; ++v)
    if (ctx.net.physical(v) && marked[idx(v)]) x[idx(v)] = 1;
  auto [or_val, rounds] = partwise_aggregate(ctx.net, ctx.cv.pf, x, combine_or, "FFE");
  (void)rounds;
  ActivityMap act = blank_activity(ctx.cv);
  for (NodeId v = 0; v < n; ++v) {
    if (!ctx.net.physical(v)) {
      if (virtual_marked[idx(v)]) act[ctx.cv.comps.of(v)] = true;
      continue;
    }
    if (or_val[idx(v)] != 0) act[ctx.cv.comps.of(v)] = true;
  }
  return act;
}

// broadcast of the shared random seed, chunked to the message width
// (each chunk leaves headroom for the audited sign bit)
long long broadcast_seed(FfeContext& ctx, uint64_t seed) {
  long long w = std::max<long long>(ctx.net.width_limit() - 2, 1);
  std::vector<std::vector<BigInt>> items;
  for (long long shift = 0; shift < 64; shift += w) {
    uint64_t chunk = seed >> shift;
    if (w < 64) chunk &= (1ull << w) - 1;
    items.push_back({BigInt(chunk)});
  }
  return pipelined_downcast(ctx.net, ctx.bfs, items, "FFE");
}

TreeShape bfs_shape(const BfsTree& bfs) { return {&bfs.parent, &bfs.parent_edge, &bfs.children}; }
TreeShape part_shape(const PartForest& pf) { return {&pf.parent, &pf.parent_edge, &pf.children}; }

// IC-style: which labels appear in two different current components?
// key space = label ids; per-node contribution encodes (component of my
// label's terminal). virtual_extra: (label, component) pairs contributed by
// virtual nodes, folded in at the root from replicated state.
std::set<int> split_labels(FfeContext& ctx, const std::vector<int>& label, int k,
                           const std::vector<std::pair<int, NodeId>>& virtual_extra) {
  const int n = ctx.net.g->n;
  const BigInt split = ic_split_sentinel(n);
  std::vector<std::map<int, BigInt>> contrib(idx(n));
  for (NodeId v = 0; v < n; ++v) {
    if (!ctx.net.physical(v)) continue;
    if (label[idx(v)] >= 0)
      contrib[idx(v)][label[idx(v)]] = BigInt(1) + ctx.cv.comps.of(v);
  }
  auto shape = bfs_shape(ctx.bfs);
  auto agg = aggregated_upcast(
      ctx.net, shape, contrib,
      [&](const BigInt& a, const BigInt& b) { return ic_combine(a, b, split); }, k, "FFE");
  auto root_agg = agg[idx(ctx.bfs.root)];
  for (auto& [lab, comp] : virtual_extra) {
    BigInt enc = BigInt(1) + comp;
    auto it = root_agg.find(lab);
    if (it == root_agg.end())
      root_agg[lab] = enc;
    else
      it->second = ic_combine(it->second, enc, split);
  }
  std::set<int> out;
  std::vector<std::vector<BigInt>> items;
  for (auto& [lab, st] : root_agg)
    if (st == split) {
      out.insert(lab);
      items.push_back({BigInt(lab)});
    }
  pipelined_downcast(ctx.net, ctx.bfs, items, "FFE");
  return out;
}

ActivityMap ffe_ic(FfeContext& ctx, const std::vector<int>& label, int k,
                   const std::vector<std::pair<int, NodeId>>& virtual_extra) {
  const int n = ctx.net.g->n;
  auto split = split_labels(ctx, label, k, virtual_extra);
  std::vector<char> marked(idx(n), 0), virtual_marked(idx(n), 0);
  for (NodeId v = 0; v < n; ++v) {
    bool m = label[idx(v)] >= 0 && split.count(label[idx(v)]);
    if (!m) continue;
    // virtual terminals mark their component from the replicated state
    (ctx.net.physical(v) ? marked : virtual_marked)[idx(v)] = 1;
  }
  return activity_from_marks(ctx, marked, virtual_marked);
}

ActivityMap ffe_cr(FfeContext& ctx, const std::vector<std::set<NodeId>>& requests) {
  const int n = ctx.net.g->n;
  auto shape = bfs_shape(ctx.bfs);

  // sweep A: make every requested target aware it is a terminal
  std::vector<std::map<int, BigInt>> pair_items(idx(n));
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : requests[idx(u)]) pair_items[idx(u)][u * n + v] = 1;
  auto agg_a = aggregated_upcast(ctx.net, shape, pair_items, combine_or, n * n, "FFE");
  std::vector<std::vector<BigInt>> down_a;
  for (auto& [code, one] : agg_a[idx(ctx.bfs.root)]) down_a.push_back({BigInt(code)});
  pipelined_downcast(ctx.net, ctx.bfs, down_a, "FFE");
  std::set<std::pair<NodeId, NodeId>> all_requests;
  for (auto& [code, one] : agg_a[idx(ctx.bfs.root)])
    all_requests.emplace(code / n, code % n);

  // sweep B: every terminal announces its component
  std::vector<std::map<int, BigInt>> term_items(idx(n));
  for (auto& [u, v] : all_requests) {
    term_items[idx(u)][u] = BigInt(1) + ctx.cv.comps.of(u);
    term_items[idx(v)][v] = BigInt(1) + ctx.cv.comps.of(v);
  }
  // keys are unique per source node, so no genuine combining happens
  auto agg_b = aggregated_upcast(
      ctx.net, shape, term_items, [](const BigInt& a, const BigInt&) { return a; }, n, "FFE");
  std::vector<std::vector<BigInt>> down_b;
  std::map<NodeId, NodeId> comp_of_terminal;
  for (auto& [t, enc] : agg_b[idx(ctx.bfs.root)]) {
    down_b.push_back({BigInt(t), enc});
    comp_of_terminal[t] = static_cast<int>(enc - 1);
  }
  pipelined_downcast(ctx.net, ctx.bfs, down_b, "FFE");

  // local marking: a terminal of a crossing request marks itself
  std::vector<char> marked(idx(n), 0), vmarked(idx(n), 0);
  for (auto& [u, v] : all_requests) {
    if (comp_of_terminal.at(u) != comp_of_terminal.at(v)) {
      marked[idx(u)] = 1;
      marked[idx(v)] = 1;
    }
  }
  return activity_from_marks(ctx, marked, vmarked);
}

ActivityMap ffe_scr(FfeContext& ctx, const std::vector<std::set<NodeId>>& requests) {
  const int n = ctx.net.g->n;
  broadcast_seed(ctx, ctx.seed);
  const int kappa = ctx.kappa;
  const long long B = ctx.net.width_limit();

  // per-node parity contribution per test
  std::vector<std::vector<int>> parity(idx(n), std::vector<int>(static_cast<size_t>(kappa), 0));
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : requests[idx(u)]) {
      uint64_t a = std::min(u, v), b = std::max(u, v);
      for (int j = 0; j < kappa; ++j)
        parity[idx(u)][static_cast<size_t>(j)] ^= prg_coin(ctx.seed, j, a, b);
    }

  ActivityMap act = blank_activity(ctx.cv);
  // leave headroom for the audited sign bit
  const int chunk = std::max<int>(static_cast<int>(B) - 2, 1);
  for (int base = 0; base < kappa; base += chunk) {
    int width = std::min<int>(chunk, kappa - base);
    std::vector<BigInt> x(idx(n), BigInt(0));
    for (NodeId v = 0; v < n; ++v) {
      BigInt mask = 0;
      for (int j = 0; j < width; ++j)
        if (parity[idx(v)][static_cast<size_t>(base + j)]) mask |= BigInt(1) << j;
      x[idx(v)] = mask;
    }
    auto [folded, rounds] = partwise_aggregate(ctx.net, ctx.cv.pf, x, combine_xor, "FFE");
    (void)rounds;
    for (NodeId v = 0; v < n; ++v)
      if (ctx.net.physical(v) && folded[idx(v)] != 0) act[ctx.cv.comps.of(v)] = true;
  }
  return act;
}

ActivityMap ffe_cic(FfeContext& ctx, const SfCic& cic) {
  const int n = ctx.net.g->n;
  const int k = static_cast<int>(cic.cardinality.size());
  // thresholds ceil(n^{2/3}) and ceil(n^{1/3})
  int nc = 1;
  while (nc * nc * nc < n * n) ++nc;  // nc = ceil(n^{2/3})
  int nl = 1;
  while (nl * nl * nl < n) ++nl;  // nl = ceil(n^{1/3})

  // component sizes
  std::vector<BigInt> ones(idx(n), BigInt(1));
  auto [sizes, r0] = partwise_aggregate(ctx.net, ctx.cv.pf, ones, combine_add, "FFE");
  (void)r0;

  ActivityMap act = blank_activity(ctx.cv);

  // small components: exact per-label intersection counts inside each part
  auto shape = part_shape(ctx.cv.pf);
  std::vector<std::map<int, BigInt>> counts(idx(n));
  for (NodeId v = 0; v < n; ++v)
    if (cic.label[idx(v)] >= 0) counts[idx(v)][cic.label[idx(v)]] = 1;
  auto agg = aggregated_upcast(ctx.net, shape, counts, combine_add, k, "FFE");
  for (NodeId r : ctx.cv.pf.roots) {
    if (sizes[idx(r)] > nc) continue;
    for (auto& [lab, cnt] : agg[idx(r)]) {
      if (cnt > 0 && cnt < cic.cardinality[static_cast<size_t>(lab)])
        act[ctx.cv.comps.of(r)] = true;
    }
  }
  // activity verdict travels back down inside the part
  std::vector<BigInt> verdict(idx(n), BigInt(0));
  part_broadcast(ctx.net, ctx.cv.pf, verdict, "FFE");

  // large components, small input components: randomized modular tests
  broadcast_seed(ctx, ctx.seed);
  std::set<int> small_sizes;
  for (int lab = 0; lab < k; ++lab)
    if (cic.cardinality[static_cast<size_t>(lab)] < nl && cic.cardinality[static_cast<size_t>(lab)] >= 2)
      small_sizes.insert(cic.cardinality[static_cast<size_t>(lab)]);
  for (int s : small_sizes) {
    for (int j = 0; j < ctx.kappa; ++j) {
      std::vector<BigInt> x(idx(n), BigInt(0));
      for (NodeId v = 0; v < n; ++v) {
        int lab = cic.label[idx(v)];
        if (lab >= 0 && cic.cardinality[static_cast<size_t>(lab)] == s)
          x[idx(v)] = prg_coin(ctx.seed, j, static_cast<uint64_t>(s), static_cast<uint64_t>(lab));
      }
      auto [sums, rr] = partwise_aggregate(ctx.net, ctx.cv.pf, x, combine_add, "FFE");
      (void)rr;
      for (NodeId r : ctx.cv.pf.roots) {
        if (sizes[idx(r)] <= nc) continue;
        if (sums[idx(r)] % s != 0) act[ctx.cv.comps.of(r)] = true;
      }
    }
  }

  // large components, large input components: global IC-style split check
  std::vector<int> big_label(idx(n), -1);
  for (NodeId v = 0; v < n; ++v) {
    int lab = cic.label[idx(v)];
    if (lab >= 0 && cic.cardinality[static_cast<size_t>(lab)] >= nl) big_label[idx(v)] = lab;
  }
  auto split = split_labels(ctx, big_label, k, {});
  std::vector<char> marked(idx(n), 0), vmarked(idx(n), 0);
  for (NodeId v = 0; v < n; ++v)
    if (big_label[idx(v)] >= 0 && split.count(big_label[idx(v)])) marked[idx(v)] = 1;
  auto big_act = activity_from_marks(ctx, marked, vmarked);
  for (NodeId r : ctx.cv.pf.roots) {
    if (sizes[idx(r)] <= nc) continue;
    if (big_act.at(ctx.cv.comps.of(r))) act[ctx.cv.comps.of(r)] = true;
  }
  return act;
}

ActivityMap ffe_ppc(FfeContext& ctx, const Ppc& ppc) {
  const int n = ctx.net.g->n;
  std::vector<BigInt> x(idx(n), BigInt(0));
  for (NodeId v : ppc.sources) x[idx(v)] += 1;
  for (NodeId v : ppc.targets) x[idx(v)] -= 1;
  auto [bal, rounds] = partwise_aggregate(ctx.net, ctx.cv.pf, x, combine_add, "FFE");
  (void)rounds;
  ActivityMap act = blank_activity(ctx.cv);
  for (NodeId v = 0; v < n; ++v)
    if (ctx.net.physical(v) && bal[idx(v)] != 0) act[ctx.cv.comps.of(v)] = true;
  return act;
}

ActivityMap ffe_fpc(FfeContext& ctx, const Fpc& fpc) {
  const int n = ctx.net.g->n;
  std::vector<int> label(idx(n), -1);
  for (NodeId v : fpc.clients) label[idx(v)] = 0;
  std::vector<std::pair<int, NodeId>> virtual_extra;
  virtual_extra.emplace_back(0, ctx.cv.comps.of(fpc.virtual_node));
  label[idx(fpc.virtual_node)] = 0;  // replicated state: s is a terminal
  return ffe_ic(ctx, label, 1, virtual_extra);
}

}  // namespace

FfeResult ffe_distributed(SimNetwork& net, const ProblemSpec& spec, const ComponentView& cv,
                          const BfsTree& bfs, uint64_t seed, int kappa) {
  if (kappa <= 0)
    kappa = std::max(60, 3 * ceil_log(Rational(2), Rational(std::max(net.g->n, 2))));
  FfeContext ctx{net, cv, bfs, seed, kappa};
  long long start = net.round_count;
  FfeResult res;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SfIc>) {
          int k = 0;
          for (int l : d.label) k = std::max(k, l + 1);
          res.activity = ffe_ic(ctx, d.label, k, {});
        } else if constexpr (std::is_same_v<T, SfCr>) {
          res.activity = ffe_cr(ctx, d.requests);
        } else if constexpr (std::is_same_v<T, SfScr>) {
          res.activity = ffe_scr(ctx, d.requests);
        } else if constexpr (std::is_same_v<T, SfCic>) {
          res.activity = ffe_cic(ctx, d);
        } else if constexpr (std::is_same_v<T, Ppc>) {
          res.activity = ffe_ppc(ctx, d);
        } else if constexpr (std::is_same_v<T, Fpc>) {
          res.activity = ffe_fpc(ctx, d);
        }
      },
      spec.data);
  res.rounds = net.round_count - start;
  return res;
}

}  // namespace cfp::congest
