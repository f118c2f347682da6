#include "problem.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfp {

namespace {

// Symmetrized request pairs (u < v), deduplicated.
std::vector<std::pair<NodeId, NodeId>> request_pairs(const std::vector<std::set<NodeId>>& requests) {
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (size_t v = 0; v < requests.size(); ++v)
    for (NodeId u : requests[v]) {
      NodeId a = static_cast<NodeId>(v), b = u;
      if (a > b) std::swap(a, b);
      pairs.insert({a, b});
    }
  return {pairs.begin(), pairs.end()};
}

// label -> member nodes
std::map<int, std::vector<NodeId>> label_classes(const std::vector<int>& label) {
  std::map<int, std::vector<NodeId>> cls;
  for (size_t v = 0; v < label.size(); ++v)
    if (label[v] >= 0) cls[label[v]].push_back(static_cast<NodeId>(v));
  return cls;
}

void check_requests(const std::vector<std::set<NodeId>>& requests, int n) {
  if (requests.size() != static_cast<size_t>(n)) throw std::invalid_argument("request table size mismatch");
  for (size_t v = 0; v < requests.size(); ++v)
    for (NodeId u : requests[v]) {
      if (u < 0 || u >= n) throw std::invalid_argument("request target out of range");
      if (u == static_cast<NodeId>(v)) throw std::invalid_argument("self-request");
    }
}

}  // namespace

const char* ProblemSpec::variant_name() const {
  switch (data.index()) {
    case 0: return "SF_IC";
    case 1: return "SF_CR";
    case 2: return "SF_SCR";
    case 3: return "SF_CIC";
    case 4: return "PPC";
    default: return "FPC";
  }
}

void ProblemSpec::validate(const WeightedGraph& g) const {
  const int n = g.n;
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, SfIc> || std::is_same_v<T, SfCic>) {
          if (spec.label.size() != static_cast<size_t>(n)) throw std::invalid_argument("label vector size mismatch");
          auto cls = label_classes(spec.label);
          for (const auto& [lab, members] : cls)
            if (members.size() < 2) throw std::invalid_argument("input component with fewer than two nodes");
          if constexpr (std::is_same_v<T, SfCic>) {
            for (const auto& [lab, members] : cls) {
              if (lab < 0 || static_cast<size_t>(lab) >= spec.cardinality.size())
                throw std::invalid_argument("cardinality missing for label");
              if (spec.cardinality[static_cast<size_t>(lab)] != static_cast<int>(members.size()))
                throw std::invalid_argument("declared cardinality does not match label count");
            }
          }
        } else if constexpr (std::is_same_v<T, SfCr>) {
          check_requests(spec.requests, n);
        } else if constexpr (std::is_same_v<T, SfScr>) {
          check_requests(spec.requests, n);
          for (size_t v = 0; v < spec.requests.size(); ++v)
            for (NodeId u : spec.requests[v])
              if (!spec.requests[static_cast<size_t>(u)].count(static_cast<NodeId>(v)))
                throw std::invalid_argument("SCR requests must be symmetric");
        } else if constexpr (std::is_same_v<T, Ppc>) {
          if (spec.sources.size() != spec.targets.size())
            throw std::invalid_argument("PPC requires |X| = |Y|");
          for (NodeId v : spec.sources) {
            if (v < 0 || v >= n) throw std::invalid_argument("PPC source out of range");
            if (spec.targets.count(v)) throw std::invalid_argument("PPC sources and targets must be disjoint");
          }
          for (NodeId v : spec.targets)
            if (v < 0 || v >= n) throw std::invalid_argument("PPC target out of range");
        } else if constexpr (std::is_same_v<T, Fpc>) {
          if (spec.virtual_node < 0 || spec.virtual_node >= n)
            throw std::invalid_argument("FPC virtual node out of range");
          if (!g.is_virtual(spec.virtual_node))
            throw std::invalid_argument("FPC node s must be flagged virtual in the graph");
          if (spec.clients.count(spec.virtual_node))
            throw std::invalid_argument("virtual node cannot be a client");
          for (NodeId v : spec.clients)
            if (v < 0 || v >= n) throw std::invalid_argument("client out of range");
        }
      },
      data);
}

std::vector<NodeId> ProblemSpec::terminals(int n) const {
  std::vector<NodeId> out;
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, SfIc> || std::is_same_v<T, SfCic>) {
          auto cls = label_classes(spec.label);
          for (const auto& [lab, members] : cls)
            if (members.size() >= 2)
              for (NodeId v : members) out.push_back(v);
        } else if constexpr (std::is_same_v<T, SfCr> || std::is_same_v<T, SfScr>) {
          std::set<NodeId> seen;
          for (auto [u, v] : request_pairs(spec.requests)) {
            seen.insert(u);
            seen.insert(v);
          }
          out.assign(seen.begin(), seen.end());
        } else if constexpr (std::is_same_v<T, Ppc>) {
          for (NodeId v : spec.sources) out.push_back(v);
          for (NodeId v : spec.targets) out.push_back(v);
        } else if constexpr (std::is_same_v<T, Fpc>) {
          if (!spec.clients.empty()) {
            out.assign(spec.clients.begin(), spec.clients.end());
            out.push_back(spec.virtual_node);
          }
        }
        (void)n;
      },
      data);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool f_subset(const ProblemSpec& spec, const std::set<NodeId>& s, int n) {
  for (NodeId v : s)
    if (v < 0 || v >= n) throw std::invalid_argument("f_subset: S not a subset of V");
  auto inside = [&](NodeId v) { return s.count(v) != 0; };
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SfIc> || std::is_same_v<T, SfCic>) {
          auto cls = label_classes(d.label);
          for (const auto& [lab, members] : cls) {
            size_t in = 0;
            for (NodeId v : members) in += inside(v);
            if (in > 0 && in < members.size()) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, SfCr> || std::is_same_v<T, SfScr>) {
          for (auto [u, v] : request_pairs(d.requests))
            if (inside(u) != inside(v)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, Ppc>) {
          size_t x = 0, y = 0;
          for (NodeId v : d.sources) x += inside(v);
          for (NodeId v : d.targets) y += inside(v);
          return x != y;
        } else {
          size_t in = 0;
          size_t total = d.clients.size() + 1;
          for (NodeId v : d.clients) in += inside(v);
          in += inside(d.virtual_node);
          return in > 0 && in < total;
        }
      },
      spec.data);
}

ActivityMap evaluate_components(const ProblemSpec& spec, const Partition& partition) {
  ActivityMap activity;
  for (NodeId id : partition.component_ids()) activity[id] = false;
  const auto& comp = partition.component_of;

  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SfIc> || std::is_same_v<T, SfCic>) {
          auto cls = label_classes(d.label);
          for (const auto& [lab, members] : cls) {
            std::map<NodeId, size_t> per_comp;
            for (NodeId v : members) per_comp[comp[static_cast<size_t>(v)]]++;
            if (per_comp.size() > 1)  // label split across components
              for (const auto& [c, cnt] : per_comp) activity[c] = true;
          }
        } else if constexpr (std::is_same_v<T, SfCr> || std::is_same_v<T, SfScr>) {
          for (auto [u, v] : request_pairs(d.requests)) {
            NodeId cu = comp[static_cast<size_t>(u)];
            NodeId cv = comp[static_cast<size_t>(v)];
            if (cu != cv) {
              activity[cu] = true;
              activity[cv] = true;
            }
          }
        } else if constexpr (std::is_same_v<T, Ppc>) {
          std::map<NodeId, long long> balance;
          for (NodeId v : d.sources) balance[comp[static_cast<size_t>(v)]]++;
          for (NodeId v : d.targets) balance[comp[static_cast<size_t>(v)]]--;
          for (const auto& [c, b] : balance)
            if (b != 0) activity[c] = true;
        } else {
          if (d.clients.empty()) return;
          std::map<NodeId, size_t> per_comp;
          for (NodeId v : d.clients) per_comp[comp[static_cast<size_t>(v)]]++;
          per_comp[comp[static_cast<size_t>(d.virtual_node)]]++;
          if (per_comp.size() > 1)
            for (const auto& [c, cnt] : per_comp) activity[c] = true;
        }
      },
      spec.data);
  return activity;
}

std::pair<WeightedGraph, ProblemSpec> augment_fpc(const WeightedGraph& g,
                                                  const std::vector<BigInt>& opening_cost,
                                                  const std::set<NodeId>& clients) {
  if (opening_cost.size() != static_cast<size_t>(g.n)) throw std::invalid_argument("opening cost size mismatch");
  for (const auto& o : opening_cost)
    if (o < 1) throw std::invalid_argument("opening costs must be >= 1 (scale zero weights first)");
  WeightedGraph out = g;
  NodeId s = out.n;
  out.n += 1;
  out.virtual_node.assign(static_cast<size_t>(out.n), false);
  if (!g.virtual_node.empty())
    std::copy(g.virtual_node.begin(), g.virtual_node.end(), out.virtual_node.begin());
  out.virtual_node[static_cast<size_t>(s)] = true;
  for (NodeId v = 0; v < g.n; ++v)
    out.edges.push_back(Edge{static_cast<EdgeId>(out.edges.size()), v, s, opening_cost[static_cast<size_t>(v)]});
  ProblemSpec spec{Fpc{clients, s}};
  return {std::move(out), std::move(spec)};
}

std::vector<char> f_all_subsets(const ProblemSpec& spec, int n) {
  if (n > 20) throw std::invalid_argument("f_all_subsets: n too large");
  const uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  std::vector<char> f(static_cast<size_t>(full) + 1, 0);

  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SfIc> || std::is_same_v<T, SfCic>) {
          auto cls = label_classes(d.label);
          std::vector<std::pair<uint32_t, int>> masks;  // (member mask, size)
          for (const auto& [lab, members] : cls) {
            uint32_t m = 0;
            for (NodeId v : members) m |= 1u << v;
            masks.push_back({m, static_cast<int>(members.size())});
          }
          for (uint32_t s = 0; s <= full; ++s)
            for (auto [m, sz] : masks) {
              int in = __builtin_popcount(s & m);
              if (in > 0 && in < sz) {
                f[s] = 1;
                break;
              }
            }
        } else if constexpr (std::is_same_v<T, SfCr> || std::is_same_v<T, SfScr>) {
          auto pairs = request_pairs(d.requests);
          for (uint32_t s = 0; s <= full; ++s)
            for (auto [u, v] : pairs)
              if (((s >> u) & 1u) != ((s >> v) & 1u)) {
                f[s] = 1;
                break;
              }
        } else if constexpr (std::is_same_v<T, Ppc>) {
          uint32_t xm = 0, ym = 0;
          for (NodeId v : d.sources) xm |= 1u << v;
          for (NodeId v : d.targets) ym |= 1u << v;
          for (uint32_t s = 0; s <= full; ++s)
            f[s] = __builtin_popcount(s & xm) != __builtin_popcount(s & ym);
        } else {
          if (d.clients.empty()) return;
          uint32_t tm = 1u << d.virtual_node;
          for (NodeId v : d.clients) tm |= 1u << v;
          int tot = __builtin_popcount(tm);
          for (uint32_t s = 0; s <= full; ++s) {
            int in = __builtin_popcount(s & tm);
            f[s] = in > 0 && in < tot;
          }
        }
      },
      spec.data);
  return f;
}

AxiomReport check_proper(const ProblemSpec& spec, int n) {
  if (n > 16) throw std::invalid_argument("check_proper: n > 16 refused");
  AxiomReport report;
  auto f = f_all_subsets(spec, n);
  const uint32_t full = (1u << n) - 1u;

  report.zero_ok = !f[full];
  report.nontrivial = false;
  for (uint32_t s = 0; s <= full; ++s)
    if (f[s]) {
      report.nontrivial = true;
      break;
    }
  for (uint32_t s = 0; s <= full; ++s)
    if (f[s] != f[full & ~s]) {
      report.symmetry_violations.push_back(s);
      if (report.symmetry_violations.size() >= 64) break;
    }
  // disjoint pairs via submask enumeration of the complement
  for (uint32_t a = 1; a <= full && report.disjointness_violations.size() < 64; ++a) {
    if (f[a]) continue;
    uint32_t rest = full & ~a;
    for (uint32_t b = rest; b; b = (b - 1) & rest) {
      if (b < a) break;  // unordered pairs once
      if (!f[b] && f[a | b]) {
        report.disjointness_violations.push_back({a, b});
        if (report.disjointness_violations.size() >= 64) break;
      }
    }
  }
  return report;
}

}  // namespace cfp
