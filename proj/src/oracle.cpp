#include "oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cfp {

namespace {

// component array kept with min-id representatives, so it can be wrapped in a
// Partition directly
void unite_labels(std::vector<NodeId>& comp, NodeId u, NodeId v) {
  NodeId a = comp[static_cast<size_t>(u)];
  NodeId b = comp[static_cast<size_t>(v)];
  if (a == b) return;
  if (a > b) std::swap(a, b);
  for (auto& c : comp)
    if (c == b) c = a;
}

struct Search {
  const WeightedGraph& g;
  const ProblemSpec& spec;
  bool prune_cycles;
  bool found = false;
  BruteForceResult best;
  std::vector<EdgeId> chosen;

  void run(size_t idx, std::vector<NodeId>& comp, const BigInt& cost) {
    if (idx == g.edges.size()) {
      Partition p;
      p.component_of = comp;
      auto activity = evaluate_components(spec, p);
      for (const auto& [c, a] : activity)
        if (a) return;
      if (!found || cost < best.cost || (cost == best.cost && chosen < best.edges)) {
        found = true;
        best.cost = cost;
        best.edges = chosen;
      }
      return;
    }
    const auto& e = g.edges[idx];
    bool cycle = comp[static_cast<size_t>(e.u)] == comp[static_cast<size_t>(e.v)];
    if (!cycle || !prune_cycles) {
      auto saved = comp;
      unite_labels(comp, e.u, e.v);
      chosen.push_back(e.id);
      run(idx + 1, comp, cost + e.cost);
      chosen.pop_back();
      comp = saved;
    }
    run(idx + 1, comp, cost);
  }
};

std::vector<NodeId> mask_nodes(uint32_t mask, int n) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v)
    if (mask & (1u << v)) out.push_back(v);
  return out;
}

}  // namespace

BruteForceResult brute_force_opt(const WeightedGraph& g, const ProblemSpec& spec,
                                 bool prune_cycles) {
  g.validate();
  spec.validate(g);
  const size_t m = g.edges.size();
  if (prune_cycles) {
    if (m > 20 && g.n > 12) throw std::invalid_argument("brute_force_opt: instance too large");
  } else {
    if (m > 16) throw std::invalid_argument("brute_force_opt: instance too large for unpruned mode");
  }

  Search search{g, spec, prune_cycles, false, {}, {}};
  std::vector<NodeId> comp(static_cast<size_t>(g.n));
  for (NodeId v = 0; v < g.n; ++v) comp[static_cast<size_t>(v)] = v;
  search.run(0, comp, BigInt(0));
  if (!search.found) throw std::invalid_argument("brute_force_opt: no feasible edge set");

  if (g.n <= 10) {
    auto check = check_primal_feasible(g, spec, search.best.edges);
    if (!check.pass)
      throw std::logic_error("brute_force_opt: argmin fails the all-cuts check: " + check.detail);
  }
  return search.best;
}

FeasibilityResult check_primal_feasible(const WeightedGraph& g, const ProblemSpec& spec,
                                        const std::vector<EdgeId>& forest) {
  FeasibilityResult res;
  auto parts = connected_components(g.n, g.edges, forest);
  auto activity = evaluate_components(spec, parts);
  for (const auto& [c, a] : activity) {
    if (!a) continue;
    res.pass = false;
    for (NodeId v = 0; v < g.n; ++v)
      if (parts.of(v) == c) res.witness.push_back(v);
    res.detail = "active component with representative " + std::to_string(c);
    return res;
  }
  if (g.n <= 10) {
    auto f = f_all_subsets(spec, g.n);
    std::vector<char> in_f(g.edges.size(), 0);
    for (EdgeId id : forest) in_f[static_cast<size_t>(id)] = 1;
    const uint32_t full = (g.n >= 32) ? 0xffffffffu : ((1u << g.n) - 1);
    for (uint32_t mask = 1; mask < full; ++mask) {
      if (!f[mask]) continue;
      bool crossed = false;
      for (const auto& e : g.edges) {
        if (!in_f[static_cast<size_t>(e.id)]) continue;
        bool iu = (mask >> e.u) & 1u;
        bool iv = (mask >> e.v) & 1u;
        if (iu != iv) {
          crossed = true;
          break;
        }
      }
      if (!crossed) {
        res.pass = false;
        res.witness = mask_nodes(mask, g.n);
        res.detail = "uncrossed cut";
        return res;
      }
    }
  }
  return res;
}

Certificate certify_run(const WeightedGraph& g, const ProblemSpec& spec,
                        const std::vector<EdgeId>& forest, const Rational& lower_bound,
                        const Rational& eps_prime, const Rational& eps_dprime,
                        const std::optional<BruteForceResult>& opt) {
  Certificate cert;
  cert.digest = instance_digest(g, spec);
  cert.lower_bound = lower_bound;
  cert.terminal_count = static_cast<int>(spec.terminals(g.n).size());
  cert.ratio = shell::certified_ratio(cert.terminal_count, eps_prime, eps_dprime);

  DisjointSet dsu(g.n);
  for (EdgeId id : forest) {
    if (id < 0 || static_cast<size_t>(id) >= g.edges.size()) {
      cert.failures.push_back("forest references an unknown edge id");
      return cert;
    }
    if (!dsu.unite(g.edges[static_cast<size_t>(id)].u, g.edges[static_cast<size_t>(id)].v))
      cert.failures.push_back("solution contains a cycle through edge " + std::to_string(id));
  }
  cert.engine_cost = forest_cost(g, forest);

  auto feas = check_primal_feasible(g, spec, forest);
  cert.feasible = feas.pass;
  if (!feas.pass) cert.failures.push_back("primal infeasible: " + feas.detail);

  cert.cost_le_ratio_lb = Rational(cert.engine_cost) <= cert.ratio * lower_bound;
  if (!cert.cost_le_ratio_lb) cert.failures.push_back("c(F) <= ratio * LB violated");

  if (opt) {
    cert.opt_known = true;
    cert.opt_cost = opt->cost;
    cert.lb_le_opt = lower_bound <= Rational(opt->cost);
    if (!cert.lb_le_opt) cert.failures.push_back("LB <= OPT violated");
    cert.opt_le_cost = opt->cost <= cert.engine_cost;
    if (!cert.opt_le_cost) cert.failures.push_back("OPT <= c(F) violated");
  }
  return cert;
}

std::string Certificate::to_text() const {
  std::ostringstream os;
  os << "certificate " << digest << "\n";
  os << "  terminals " << terminal_count << "  ratio " << to_string(ratio) << "\n";
  os << "  c(F) " << engine_cost.str() << "  LB " << to_string(lower_bound);
  if (opt_known) os << "  OPT " << opt_cost.str();
  os << "\n";
  os << "  feasible: " << (feasible ? "PASS" : "FAIL") << "\n";
  if (opt_known) {
    os << "  LB <= OPT: " << (lb_le_opt ? "PASS" : "FAIL") << "\n";
    os << "  OPT <= c(F): " << (opt_le_cost ? "PASS" : "FAIL") << "\n";
  }
  os << "  c(F) <= ratio*LB: " << (cost_le_ratio_lb ? "PASS" : "FAIL") << "\n";
  for (const auto& f : failures) os << "  ! " << f << "\n";
  return os.str();
}

std::string instance_digest(const WeightedGraph& g, const ProblemSpec& spec) {
  std::ostringstream os;
  os << "n=" << g.n << ";";
  for (const auto& e : g.edges) os << e.u << "," << e.v << "," << e.cost.str() << ";";
  os << "virt=";
  for (NodeId v = 0; v < g.n; ++v) os << (g.is_virtual(v) ? '1' : '0');
  os << ";" << spec.variant_name() << ";";
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SfIc>) {
          for (int l : d.label) os << l << ",";
        } else if constexpr (std::is_same_v<T, SfCr> || std::is_same_v<T, SfScr>) {
          for (const auto& r : d.requests) {
            for (NodeId u : r) os << u << ",";
            os << "|";
          }
        } else if constexpr (std::is_same_v<T, SfCic>) {
          for (int l : d.label) os << l << ",";
          os << "|";
          for (int c : d.cardinality) os << c << ",";
        } else if constexpr (std::is_same_v<T, Ppc>) {
          for (NodeId v : d.sources) os << v << ",";
          os << "|";
          for (NodeId v : d.targets) os << v << ",";
        } else if constexpr (std::is_same_v<T, Fpc>) {
          for (NodeId v : d.clients) os << v << ",";
          os << "|" << d.virtual_node;
        }
      },
      spec.data);
  // FNV-1a, 64-bit
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << h;
  return hex.str();
}

}  // namespace cfp
