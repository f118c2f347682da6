#include "engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfp {

BigInt forest_cost(const WeightedGraph& g, const std::vector<EdgeId>& forest) {
  BigInt total = 0;
  for (EdgeId id : forest) total += g.edges[static_cast<size_t>(id)].cost;
  return total;
}

namespace shell {

void edge_cost_reduction(std::vector<Rational>& reduced_cost, const std::vector<bool>& live,
                         const WeightedGraph& g, const SsspForest& sssp, const Rational& radius) {
  for (const auto& e : g.edges) {
    if (!live[static_cast<size_t>(e.id)]) continue;
    Rational covered = 0;
    for (NodeId v : {e.u, e.v}) {
      if (sssp.kept[static_cast<size_t>(v)] && sssp.dist[static_cast<size_t>(v)] < radius)
        covered += radius - sssp.dist[static_cast<size_t>(v)];
    }
    auto& c = reduced_cost[static_cast<size_t>(e.id)];
    c = (covered >= c) ? Rational(0) : c - covered;
  }
}

std::vector<EdgeId> candidate_merges(const WeightedGraph& g, const std::vector<Rational>& reduced_cost,
                                     const std::vector<bool>& live, const SsspForest& sssp) {
  std::vector<EdgeId> m;
  for (const auto& e : g.edges) {
    if (!live[static_cast<size_t>(e.id)] || reduced_cost[static_cast<size_t>(e.id)] != 0) continue;
    if (!sssp.kept[static_cast<size_t>(e.u)] || !sssp.kept[static_cast<size_t>(e.v)]) continue;
    if (sssp.root[static_cast<size_t>(e.u)] != sssp.root[static_cast<size_t>(e.v)]) m.push_back(e.id);
  }
  return m;
}

std::vector<EdgeId> select_merge_forest(const WeightedGraph& g, const SsspForest& sssp,
                                        const std::vector<EdgeId>& merge_candidates) {
  DisjointSet dsu(g.n);
  for (EdgeId id : sssp.forest_edges)
    dsu.unite(g.edges[static_cast<size_t>(id)].u, g.edges[static_cast<size_t>(id)].v);
  std::vector<EdgeId> selected;
  for (EdgeId id : merge_candidates)
    if (dsu.unite(g.edges[static_cast<size_t>(id)].u, g.edges[static_cast<size_t>(id)].v))
      selected.push_back(id);
  return selected;
}

std::vector<EdgeId> root_path_edges(const WeightedGraph& g, const SsspForest& sssp,
                                    const std::vector<EdgeId>& selected) {
  std::set<EdgeId> path_edges;
  for (EdgeId id : selected) {
    const auto& e = g.edges[static_cast<size_t>(id)];
    for (NodeId v : {e.u, e.v}) {
      NodeId w = v;
      if (!sssp.kept[static_cast<size_t>(w)])
        throw std::logic_error("root_path_edges: selected endpoint outside the truncated forest");
      while (sssp.parent_edge[static_cast<size_t>(w)] >= 0) {
        path_edges.insert(sssp.parent_edge[static_cast<size_t>(w)]);
        w = sssp.parent_node[static_cast<size_t>(w)];
      }
    }
  }
  return {path_edges.begin(), path_edges.end()};
}

std::vector<EdgeId> extend_forest(const WeightedGraph& g, const std::vector<EdgeId>& forest,
                                  const std::vector<EdgeId>& additions) {
  DisjointSet dsu(g.n);
  std::vector<EdgeId> out(forest);
  std::set<EdgeId> have(forest.begin(), forest.end());
  for (EdgeId id : forest) dsu.unite(g.edges[static_cast<size_t>(id)].u, g.edges[static_cast<size_t>(id)].v);
  for (EdgeId id : additions) {
    if (have.count(id)) continue;
    if (dsu.unite(g.edges[static_cast<size_t>(id)].u, g.edges[static_cast<size_t>(id)].v)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> active_terminals(const ProblemSpec& spec, const Partition& components,
                                     const ActivityMap& activity, int n) {
  auto terms = spec.terminals(n);
  std::map<NodeId, NodeId> min_terminal;  // component id -> min terminal
  for (NodeId t : terms) {
    NodeId c = components.of(t);
    if (!min_terminal.count(c)) min_terminal[c] = t;  // terms sorted ascending
  }
  std::vector<NodeId> out;
  for (const auto& [c, act] : activity) {
    if (!act) continue;
    auto it = min_terminal.find(c);
    if (it == min_terminal.end())
      throw std::logic_error("active component without terminal (improper forest function)");
    out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational initial_radius(const Rational& eps_dprime) { return eps_dprime / 4; }

int phase_bound(const WeightedGraph& g, const Rational& eps_prime, const Rational& eps_dprime) {
  Rational x = Rational(4) * (1 + eps_prime) * g.n * Rational(g.max_cost()) / eps_dprime;
  return ceil_log(1 + eps_dprime, x) + 1;
}

Rational certified_ratio(int terminal_count, const Rational& eps_prime, const Rational& eps_dprime) {
  Rational base = (terminal_count >= 2) ? Rational(2) - Rational(2, terminal_count) : Rational(2);
  return base * (1 + eps_prime) * (1 + eps_dprime) * (1 + eps_dprime);
}

}  // namespace shell

namespace {

void check_inputs(const WeightedGraph& g, const ProblemSpec& spec, const Rational& eps_prime,
                  const Rational& eps_dprime) {
  g.validate();
  spec.validate(g);
  if (eps_prime <= 0 || eps_prime > Rational(1, 4) || eps_dprime <= 0 || eps_dprime > Rational(1, 4))
    throw std::invalid_argument("epsilon parameters must be in (0, 1/4]");
  if (spec.terminals(g.n).size() == 1)
    throw std::invalid_argument("a single terminal is impossible for a proper forest function");
}

}  // namespace

RunReport run_shell_decomposition(const WeightedGraph& g, const ProblemSpec& spec,
                                  const Rational& eps_prime, const Rational& eps_dprime,
                                  const Rational& alpha) {
  check_inputs(g, spec, eps_prime, eps_dprime);

  EngineState st;
  st.live.assign(g.edges.size(), true);
  st.reduced_cost.reserve(g.edges.size());
  for (const auto& e : g.edges) st.reduced_cost.push_back(Rational(e.cost));
  st.components = connected_components(g.n, g.edges, {});
  st.radius = shell::initial_radius(eps_dprime);

  auto activity = evaluate_components(spec, st.components);
  st.active_sources = shell::active_terminals(spec, st.components, activity, g.n);

  const int max_phases = shell::phase_bound(g, eps_prime, eps_dprime);

  RunReport report;
  report.algorithm = "shell";
  report.terminal_count = static_cast<int>(spec.terminals(g.n).size());
  report.certified_ratio = shell::certified_ratio(report.terminal_count, eps_prime, eps_dprime);

  while (!st.active_sources.empty()) {
    if (st.phase > max_phases)
      throw std::logic_error("phase bound exceeded (internal invariant violation)");

    PhaseTrace trace;
    trace.phase = st.phase;
    trace.radius = st.radius;
    trace.active_before = static_cast<int>(st.active_sources.size());

    auto sssp = sssp_forest(g, st.reduced_cost, st.active_sources, st.radius, alpha, st.live);
    for (NodeId v = 0; v < g.n; ++v)
      if (sssp.kept[static_cast<size_t>(v)]) trace.ball_nodes.push_back(v);
    trace.sssp_edges = sssp.forest_edges;

    shell::edge_cost_reduction(st.reduced_cost, st.live, g, sssp, st.radius);
    auto merge_cands = shell::candidate_merges(g, st.reduced_cost, st.live, sssp);
    auto selected = shell::select_merge_forest(g, sssp, merge_cands);
    auto paths = shell::root_path_edges(g, sssp, selected);

    std::vector<EdgeId> additions(selected);
    additions.insert(additions.end(), paths.begin(), paths.end());
    std::sort(additions.begin(), additions.end());
    additions.erase(std::unique(additions.begin(), additions.end()), additions.end());
    st.forest = shell::extend_forest(g, st.forest, additions);

    trace.merge_candidates = merge_cands;
    trace.merge_selected = selected;

    // remove fully paid edges; retain the forest, the SSSP forest, and A
    std::vector<bool> keep(g.edges.size(), false);
    for (EdgeId id : st.forest) keep[static_cast<size_t>(id)] = true;
    for (EdgeId id : sssp.forest_edges) keep[static_cast<size_t>(id)] = true;
    for (EdgeId id : selected) keep[static_cast<size_t>(id)] = true;
    for (const auto& e : g.edges) {
      size_t i = static_cast<size_t>(e.id);
      if (st.live[i] && st.reduced_cost[i] == 0 && !keep[i]) {
        st.live[i] = false;
        trace.pruned_edges.push_back(e.id);
      }
    }

    st.components = connected_components(g.n, g.edges, st.forest);
    activity = evaluate_components(spec, st.components);
    st.active_sources = shell::active_terminals(spec, st.components, activity, g.n);

    Rational lb_inc = st.radius * static_cast<int>(st.active_sources.size()) / (1 + eps_prime);
    st.lower_bound += lb_inc;
    trace.lb_increment = lb_inc;
    trace.active_after = static_cast<int>(st.active_sources.size());

    st.radius *= (1 + eps_dprime);
    st.phase += 1;
    report.traces.push_back(std::move(trace));
  }

  report.forest = st.forest;
  report.cost = forest_cost(g, st.forest);
  report.lower_bound = st.lower_bound;
  report.phases = st.phase;
  for (NodeId v = 0; v < g.n; ++v) {
    if (!g.is_virtual(v)) continue;
    for (EdgeId id : st.forest) {
      const auto& e = g.edges[static_cast<size_t>(id)];
      if (e.u == v) report.opened_facilities.push_back(e.v);
      if (e.v == v) report.opened_facilities.push_back(e.u);
    }
  }
  std::sort(report.opened_facilities.begin(), report.opened_facilities.end());
  return report;
}

RunReport run_gw_reference(const WeightedGraph& g, const ProblemSpec& spec) {
  g.validate();
  spec.validate(g);
  if (spec.terminals(g.n).size() == 1)
    throw std::invalid_argument("a single terminal is impossible for a proper forest function");

  std::vector<Rational> node_radius(static_cast<size_t>(g.n), Rational(0));
  std::vector<EdgeId> grown;  // F'
  Rational lb = 0;

  auto components = connected_components(g.n, g.edges, grown);
  auto activity = evaluate_components(spec, components);
  auto any_active = [&]() {
    for (const auto& [c, a] : activity)
      if (a) return true;
    return false;
  };

  int guard = 0;
  while (any_active()) {
    if (++guard > g.n + 1) throw std::logic_error("moat growing failed to converge");
    bool found = false;
    Rational best_eta = 0;
    EdgeId best_edge = -1;
    for (const auto& e : g.edges) {
      NodeId ci = components.of(e.u);
      NodeId cj = components.of(e.v);
      if (ci == cj) continue;
      int fi = activity.at(ci) ? 1 : 0;
      int fj = activity.at(cj) ? 1 : 0;
      if (fi + fj == 0) continue;
      Rational cprime = Rational(e.cost) - node_radius[static_cast<size_t>(e.u)] -
                        node_radius[static_cast<size_t>(e.v)];
      Rational eta = cprime / (fi + fj);
      if (!found || eta < best_eta) {
        found = true;
        best_eta = eta;
        best_edge = e.id;
      }
    }
    if (!found) throw std::invalid_argument("no candidate edge: active components cannot be connected");

    for (NodeId v = 0; v < g.n; ++v)
      if (activity.at(components.of(v))) node_radius[static_cast<size_t>(v)] += best_eta;
    int active_count = 0;
    for (const auto& [c, a] : activity) active_count += a ? 1 : 0;
    lb += best_eta * active_count;

    grown.push_back(best_edge);
    components = connected_components(g.n, g.edges, grown);
    activity = evaluate_components(spec, components);
  }
  std::sort(grown.begin(), grown.end());

  // final filter: keep e iff removing it leaves some component with f = 1
  std::vector<EdgeId> filtered;
  for (EdgeId id : grown) {
    std::vector<EdgeId> without;
    for (EdgeId other : grown)
      if (other != id) without.push_back(other);
    auto parts = connected_components(g.n, g.edges, without);
    auto act = evaluate_components(spec, parts);
    bool needed = false;
    for (const auto& [c, a] : act)
      if (a) {
        needed = true;
        break;
      }
    if (needed) filtered.push_back(id);
  }

  RunReport report;
  report.algorithm = "gw";
  report.forest = filtered;
  report.cost = forest_cost(g, filtered);
  report.lower_bound = lb;
  report.terminal_count = static_cast<int>(spec.terminals(g.n).size());
  report.certified_ratio = (report.terminal_count >= 2)
                               ? Rational(2) - Rational(2, report.terminal_count)
                               : Rational(2);
  report.phases = guard;
  return report;
}

}  // namespace cfp
