#include "distributed.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfp::congest {

namespace {

uint64_t phase_seed(uint64_t seed, int phase) {
  uint64_t x = seed + 0x9e3779b97f4a7c15ull * (static_cast<uint64_t>(phase) + 2);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::map<std::string, long long> tag_delta(const std::map<std::string, long long>& before,
                                           const std::map<std::string, long long>& after) {
  std::map<std::string, long long> d;
  for (const auto& [tag, r] : after) {
    auto it = before.find(tag);
    long long prev = (it == before.end()) ? 0 : it->second;
    if (r != prev) d[tag] = r - prev;
  }
  return d;
}

}  // namespace

RunReport run_distributed_cfp(const WeightedGraph& g, const ProblemSpec& spec,
                              const Rational& eps_prime, const Rational& eps_dprime,
                              uint64_t seed, int c_b, int kappa,
                              std::vector<std::string>* trace) {
  g.validate();
  spec.validate(g);
  if (eps_prime <= 0 || eps_prime > Rational(1, 4) || eps_dprime <= 0 || eps_dprime > Rational(1, 4))
    throw std::invalid_argument("epsilon parameters must be in (0, 1/4]");
  if (spec.terminals(g.n).size() == 1)
    throw std::invalid_argument("a single terminal is impossible for a proper forest function");

  SimNetwork net(g, c_b);
  net.trace = trace;

  NodeId bfs_root = -1;
  for (NodeId v = 0; v < g.n && bfs_root < 0; ++v)
    if (net.physical(v)) bfs_root = v;
  if (bfs_root < 0) throw std::invalid_argument("no physical nodes");
  auto bfs = build_bfs_tree(net, bfs_root);

  EngineState st;
  st.live.assign(g.edges.size(), true);
  st.reduced_cost.reserve(g.edges.size());
  for (const auto& e : g.edges) st.reduced_cost.push_back(Rational(e.cost));
  st.radius = shell::initial_radius(eps_dprime);

  RunReport report;
  report.algorithm = "congest";
  report.terminal_count = static_cast<int>(spec.terminals(g.n).size());
  report.certified_ratio = shell::certified_ratio(report.terminal_count, eps_prime, eps_dprime);
  report.bfs_depth = bfs.height;

  long long pa_max = 0;
  auto note_pa = [&](const PartForest& pf) { pa_max = std::max<long long>(pa_max, 2LL * pf.max_depth); };

  auto cv = build_component_view(net, {}, bfs);
  st.components = cv.comps;
  note_pa(cv.pf);
  auto ffe = ffe_distributed(net, spec, cv, bfs, phase_seed(seed, -1), kappa);
  st.active_sources = shell::active_terminals(spec, st.components, ffe.activity, g.n);
  // min-id terminal selection per active component: one more aggregation
  net.tick("CC", 2LL * cv.pf.max_depth + 2);

  const int max_phases = shell::phase_bound(g, eps_prime, eps_dprime);
  const auto m = static_cast<EdgeId>(g.edges.size());

  while (!st.active_sources.empty()) {
    if (st.phase > max_phases)
      throw std::logic_error("phase bound exceeded (internal invariant violation)");
    auto tags_before = net.rounds_by_tag;

    PhaseTrace ptrace;
    ptrace.phase = st.phase;
    ptrace.radius = st.radius;
    ptrace.active_before = static_cast<int>(st.active_sources.size());

    auto dsssp = distributed_sssp(net, st.reduced_cost, st.live, st.active_sources, st.radius,
                                  bfs.height);
    const SsspForest& sssp = dsssp.forest;
    for (NodeId v = 0; v < g.n; ++v)
      if (sssp.kept[static_cast<size_t>(v)]) ptrace.ball_nodes.push_back(v);
    ptrace.sssp_edges = sssp.forest_edges;

    // both steps are edge-local: endpoints know their (r - d) slack and the
    // roots settled during the SSSP dissemination
    shell::edge_cost_reduction(st.reduced_cost, st.live, g, sssp, st.radius);
    net.tick("ECR", 1);
    auto merge_cands = shell::candidate_merges(g, st.reduced_cost, st.live, sssp);
    net.tick("CMI", 1);

    // merge selection = spanning forest over F' + candidates, F' preferred
    std::vector<char> eligible(g.edges.size(), 0);
    std::vector<BigInt> key(g.edges.size(), BigInt(0));
    for (EdgeId id : sssp.forest_edges) {
      eligible[static_cast<size_t>(id)] = 1;
      key[static_cast<size_t>(id)] = BigInt(id);
    }
    for (EdgeId id : merge_cands) {
      eligible[static_cast<size_t>(id)] = 1;
      key[static_cast<size_t>(id)] = BigInt(m) + id;
    }
    auto msf = msf_partwise(net, eligible, key, bfs);
    std::vector<EdgeId> selected;
    for (EdgeId id : msf.edges)
      if (key[static_cast<size_t>(id)] >= m) selected.push_back(id);

    std::vector<bool> marked(static_cast<size_t>(g.n), false);
    for (EdgeId id : selected) {
      marked[static_cast<size_t>(g.edges[static_cast<size_t>(id)].u)] = true;
      marked[static_cast<size_t>(g.edges[static_cast<size_t>(id)].v)] = true;
    }
    auto rps = rps_select(net, sssp, marked);

    std::vector<EdgeId> additions(selected);
    additions.insert(additions.end(), rps.edges.begin(), rps.edges.end());
    std::sort(additions.begin(), additions.end());
    additions.erase(std::unique(additions.begin(), additions.end()), additions.end());
    st.forest = shell::extend_forest(g, st.forest, additions);
    net.tick("CC", 2LL * (bfs.height + 1));  // forest-extension bookkeeping

    ptrace.merge_candidates = merge_cands;
    ptrace.merge_selected = selected;

    std::vector<bool> keep(g.edges.size(), false);
    for (EdgeId id : st.forest) keep[static_cast<size_t>(id)] = true;
    for (EdgeId id : sssp.forest_edges) keep[static_cast<size_t>(id)] = true;
    for (EdgeId id : selected) keep[static_cast<size_t>(id)] = true;
    for (const auto& e : g.edges) {
      size_t i = static_cast<size_t>(e.id);
      if (st.live[i] && st.reduced_cost[i] == 0 && !keep[i]) {
        st.live[i] = false;
        ptrace.pruned_edges.push_back(e.id);
      }
    }

    cv = build_component_view(net, st.forest, bfs);
    st.components = cv.comps;
    note_pa(cv.pf);
    ffe = ffe_distributed(net, spec, cv, bfs, phase_seed(seed, st.phase), kappa);
    st.active_sources = shell::active_terminals(spec, st.components, ffe.activity, g.n);
    net.tick("CC", 2LL * cv.pf.max_depth + 2);

    Rational lb_inc = st.radius * static_cast<int>(st.active_sources.size()) / (1 + eps_prime);
    st.lower_bound += lb_inc;
    ptrace.lb_increment = lb_inc;
    ptrace.active_after = static_cast<int>(st.active_sources.size());

    st.radius *= (1 + eps_dprime);
    st.phase += 1;
    report.traces.push_back(std::move(ptrace));
    report.phase_rounds.push_back(tag_delta(tags_before, net.rounds_by_tag));
  }

  report.forest = st.forest;
  report.cost = forest_cost(g, st.forest);
  report.lower_bound = st.lower_bound;
  report.phases = st.phase;
  report.total_rounds = net.round_count;
  report.total_messages = net.message_count;
  report.pa_rounds_max = pa_max;
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

}  // namespace cfp::congest
