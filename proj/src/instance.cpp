#include "instance.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace cfp {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

int parse_int(const std::string& s, int line) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + s + "'");
  }
}

BigInt parse_big(const std::string& s, int line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, "expected a non-negative integer, got '" + s + "'");
  return BigInt(s);
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
  InstanceFile inst;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  bool header_seen = false, nodes_seen = false;
  int n = 0;
  std::string variant;
  bool in_problem = false, problem_done = false;

  // variant scratch, assembled at "end"
  std::vector<int> label, cardinality;
  std::vector<std::set<NodeId>> requests;
  std::set<NodeId> sources, targets, clients;
  NodeId facility = -1;

  auto need_node = [&](int v, int line) {
    if (!nodes_seen) throw ParseError(line, "node reference before 'nodes'");
    if (v < 0 || v >= n) throw ParseError(line, "node id out of range: " + std::to_string(v));
    return v;
  };

  while (std::getline(is, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = (hash == std::string::npos) ? raw : raw.substr(0, hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];

    if (!header_seen) {
      if (kw != "cfp-instance" || toks.size() != 2)
        throw ParseError(lineno, "expected header 'cfp-instance <version>'");
      inst.version = parse_int(toks[1], lineno);
      if (inst.version != 1) throw ParseError(lineno, "unsupported format version");
      header_seen = true;
      continue;
    }

    if (in_problem) {
      if (kw == "end") {
        in_problem = false;
        problem_done = true;
      } else if (kw == "label" && (variant == "SF_IC" || variant == "SF_CIC")) {
        if (toks.size() != 3) throw ParseError(lineno, "label needs: label <node> <class>");
        int v = need_node(parse_int(toks[1], lineno), lineno);
        label[static_cast<size_t>(v)] = parse_int(toks[2], lineno);
      } else if (kw == "cardinality" && variant == "SF_CIC") {
        if (toks.size() != 3) throw ParseError(lineno, "cardinality needs: cardinality <class> <count>");
        int k = parse_int(toks[1], lineno);
        if (k < 0) throw ParseError(lineno, "negative class id");
        if (static_cast<size_t>(k) >= cardinality.size()) cardinality.resize(static_cast<size_t>(k) + 1, 0);
        cardinality[static_cast<size_t>(k)] = parse_int(toks[2], lineno);
      } else if (kw == "request" && (variant == "SF_CR" || variant == "SF_SCR")) {
        if (toks.size() < 3) throw ParseError(lineno, "request needs: request <node> <node>...");
        int v = need_node(parse_int(toks[1], lineno), lineno);
        for (size_t i = 2; i < toks.size(); ++i)
          requests[static_cast<size_t>(v)].insert(need_node(parse_int(toks[i], lineno), lineno));
      } else if (kw == "source" && variant == "PPC") {
        if (toks.size() != 2) throw ParseError(lineno, "source needs one node");
        sources.insert(need_node(parse_int(toks[1], lineno), lineno));
      } else if (kw == "target" && variant == "PPC") {
        if (toks.size() != 2) throw ParseError(lineno, "target needs one node");
        targets.insert(need_node(parse_int(toks[1], lineno), lineno));
      } else if (kw == "client" && variant == "FPC") {
        if (toks.size() != 2) throw ParseError(lineno, "client needs one node");
        clients.insert(need_node(parse_int(toks[1], lineno), lineno));
      } else if (kw == "facility" && variant == "FPC") {
        if (toks.size() != 2) throw ParseError(lineno, "facility needs one node");
        facility = need_node(parse_int(toks[1], lineno), lineno);
      } else {
        throw ParseError(lineno, "unexpected '" + kw + "' in problem section " + variant);
      }
      continue;
    }

    if (kw == "meta") {
      if (toks.size() < 3) throw ParseError(lineno, "meta needs: meta <key> <value>");
      std::string value = toks[2];
      for (size_t i = 3; i < toks.size(); ++i) value += " " + toks[i];
      inst.meta[toks[1]] = value;
    } else if (kw == "nodes") {
      if (toks.size() != 2) throw ParseError(lineno, "nodes needs one count");
      n = parse_int(toks[1], lineno);
      if (n <= 0) throw ParseError(lineno, "node count must be positive");
      nodes_seen = true;
      inst.graph.n = n;
      label.assign(static_cast<size_t>(n), -1);
      requests.assign(static_cast<size_t>(n), {});
    } else if (kw == "edge") {
      if (toks.size() != 4) throw ParseError(lineno, "edge needs: edge <u> <v> <cost>");
      Edge e;
      e.id = static_cast<EdgeId>(inst.graph.edges.size());
      e.u = need_node(parse_int(toks[1], lineno), lineno);
      e.v = need_node(parse_int(toks[2], lineno), lineno);
      e.cost = parse_big(toks[3], lineno);
      inst.graph.edges.push_back(e);
    } else if (kw == "virtual") {
      if (toks.size() != 2) throw ParseError(lineno, "virtual needs one node");
      int v = need_node(parse_int(toks[1], lineno), lineno);
      if (inst.graph.virtual_node.empty())
        inst.graph.virtual_node.assign(static_cast<size_t>(n), false);
      inst.graph.virtual_node[static_cast<size_t>(v)] = true;
    } else if (kw == "problem") {
      if (toks.size() != 2) throw ParseError(lineno, "problem needs a variant tag");
      if (problem_done) throw ParseError(lineno, "duplicate problem section");
      variant = toks[1];
      if (variant != "SF_IC" && variant != "SF_CR" && variant != "SF_SCR" &&
          variant != "SF_CIC" && variant != "PPC" && variant != "FPC")
        throw ParseError(lineno, "unknown variant '" + variant + "'");
      if (!nodes_seen) throw ParseError(lineno, "problem section before 'nodes'");
      in_problem = true;
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!header_seen) throw ParseError(1, "empty document");
  if (in_problem) throw ParseError(lineno, "problem section not closed with 'end'");
  if (!nodes_seen) throw ParseError(lineno, "missing 'nodes'");
  if (!problem_done) throw ParseError(lineno, "missing problem section");

  if (variant == "SF_IC") {
    inst.problem.data = SfIc{label};
  } else if (variant == "SF_CR") {
    inst.problem.data = SfCr{requests};
  } else if (variant == "SF_SCR") {
    inst.problem.data = SfScr{requests};
  } else if (variant == "SF_CIC") {
    inst.problem.data = SfCic{label, cardinality};
  } else if (variant == "PPC") {
    inst.problem.data = Ppc{sources, targets};
  } else {
    if (facility < 0) throw ParseError(lineno, "FPC requires a 'facility' line");
    inst.problem.data = Fpc{clients, facility};
  }

  try {
    inst.graph.validate();
    inst.problem.validate(inst.graph);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, std::string("semantic check failed: ") + e.what());
  }
  return inst;
}

std::string serialize_instance(const InstanceFile& inst) {
  std::ostringstream os;
  os << "cfp-instance " << inst.version << "\n";
  for (const auto& [k, v] : inst.meta) os << "meta " << k << " " << v << "\n";
  os << "nodes " << inst.graph.n << "\n";
  for (const auto& e : inst.graph.edges)
    os << "edge " << e.u << " " << e.v << " " << e.cost.str() << "\n";
  for (NodeId v = 0; v < inst.graph.n; ++v)
    if (inst.graph.is_virtual(v)) os << "virtual " << v << "\n";
  os << "problem " << inst.problem.variant_name() << "\n";
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SfIc>) {
          for (size_t v = 0; v < d.label.size(); ++v)
            if (d.label[v] >= 0) os << "label " << v << " " << d.label[v] << "\n";
        } else if constexpr (std::is_same_v<T, SfCr> || std::is_same_v<T, SfScr>) {
          for (size_t v = 0; v < d.requests.size(); ++v) {
            if (d.requests[v].empty()) continue;
            os << "request " << v;
            for (NodeId u : d.requests[v]) os << " " << u;
            os << "\n";
          }
        } else if constexpr (std::is_same_v<T, SfCic>) {
          for (size_t v = 0; v < d.label.size(); ++v)
            if (d.label[v] >= 0) os << "label " << v << " " << d.label[v] << "\n";
          for (size_t k = 0; k < d.cardinality.size(); ++k)
            os << "cardinality " << k << " " << d.cardinality[k] << "\n";
        } else if constexpr (std::is_same_v<T, Ppc>) {
          for (NodeId v : d.sources) os << "source " << v << "\n";
          for (NodeId v : d.targets) os << "target " << v << "\n";
        } else if constexpr (std::is_same_v<T, Fpc>) {
          for (NodeId v : d.clients) os << "client " << v << "\n";
          os << "facility " << d.virtual_node << "\n";
        }
      },
      inst.problem.data);
  os << "end\n";
  return os.str();
}

namespace {

// modulo draw: biased for huge ranges but platform-independent, unlike
// std::uniform_int_distribution
int draw(std::mt19937_64& rng, int bound) { return static_cast<int>(rng() % static_cast<uint64_t>(bound)); }

std::vector<NodeId> shuffled_nodes(std::mt19937_64& rng, int n) {
  std::vector<NodeId> p(static_cast<size_t>(n));
  for (NodeId v = 0; v < n; ++v) p[static_cast<size_t>(v)] = v;
  for (int i = n - 1; i > 0; --i) std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(draw(rng, i + 1))]);
  return p;
}

WeightedGraph random_graph(std::mt19937_64& rng, int n, int m, int max_cost) {
  if (n < 2) throw std::invalid_argument("gen_random: need n >= 2");
  if (m < n - 1) throw std::invalid_argument("gen_random: need m >= n-1 for a connected graph");
  long long full = static_cast<long long>(n) * (n - 1) / 2;
  if (m > full) throw std::invalid_argument("gen_random: m exceeds the simple-graph limit");
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (NodeId v = 1; v < n; ++v) {
    NodeId u = draw(rng, v);
    pairs.insert({std::min(u, v), std::max(u, v)});
  }
  while (static_cast<int>(pairs.size()) < m) {
    NodeId u = draw(rng, n), v = draw(rng, n);
    if (u == v) continue;
    pairs.insert({std::min(u, v), std::max(u, v)});
  }
  WeightedGraph g;
  g.n = n;
  for (const auto& [u, v] : pairs) {
    Edge e;
    e.id = static_cast<EdgeId>(g.edges.size());
    e.u = u;
    e.v = v;
    e.cost = 1 + draw(rng, max_cost);
    g.edges.push_back(e);
  }
  return g;
}

}  // namespace

InstanceFile gen_random(const std::string& family, const std::string& variant, int n, int m,
                        int max_cost, uint64_t seed) {
  if (family != "random") throw std::invalid_argument("unknown family '" + family + "'");
  if (max_cost < 1) throw std::invalid_argument("gen_random: max_cost must be >= 1");
  std::mt19937_64 rng(seed);

  InstanceFile inst;
  inst.meta["family"] = family;
  inst.meta["variant"] = variant;
  inst.meta["seed"] = std::to_string(seed);

  if (variant == "FPC") {
    WeightedGraph g = random_graph(rng, n, m, max_cost);
    std::vector<BigInt> opening;
    for (NodeId v = 0; v < n; ++v) opening.push_back(BigInt(1 + draw(rng, max_cost)));
    auto perm = shuffled_nodes(rng, n);
    int c = 2 + draw(rng, std::min(n - 1, 4));
    std::set<NodeId> clients(perm.begin(), perm.begin() + c);
    auto [ag, spec] = augment_fpc(g, opening, clients);
    inst.graph = std::move(ag);
    inst.problem = std::move(spec);
    return inst;
  }

  inst.graph = random_graph(rng, n, m, max_cost);

  if (variant == "SF_IC" || variant == "SF_CIC") {
    int k = (n >= 8) ? 2 + draw(rng, 2) : 2;
    if (2 * k > n) k = n / 2;
    auto perm = shuffled_nodes(rng, n);
    std::vector<int> label(static_cast<size_t>(n), -1);
    for (int i = 0; i < 2 * k; ++i) label[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i / 2;
    int spare = n - 2 * k;
    int extra = spare > 0 ? draw(rng, std::min(spare, 3) + 1) : 0;
    for (int i = 0; i < extra; ++i)
      label[static_cast<size_t>(perm[static_cast<size_t>(2 * k + i)])] = draw(rng, k);
    if (variant == "SF_IC") {
      inst.problem.data = SfIc{label};
    } else {
      std::vector<int> card(static_cast<size_t>(k), 0);
      for (int l : label)
        if (l >= 0) card[static_cast<size_t>(l)]++;
      inst.problem.data = SfCic{label, card};
    }
  } else if (variant == "SF_CR" || variant == "SF_SCR") {
    int p = 1 + draw(rng, std::min(3, n / 2));
    auto perm = shuffled_nodes(rng, n);
    std::vector<std::set<NodeId>> req(static_cast<size_t>(n));
    for (int i = 0; i < p; ++i) {
      NodeId u = perm[static_cast<size_t>(2 * i)], v = perm[static_cast<size_t>(2 * i + 1)];
      req[static_cast<size_t>(u)].insert(v);
      if (variant == "SF_SCR") req[static_cast<size_t>(v)].insert(u);
    }
    if (variant == "SF_CR")
      inst.problem.data = SfCr{req};
    else
      inst.problem.data = SfScr{req};
  } else if (variant == "PPC") {
    int q = 1 + draw(rng, std::min(3, n / 2));
    auto perm = shuffled_nodes(rng, n);
    Ppc p;
    for (int i = 0; i < q; ++i) p.sources.insert(perm[static_cast<size_t>(i)]);
    for (int i = q; i < 2 * q; ++i) p.targets.insert(perm[static_cast<size_t>(i)]);
    inst.problem.data = p;
  } else {
    throw std::invalid_argument("unknown variant '" + variant + "'");
  }

  inst.graph.validate();
  inst.problem.validate(inst.graph);
  return inst;
}

InstanceFile gen_lower_bound(int n, int rho, uint64_t a_bits, uint64_t b_bits,
                             const std::string& variant) {
  if (n < 1 || n > 63) throw std::invalid_argument("gen_lower_bound: n must be in [1, 63]");
  if (rho < 1) throw std::invalid_argument("gen_lower_bound: rho must be >= 1");
  if (variant != "SF_SCR" && variant != "SF_CIC")
    throw std::invalid_argument("gen_lower_bound: variant must be SF_SCR or SF_CIC");

  // layout: a+ = 0, a- = 1, a_i = 1+i; b+ = n+2, b- = n+3, b_i = n+3+i
  const NodeId ap = 0, am = 1, bp = n + 2, bm = n + 3;
  auto ai = [&](int i) { return 1 + i; };
  auto bi = [&](int i) { return n + 3 + i; };

  WeightedGraph g;
  g.n = 2 * n + 4;
  BigInt heavy = BigInt(rho) * (2 * n + 2) + 1;
  std::vector<std::tuple<NodeId, NodeId, BigInt>> raw;
  for (int i = 1; i <= n; ++i) raw.emplace_back(((a_bits >> (i - 1)) & 1) ? ap : am, ai(i), BigInt(1));
  for (int i = 1; i <= n; ++i) raw.emplace_back(((b_bits >> (i - 1)) & 1) ? bp : bm, bi(i), BigInt(1));
  raw.emplace_back(ap, bp, BigInt(1));
  raw.emplace_back(am, bm, BigInt(1));
  raw.emplace_back(ap, bm, heavy);
  raw.emplace_back(am, bp, heavy);
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  for (const auto& [u, v, c] : raw) {
    Edge e;
    e.id = static_cast<EdgeId>(g.edges.size());
    e.u = std::min(u, v);
    e.v = std::max(u, v);
    e.cost = c;
    g.edges.push_back(e);
  }

  InstanceFile inst;
  inst.graph = std::move(g);
  inst.meta["family"] = "double-star";
  inst.meta["rho"] = std::to_string(rho);
  inst.meta["A"] = std::to_string(a_bits);
  inst.meta["B"] = std::to_string(b_bits);
  if (variant == "SF_SCR") {
    std::vector<std::set<NodeId>> req(static_cast<size_t>(inst.graph.n));
    for (int i = 1; i <= n; ++i) {
      req[static_cast<size_t>(ai(i))].insert(bi(i));
      req[static_cast<size_t>(bi(i))].insert(ai(i));
    }
    inst.problem.data = SfScr{req};
  } else {
    std::vector<int> label(static_cast<size_t>(inst.graph.n), -1);
    for (int i = 1; i <= n; ++i) {
      label[static_cast<size_t>(ai(i))] = i - 1;
      label[static_cast<size_t>(bi(i))] = i - 1;
    }
    inst.problem.data = SfCic{label, std::vector<int>(static_cast<size_t>(n), 2)};
  }
  inst.graph.validate();
  inst.problem.validate(inst.graph);
  return inst;
}

}  // namespace cfp
