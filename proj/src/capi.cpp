#include "cfp/cfp.h"

#include <cstring>
#include <exception>
#include <string>

#include "congest/distributed.hpp"
#include "engine.hpp"
#include "instance.hpp"
#include "oracle.hpp"

using namespace cfp;

struct cfp_instance {
  InstanceFile file;
};

struct cfp_result {
  RunReport report;
};

struct cfp_certificate {
  Certificate cert;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::exception& e) { g_last_error = e.what(); }

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
auto guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::exception& e) {
    set_error(e);
    return decltype(f()){};
  }
}

Rational parse_eps(const char* s) {
  auto r = parse_rational(s);
  if (!r) throw std::invalid_argument(std::string("malformed rational: ") + s);
  return *r;
}

// brute_force_opt with the caller-configurable edge ceiling on top of the
// built-in gates
BruteForceResult oracle_opt(const InstanceFile& inst, int max_oracle_edges) {
  if (max_oracle_edges >= 0 &&
      static_cast<int>(inst.graph.edges.size()) > max_oracle_edges)
    throw std::invalid_argument("instance exceeds --max-oracle-edges");
  return brute_force_opt(inst.graph, inst.problem);
}

}  // namespace

extern "C" {

const char* cfp_last_error(void) { return g_last_error.c_str(); }

void cfp_string_free(char* s) { delete[] s; }

cfp_instance* cfp_instance_parse(const char* text) {
  return guard([&]() -> cfp_instance* {
    if (!text) throw std::invalid_argument("null text");
    return new cfp_instance{parse_instance(text)};
  });
}

void cfp_instance_free(cfp_instance* inst) { delete inst; }

char* cfp_instance_serialize(const cfp_instance* inst) {
  return guard([&]() -> char* {
    if (!inst) throw std::invalid_argument("null instance");
    return dup_string(serialize_instance(inst->file));
  });
}

cfp_instance* cfp_gen_random(const char* variant, int n, int m, int max_cost,
                             unsigned long long seed) {
  return guard([&]() -> cfp_instance* {
    if (!variant) throw std::invalid_argument("null variant");
    return new cfp_instance{gen_random("random", variant, n, m, max_cost, seed)};
  });
}

cfp_instance* cfp_gen_lower_bound(int n, int rho, unsigned long long a_bits,
                                  unsigned long long b_bits, const char* variant) {
  return guard([&]() -> cfp_instance* {
    if (!variant) throw std::invalid_argument("null variant");
    return new cfp_instance{gen_lower_bound(n, rho, a_bits, b_bits, variant)};
  });
}

int cfp_instance_nodes(const cfp_instance* inst) { return inst ? inst->file.graph.n : -1; }

int cfp_instance_edge_count(const cfp_instance* inst) {
  return inst ? static_cast<int>(inst->file.graph.edges.size()) : -1;
}

const char* cfp_instance_variant(const cfp_instance* inst) {
  return inst ? inst->file.problem.variant_name() : nullptr;
}

char* cfp_instance_digest(const cfp_instance* inst) {
  return guard([&]() -> char* {
    if (!inst) throw std::invalid_argument("null instance");
    return dup_string(instance_digest(inst->file.graph, inst->file.problem));
  });
}

char* cfp_instance_meta(const cfp_instance* inst, const char* key) {
  return guard([&]() -> char* {
    if (!inst || !key) throw std::invalid_argument("null argument");
    auto it = inst->file.meta.find(key);
    if (it == inst->file.meta.end()) throw std::invalid_argument("meta key not present");
    return dup_string(it->second);
  });
}

cfp_result* cfp_run(const cfp_instance* inst, const char* mode, const char* eps_prime,
                    const char* eps_dprime, unsigned long long seed) {
  return guard([&]() -> cfp_result* {
    if (!inst || !mode || !eps_prime || !eps_dprime) throw std::invalid_argument("null argument");
    Rational ep = parse_eps(eps_prime);
    Rational epp = parse_eps(eps_dprime);
    std::string m(mode);
    RunReport rep;
    if (m == "central")
      rep = run_shell_decomposition(inst->file.graph, inst->file.problem, ep, epp);
    else if (m == "distributed")
      rep = congest::run_distributed_cfp(inst->file.graph, inst->file.problem, ep, epp, seed);
    else if (m == "gw-ref")
      rep = run_gw_reference(inst->file.graph, inst->file.problem);
    else
      throw std::invalid_argument("unknown mode: " + m);
    return new cfp_result{std::move(rep)};
  });
}

void cfp_result_free(cfp_result* res) { delete res; }

char* cfp_result_cost(const cfp_result* res) {
  return guard([&]() -> char* {
    if (!res) throw std::invalid_argument("null result");
    return dup_string(res->report.cost.str());
  });
}

char* cfp_result_lower_bound(const cfp_result* res) {
  return guard([&]() -> char* {
    if (!res) throw std::invalid_argument("null result");
    return dup_string(to_string(res->report.lower_bound));
  });
}

char* cfp_result_ratio(const cfp_result* res) {
  return guard([&]() -> char* {
    if (!res) throw std::invalid_argument("null result");
    return dup_string(to_string(res->report.certified_ratio));
  });
}

int cfp_result_phases(const cfp_result* res) { return res ? res->report.phases : -1; }

int cfp_result_terminals(const cfp_result* res) { return res ? res->report.terminal_count : -1; }

int cfp_result_forest_size(const cfp_result* res) {
  return res ? static_cast<int>(res->report.forest.size()) : -1;
}

int cfp_result_forest_edge(const cfp_result* res, int i) {
  if (!res || i < 0 || i >= static_cast<int>(res->report.forest.size())) return -1;
  return res->report.forest[static_cast<size_t>(i)];
}

int cfp_result_opened_count(const cfp_result* res) {
  return res ? static_cast<int>(res->report.opened_facilities.size()) : -1;
}

int cfp_result_opened_facility(const cfp_result* res, int i) {
  if (!res || i < 0 || i >= static_cast<int>(res->report.opened_facilities.size())) return -1;
  return res->report.opened_facilities[static_cast<size_t>(i)];
}

long long cfp_result_total_rounds(const cfp_result* res) {
  return res ? res->report.total_rounds : -1;
}

long long cfp_result_total_messages(const cfp_result* res) {
  return res ? res->report.total_messages : -1;
}

int cfp_result_bfs_depth(const cfp_result* res) { return res ? res->report.bfs_depth : -1; }

long long cfp_result_pa_rounds_max(const cfp_result* res) {
  return res ? res->report.pa_rounds_max : -1;
}

int cfp_result_phase_count(const cfp_result* res) {
  return res ? static_cast<int>(res->report.phase_rounds.size()) : -1;
}

long long cfp_result_phase_rounds(const cfp_result* res, int phase, const char* tag) {
  if (!res || !tag || phase < 0 || phase >= static_cast<int>(res->report.phase_rounds.size()))
    return -1;
  const auto& m = res->report.phase_rounds[static_cast<size_t>(phase)];
  auto it = m.find(tag);
  return it == m.end() ? 0 : it->second;
}

char* cfp_brute_force_opt(const cfp_instance* inst, int max_oracle_edges) {
  return guard([&]() -> char* {
    if (!inst) throw std::invalid_argument("null instance");
    return dup_string(oracle_opt(inst->file, max_oracle_edges).cost.str());
  });
}

int cfp_check_feasible(const cfp_instance* inst, const cfp_result* res) {
  try {
    if (!inst || !res) throw std::invalid_argument("null argument");
    auto r = check_primal_feasible(inst->file.graph, inst->file.problem, res->report.forest);
    return r.pass ? 1 : 0;
  } catch (const std::exception& e) {
    set_error(e);
    return -1;
  }
}

cfp_certificate* cfp_certify(const cfp_instance* inst, const cfp_result* res,
                             const char* eps_prime, const char* eps_dprime, int with_oracle,
                             int max_oracle_edges) {
  return guard([&]() -> cfp_certificate* {
    if (!inst || !res || !eps_prime || !eps_dprime) throw std::invalid_argument("null argument");
    Rational ep = parse_eps(eps_prime);
    Rational epp = parse_eps(eps_dprime);
    std::optional<BruteForceResult> opt;
    if (with_oracle) {
      try {
        opt = oracle_opt(inst->file, max_oracle_edges);
      } catch (const std::invalid_argument&) {
        opt = std::nullopt;  // too large for the oracle: certify LB chain only
      }
    }
    auto cert = certify_run(inst->file.graph, inst->file.problem, res->report.forest,
                            res->report.lower_bound, ep, epp, opt);
    return new cfp_certificate{std::move(cert)};
  });
}

int cfp_certificate_ok(const cfp_certificate* cert) {
  return cert ? (cert->cert.ok() ? 1 : 0) : -1;
}

char* cfp_certificate_text(const cfp_certificate* cert) {
  return guard([&]() -> char* {
    if (!cert) throw std::invalid_argument("null certificate");
    return dup_string(cert->cert.to_text());
  });
}

void cfp_certificate_free(cfp_certificate* cert) { delete cert; }

}  // extern "C"
