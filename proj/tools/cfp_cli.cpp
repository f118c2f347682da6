// Command-line front end: instance generation, experiment runs, verification,
// and a small benchmark mode. Talks to the core exclusively through the C API.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfp/cfp.h"

namespace {

struct StringDeleter {
  void operator()(char* s) const { cfp_string_free(s); }
};
using CStr = std::unique_ptr<char, StringDeleter>;

struct InstanceDeleter {
  void operator()(cfp_instance* p) const { cfp_instance_free(p); }
};
using Instance = std::unique_ptr<cfp_instance, InstanceDeleter>;

struct ResultDeleter {
  void operator()(cfp_result* p) const { cfp_result_free(p); }
};
using Result = std::unique_ptr<cfp_result, ResultDeleter>;

struct CertDeleter {
  void operator()(cfp_certificate* p) const { cfp_certificate_free(p); }
};
using Cert = std::unique_ptr<cfp_certificate, CertDeleter>;

std::string str(const CStr& s) { return s ? std::string(s.get()) : std::string(); }

[[noreturn]] void die(const std::string& context) {
  std::cerr << "error: " << context << ": " << cfp_last_error() << "\n";
  std::exit(2);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(2);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  Instance inst(cfp_instance_parse(buf.str().c_str()));
  if (!inst) die(path);
  return inst;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    std::exit(2);
  }
  out << text;
}

struct RunOptions {
  std::string mode = "central";
  std::string eps_prime = "1/4";
  std::string eps_dprime = "1/4";
  unsigned long long seed = 1;
  int max_oracle_edges = 20;
};

// Runs one instance, prints a report row, returns false on a certification
// failure (oracle cross-check included whenever the instance fits).
bool run_one(const std::string& name, const cfp_instance* inst, const RunOptions& opt,
             bool print_cert) {
  if (opt.mode == "oracle") {
    CStr optimum(cfp_brute_force_opt(inst, opt.max_oracle_edges));
    if (!optimum) die(name + " (oracle)");
    std::cout << name << "  OPT=" << str(optimum) << "\n";
    return true;
  }
  Result res(cfp_run(inst, opt.mode.c_str(), opt.eps_prime.c_str(), opt.eps_dprime.c_str(),
                     opt.seed));
  if (!res) die(name + " (" + opt.mode + ")");

  CStr cost(cfp_result_cost(res.get()));
  CStr lb(cfp_result_lower_bound(res.get()));
  CStr ratio(cfp_result_ratio(res.get()));
  std::ostringstream row;
  row << name << "  mode=" << opt.mode << "  cost=" << str(cost) << "  lb=" << str(lb)
      << "  ratio=" << str(ratio) << "  phases=" << cfp_result_phases(res.get())
      << "  terminals=" << cfp_result_terminals(res.get());
  if (opt.mode == "distributed") {
    row << "  rounds=" << cfp_result_total_rounds(res.get())
        << "  messages=" << cfp_result_total_messages(res.get())
        << "  D=" << cfp_result_bfs_depth(res.get())
        << "  T_PA=" << cfp_result_pa_rounds_max(res.get());
  }

  bool ok = true;
  if (opt.mode == "central" || opt.mode == "distributed") {
    Cert cert(cfp_certify(inst, res.get(), opt.eps_prime.c_str(), opt.eps_dprime.c_str(),
                          /*with_oracle=*/1, opt.max_oracle_edges));
    if (!cert) die(name + " (certify)");
    ok = cfp_certificate_ok(cert.get()) == 1;
    row << "  certificate=" << (ok ? "pass" : "FAIL");
    std::cout << row.str() << "\n";
    if (print_cert || !ok) {
      CStr text(cfp_certificate_text(cert.get()));
      std::cout << str(text);
    }
    if (opt.mode == "distributed") {
      int phases = cfp_result_phase_count(res.get());
      for (int p = 0; p < phases; ++p) {
        std::cout << "  phase " << p;
        for (const char* tag : {"SSSP", "ECR", "CMI", "MSF", "RPS", "FFE", "CC", "PART"}) {
          long long r = cfp_result_phase_rounds(res.get(), p, tag);
          if (r > 0) std::cout << "  " << tag << "=" << r;
        }
        std::cout << "\n";
      }
    }
  } else {
    // gw-ref: feasibility + self-certification only (no epsilon chain)
    int feas = cfp_check_feasible(inst, res.get());
    if (feas < 0) die(name + " (feasibility)");
    ok = feas == 1;
    row << "  feasible=" << (ok ? "yes" : "NO");
    std::cout << row.str() << "\n";
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constrained-forest toolkit"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->require_subcommand(1);

  std::string g_variant = "SF_IC", g_out;
  int g_n = 8, g_m = 12, g_max_cost = 8;
  unsigned long long g_seed = 1;
  auto* gen_random = gen->add_subcommand("random", "connected random instance");
  gen_random->add_option("-n,--nodes", g_n, "node count");
  gen_random->add_option("-m,--edges", g_m, "edge count");
  gen_random->add_option("--max-cost", g_max_cost, "maximum edge cost");
  gen_random->add_option("--variant", g_variant, "SF_IC|SF_CR|SF_SCR|SF_CIC|PPC|FPC");
  gen_random->add_option("--seed", g_seed, "generator seed");
  gen_random->add_option("-o,--output", g_out, "output path (default stdout)");

  int lb_n = 8, lb_rho = 3;
  unsigned long long lb_a = 0, lb_b = 0;
  std::string lb_variant = "SF_SCR", lb_out;
  auto* gen_lb = gen->add_subcommand("lower-bound", "double-star equality-testing family");
  gen_lb->add_option("-n,--pairs", lb_n, "leaf pairs per side");
  gen_lb->add_option("--rho", lb_rho, "heavy-edge gap factor");
  gen_lb->add_option("--a-bits", lb_a, "subset A as a bitmask");
  gen_lb->add_option("--b-bits", lb_b, "subset B as a bitmask");
  gen_lb->add_option("--variant", lb_variant, "SF_SCR|SF_CIC");
  gen_lb->add_option("-o,--output", lb_out, "output path (default stdout)");

  // ---- run / verify ----
  RunOptions opt;
  std::vector<std::string> files;
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("files", files, "instance files")->required()->expected(-1);
    cmd->add_option("--mode", opt.mode, "central|distributed|gw-ref|oracle");
    cmd->add_option("--eps-prime", opt.eps_prime, "epsilon' as p/q");
    cmd->add_option("--eps-dprime", opt.eps_dprime, "epsilon'' as p/q");
    cmd->add_option("--seed", opt.seed, "seed for randomized distributed tests");
    cmd->add_option("--max-oracle-edges", opt.max_oracle_edges,
                    "edge ceiling for the brute-force oracle");
  };
  auto* run = app.add_subcommand("run", "run instances and certify the results");
  add_run_flags(run);
  auto* verify = app.add_subcommand("verify", "run instances and print full certificates");
  add_run_flags(verify);

  // ---- bench ----
  std::vector<std::string> bench_files;
  RunOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "compare central, distributed, and gw-ref");
  bench->add_option("files", bench_files, "instance files")->required()->expected(-1);
  bench->add_option("--eps-prime", bench_opt.eps_prime, "epsilon' as p/q");
  bench->add_option("--eps-dprime", bench_opt.eps_dprime, "epsilon'' as p/q");
  bench->add_option("--seed", bench_opt.seed, "seed for randomized distributed tests");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    Instance inst(nullptr);
    std::string out_path;
    if (gen_random->parsed()) {
      inst.reset(cfp_gen_random(g_variant.c_str(), g_n, g_m, g_max_cost, g_seed));
      out_path = g_out;
    } else {
      inst.reset(cfp_gen_lower_bound(lb_n, lb_rho, lb_a, lb_b, lb_variant.c_str()));
      out_path = lb_out;
    }
    if (!inst) die("gen");
    CStr text(cfp_instance_serialize(inst.get()));
    if (!text) die("serialize");
    write_output(out_path, str(text));
    return 0;
  }

  if (run->parsed() || verify->parsed()) {
    int failures = 0;
    for (const auto& path : files) {
      Instance inst = load_instance(path);
      if (!run_one(path, inst.get(), opt, verify->parsed())) ++failures;
    }
    std::cout << (failures == 0 ? "all certificates passed"
                                : std::to_string(failures) + " certification failure(s)")
              << "\n";
    return failures == 0 ? 0 : 1;
  }

  if (bench->parsed()) {
    for (const auto& path : bench_files) {
      Instance inst = load_instance(path);
      for (const char* mode : {"central", "distributed", "gw-ref"}) {
        auto t0 = std::chrono::steady_clock::now();
        Result res(cfp_run(inst.get(), mode, bench_opt.eps_prime.c_str(),
                           bench_opt.eps_dprime.c_str(), bench_opt.seed));
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        if (!res) die(path + std::string(" (") + mode + ")");
        CStr cost(cfp_result_cost(res.get()));
        std::cout << path << "  mode=" << std::left << std::setw(11) << mode
                  << " cost=" << str(cost) << "  phases=" << cfp_result_phases(res.get());
        if (std::string(mode) == "distributed")
          std::cout << "  rounds=" << cfp_result_total_rounds(res.get())
                    << "  messages=" << cfp_result_total_messages(res.get());
        std::cout << "  time_ms=" << ms << "\n";
      }
    }
    return 0;
  }
  return 0;
}
