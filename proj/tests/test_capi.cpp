#include <memory>
#include <string>

#include "cfp/cfp.h"
#include "doctest.h"

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

}  // namespace

TEST_CASE("generate, serialize, parse, digest") {
  Instance inst(cfp_gen_random("SF_SCR", 10, 14, 8, 5));
  REQUIRE(inst);
  CHECK(cfp_instance_nodes(inst.get()) == 10);
  CHECK(cfp_instance_edge_count(inst.get()) == 14);
  CHECK(std::string(cfp_instance_variant(inst.get())) == "SF_SCR");
  CStr meta(cfp_instance_meta(inst.get(), "seed"));
  CHECK(str(meta) == "5");
  CHECK(cfp_instance_meta(inst.get(), "no-such-key") == nullptr);

  CStr text(cfp_instance_serialize(inst.get()));
  REQUIRE(text);
  Instance back(cfp_instance_parse(text.get()));
  REQUIRE(back);
  CStr d1(cfp_instance_digest(inst.get()));
  CStr d2(cfp_instance_digest(back.get()));
  CHECK(str(d1) == str(d2));
  CHECK(!str(d1).empty());
}

TEST_CASE("error reporting on bad input") {
  CHECK(cfp_instance_parse("nonsense") == nullptr);
  CHECK(std::string(cfp_last_error()).find("line") != std::string::npos);
  CHECK(cfp_gen_random("NOPE", 8, 10, 4, 1) == nullptr);
  CHECK(cfp_gen_random("SF_IC", 5, 11, 4, 1) == nullptr);

  Instance inst(cfp_gen_random("SF_IC", 8, 12, 8, 42));
  REQUIRE(inst);
  CHECK(cfp_run(inst.get(), "warp-drive", "1/4", "1/4", 1) == nullptr);
  CHECK(cfp_run(inst.get(), "central", "zero", "1/4", 1) == nullptr);
}

TEST_CASE("central and distributed runs agree through the C surface") {
  Instance inst(cfp_gen_random("SF_IC", 8, 12, 8, 42));
  REQUIRE(inst);
  Result central(cfp_run(inst.get(), "central", "1/4", "1/4", 1));
  Result dist(cfp_run(inst.get(), "distributed", "1/4", "1/4", 1));
  REQUIRE(central);
  REQUIRE(dist);

  CStr cc(cfp_result_cost(central.get()));
  CStr dc(cfp_result_cost(dist.get()));
  CHECK(str(cc) == "27");
  CHECK(str(cc) == str(dc));
  CStr lb(cfp_result_lower_bound(central.get()));
  CHECK(str(lb) == "490275369/41943040");
  CHECK(cfp_result_phases(central.get()) == 13);
  CHECK(cfp_result_terminals(central.get()) == 7);

  REQUIRE(cfp_result_forest_size(central.get()) == 6);
  CHECK(cfp_result_forest_edge(central.get(), 0) == 0);
  CHECK(cfp_result_forest_edge(central.get(), 5) == 11);
  for (int i = 0; i < 6; ++i)
    CHECK(cfp_result_forest_edge(central.get(), i) == cfp_result_forest_edge(dist.get(), i));

  CHECK(cfp_result_total_rounds(central.get()) == 0);
  CHECK(cfp_result_total_rounds(dist.get()) > 0);
  CHECK(cfp_result_total_messages(dist.get()) > 0);
  CHECK(cfp_result_phase_count(dist.get()) == 13);
  CHECK(cfp_result_phase_rounds(dist.get(), 0, "SSSP") > 0);
  CHECK(cfp_result_phase_rounds(dist.get(), 0, "NOPE") == 0);
}

TEST_CASE("oracle, feasibility, and certification through the C surface") {
  Instance inst(cfp_gen_random("SF_IC", 8, 12, 8, 42));
  REQUIRE(inst);
  CStr opt(cfp_brute_force_opt(inst.get(), 20));
  CHECK(str(opt) == "24");
  CHECK(cfp_brute_force_opt(inst.get(), 4) == nullptr);  // above the ceiling

  Result res(cfp_run(inst.get(), "central", "1/4", "1/4", 1));
  REQUIRE(res);
  CHECK(cfp_check_feasible(inst.get(), res.get()) == 1);

  Cert cert(cfp_certify(inst.get(), res.get(), "1/4", "1/4", 1, 20));
  REQUIRE(cert);
  CHECK(cfp_certificate_ok(cert.get()) == 1);
  CStr text(cfp_certificate_text(cert.get()));
  CHECK(str(text).find("PASS") != std::string::npos);

  // with the oracle gated off, the epsilon chain must still certify
  Cert noracle(cfp_certify(inst.get(), res.get(), "1/4", "1/4", 0, 20));
  REQUIRE(noracle);
  CHECK(cfp_certificate_ok(noracle.get()) == 1);
}

TEST_CASE("gw reference mode and the double-star generator") {
  Instance inst(cfp_gen_lower_bound(4, 3, 0b0101, 0b0101, "SF_SCR"));
  REQUIRE(inst);
  CHECK(cfp_instance_nodes(inst.get()) == 12);
  Result res(cfp_run(inst.get(), "gw-ref", "1/4", "1/4", 1));
  REQUIRE(res);
  CHECK(cfp_check_feasible(inst.get(), res.get()) == 1);
}

TEST_CASE("FPC results expose the opened facilities") {
  Instance inst(cfp_gen_random("FPC", 8, 12, 6, 3));
  REQUIRE(inst);
  Result res(cfp_run(inst.get(), "central", "1/4", "1/4", 1));
  REQUIRE(res);
  int k = cfp_result_opened_count(res.get());
  REQUIRE(k >= 1);
  for (int i = 0; i < k; ++i) {
    int v = cfp_result_opened_facility(res.get(), i);
    CHECK(v >= 0);
    CHECK(v < cfp_instance_nodes(inst.get()));
  }
}
