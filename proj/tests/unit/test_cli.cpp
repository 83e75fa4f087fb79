#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hotplug/cli.hpp"

using hotplug::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("tradeoff emits the (3,4,3) corner points") {
  const auto r = call({"tradeoff", "--ka", "3", "--k", "4", "--n", "3", "--schemes", "ht", "--bounds", "exact_small,cutset"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("scheme,M_num,M_den,R_num,R_den,M_float,R_float,is_corner\n", 0) == 0);
  CHECK(r.out.find("ht,1,1,1,1,1,1,1\n") != std::string::npos);
  CHECK(r.out.find("ht,2,1,1,3,2,0.3333333333,1\n") != std::string::npos);
}

TEST_CASE("tradeoff json carries the schema version") {
  const auto r = call({"tradeoff", "--ka", "3", "--k", "6", "--n", "3", "--schemes", "ht_pk,pk_plus,yma_vu", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["curves"].size() == 3);
  bool found = false;
  for (const auto& p : j["curves"][0]["points"]) found = found || (p["M"] == "7/3" && p["R"] == "1/3");
  CHECK(found);
}

TEST_CASE("tradeoff without curves is a usage error") {
  const auto r = call({"tradeoff", "--ka", "3", "--k", "4", "--n", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("verify reports the (2,3,2) ht1 point") {
  const auto r = call({"verify", "--scheme", "ht1", "--ka", "2", "--k", "3", "--n", "2", "--t", "1", "--q", "5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["decode_ok"] == true);
  CHECK(j["measured_M"]["value"] == "1");
  CHECK(j["measured_R"]["value"] == "1/2");
}

TEST_CASE("verify picks the smallest adequate field when --q is absent") {
  const auto r = call({"verify", "--scheme", "ht3", "--ka", "3", "--k", "4", "--n", "3"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["params"]["q"] == 11);
}

TEST_CASE("verify exit codes") {
  CHECK(call({"verify", "--scheme", "flex", "--ka", "3", "--k", "4", "--n", "3", "--t", "1"}).code == 1);
  const auto priv = call({"verify", "--scheme", "ht1", "--ka", "2", "--k", "2", "--n", "2", "--t", "1", "--q", "3", "--privacy"});
  CHECK(priv.code == 3);
  const auto ok = call({"verify", "--scheme", "pk_plus", "--ka", "2", "--k", "2", "--n", "2", "--t", "0", "--q", "2", "--privacy"});
  CHECK(ok.code == 0);
}

TEST_CASE("gap passes at (12,30,20)") {
  const auto r = call({"gap", "--ka", "12", "--k", "30", "--n", "20"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["ok"] == true);
}

TEST_CASE("config file with flag override, byte-identical reruns") {
  const std::string cfg = "hotplug_test_config.ini";
  {
    std::ofstream f(cfg);
    f << "ka=3\nk=4\nn=3\nschemes=ht\n";
  }
  const auto a = call({"tradeoff", "--config", cfg, "--grid", "8", "--bounds", "cutset"});
  const auto b = call({"tradeoff", "--config", cfg, "--grid", "8", "--bounds", "cutset"});
  const auto c = call({"tradeoff", "--config", cfg, "--n", "2", "--bounds", "cutset"});
  std::remove(cfg.c_str());
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("ht,2,1,1,3,") != std::string::npos);
  CHECK(c.out != a.out);
}
