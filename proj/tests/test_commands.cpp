#include <doctest.h>

#include <json.hpp>

#include <set>

#include "commands.hpp"

using namespace arithdyn;
using Json = nlohmann::json;

namespace {

const char* kZ2 = R"({"num": ["0", "0", "1"], "den": ["1"]})";

Json run_json(const std::string& cmd, Json cfg, int expected_exit = kExitOk) {
  cfg["metadata"] = false;
  const CommandOutcome out = run_command(cmd, cfg.dump());
  CHECK(out.exit_code == expected_exit);
  return Json::parse(out.text);
}

}  // namespace

TEST_SUITE("commands") {
  TEST_CASE("every command publishes a schema with the common keys") {
    const auto names = command_names();
    CHECK(names.size() == 11);
    for (const auto& name : names) {
      const Json schema = Json::parse(command_schema(name));
      CHECK(schema["command"] == name);
      std::set<std::string> keys;
      for (const auto& k : schema["keys"]) keys.insert(k["name"].get<std::string>());
      for (const char* common : {"format", "output", "seed", "threads", "metadata"}) CHECK(keys.count(common) == 1);
    }
    CHECK_THROWS(command_schema("nope"));
  }

  TEST_CASE("scan report and exit codes") {
    const Json r = run_json("scan", {{"map", Json::parse(kZ2)}, {"alpha", "2"}, {"beta", "1"}, {"places", "inf,3,5"}});
    CHECK(r["result"]["integral_indices"] == Json::array({0, 1, 2}));
    CHECK(r["config"]["n_max"] == 10);
    CHECK(r["version"] == ARITHDYN_VERSION);
    CHECK_FALSE(r.contains("metadata"));

    const Json t = run_json("scan", {{"map", Json::parse(kZ2)}, {"alpha", "2"}, {"beta", "1"}, {"n_max", 40}, {"bit_cap", 64}},
                            kExitCap);
    CHECK(t["result"]["truncated"] == true);

    const Json bad = run_json("scan", {{"map", Json::parse(R"({"num": ["0","0","1"], "den": ["0"]})")}, {"alpha", "2"}, {"beta", "1"}},
                              kExitInvalid);
    CHECK(bad.contains("error"));
    CHECK(bad["error"]["code"] == "invalid_argument");

    run_json("scan", {{"map", Json::parse(kZ2)}, {"alpha", "2"}, {"beta", "2"}}, kExitInvalid);
    const Json crit = run_json("scan", {{"map", Json::parse(kZ2)}, {"alpha", "2"}, {"beta", "2"}, {"critical", true}});
    CHECK(crit["result"]["first_index"] == 1);
  }

  TEST_CASE("config validation") {
    run_json("scan", {{"map", Json::parse(kZ2)}, {"alpha", "2"}, {"beta", "1"}, {"bogus", 1}}, kExitInvalid);
    run_json("scan", {{"map", Json::parse(kZ2)}, {"alpha", "2"}, {"beta", "1"}, {"n_max", "ten"}}, kExitInvalid);
    run_json("scan", {{"map", Json::parse(kZ2)}, {"alpha", "2"}}, kExitInvalid);
    run_json("lte", {{"a", "4"}, {"b", "1"}, {"n", "3"}, {"p", "3"}, {"format", "xml"}}, kExitInvalid);
    const CommandOutcome junk = run_command("lte", "{not json");
    CHECK(junk.exit_code == kExitInvalid);
    CHECK(Json::parse(junk.text).contains("error"));
    CHECK(run_command("frobnicate", "{}").exit_code == kExitInvalid);
  }

  TEST_CASE("csv output for scans") {
    const CommandOutcome out = run_command(
        "scan", Json{{"map", Json::parse(kZ2)}, {"alpha", "2"}, {"beta", "1"}, {"n_max", 3}, {"format", "csv"}}.dump());
    CHECK(out.exit_code == kExitOk);
    CHECK(out.text.find("n,x0,x1,height,integral,witnesses,flags\n0,2,1,") != std::string::npos);
    run_json("lte", {{"a", "4"}, {"b", "1"}, {"n", "3"}, {"p", "3"}, {"format", "csv"}}, kExitInvalid);
  }

  TEST_CASE("bound command") {
    CHECK(run_json("bound", {{"theorem", "z2"}, {"s", 3}})["result"]["value"].get<double>() ==
          doctest::Approx(78.0196).epsilon(1e-5));
    CHECK(run_json("bound", {{"theorem", "2"}, {"s", 5}, {"c2", 3}, {"c3", 0}})["result"]["value"] == 15.0);
    run_json("bound", {{"theorem", "2"}, {"s", 5}}, kExitInvalid);
    run_json("bound", {{"theorem", "7"}, {"s", 5}}, kExitInvalid);
    CHECK(run_json("bound", {{"theorem", "preimage"}, {"s", 3}, {"d", 2}})["result"]["value"] == 10.0);
    CHECK(run_json("bound", {{"theorem", "roth"}, {"r", 2}})["result"].contains("log_c2"));
  }

  TEST_CASE("other commands") {
    const Json c = run_json("canheight", {{"map", Json::parse(R"({"num": ["1","0","1"], "den": ["1"]})")}, {"point", "0"}, {"tol", 1e-6}});
    CHECK(c["result"]["interval"]["lo"].get<double>() <= 0.20368);
    CHECK(c["result"]["interval"]["hi"].get<double>() >= 0.20367);
    CHECK(run_json("lte", {{"a", "4"}, {"b", "1"}, {"n", "3"}, {"p", "3"}})["result"]["valuation"] == 2);
    run_json("lte", {{"a", "7"}, {"b", "7"}, {"n", "3"}, {"p", "3"}}, kExitInvalid);
    const Json f = run_json("fermat-sweep", {{"x_min", -1}, {"x_max", -1}, {"y_min", 1}, {"y_max", 1}});
    CHECK(f["result"]["max_count"] == 2);
    const Json h = run_json("height", {{"point", "-45/8"}, {"map", Json::parse(kZ2)}});
    CHECK(h["result"]["weil_height"]["log_of"] == "45");
    run_json("height", Json::object(), kExitInvalid);
    CHECK(run_json("orbit-valuation", {{"map", Json::parse(kZ2)}, {"alpha", "2"}, {"beta", "1"}, {"p", "3"}, {"n", 2}})
              ["result"]["valuation"] == 1);
    const Json adv = run_json("adversarial", {{"m", 4}});
    CHECK(adv["result"]["a_m"] == "260");
    CHECK(adv["result"]["integral_in_1_to_m"].get<unsigned>() >= 4);
    const Json lip = run_json("lipschitz", {{"map", Json::parse(R"({"num": ["0","0","2"], "den": ["1"]})")}, {"place", "2"}});
    CHECK(lip["result"]["exact"] == "4");
    CHECK(run_json("params-z2", {{"s", 2}})["result"]["final_threshold"] == 56.0);
    const Json q = run_json("quasi-scan", {{"map", Json::parse(kZ2)}, {"alpha", "2"}, {"beta", "1"}, {"eps", "0"}, {"n_max", 4}});
    CHECK(q["result"]["gamma"].size() == 5);
  }

  TEST_CASE("reports are deterministic apart from metadata") {
    const std::string cfg = Json{{"map", Json::parse(kZ2)}, {"alpha", "2"}, {"beta", "1"}, {"threads", 3}}.dump();
    Json a = Json::parse(run_command("scan", cfg).text), b = Json::parse(run_command("scan", cfg).text);
    REQUIRE(a.contains("metadata"));
    CHECK(a["metadata"].contains("timestamp"));
    a.erase("metadata");
    b.erase("metadata");
    CHECK(a.dump() == b.dump());
  }
}
