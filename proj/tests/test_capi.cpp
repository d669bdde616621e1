#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "thetalab.h"

using nlohmann::json;

namespace {

const char* kScenario = R"({
  "schema": 1,
  "curve": { "a1": "0", "a2": "-1", "a3": "1", "a4": "-10", "a6": "-20" },
  "l": 13,
  "S": [11],
  "attestations": { "non_shimura": true, "torsion_conditions": true },
  "lifted_places": { "11": { "e": 78, "f": 12, "logshell": "0" } },
  "ind3": { "n0": 1 },
  "precision": 25
})";

}  // namespace

TEST_CASE("scenario life cycle and reports through the C interface") {
  tl_scenario* sc = nullptr;
  REQUIRE(tl_scenario_load_json(kScenario, &sc) == 0);
  REQUIRE(sc != nullptr);

  char* out = nullptr;
  REQUIRE(tl_report(sc, "pilots", nullptr, &out) == 0);
  REQUIRE(out != nullptr);
  json rep = json::parse(out);
  CHECK(rep["q_pilot_neg_degree"]["human"] == "-(5/26)*ln(11)");
  tl_string_free(out);

  out = nullptr;
  REQUIRE(tl_report(sc, "inequality", R"({"approx_digits": 6})", &out) == 0);
  rep = json::parse(out);
  CHECK(rep["verdict"] == "fails");
  CHECK(rep["rhs"]["human"] == "-(35/12)*ln(11)");
  CHECK(rep["config_echo"]["approx_digits"] == 6);
  tl_string_free(out);

  // identical calls return identical bytes
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(tl_report(sc, "indet", nullptr, &a) == 0);
  REQUIRE(tl_report(sc, "indet", nullptr, &b) == 0);
  CHECK(std::string(a) == std::string(b));
  tl_string_free(a);
  tl_string_free(b);

  tl_scenario_free(sc);
}

TEST_CASE("error codes and messages") {
  tl_scenario* sc = nullptr;
  CHECK(tl_scenario_load_json("{ not json", &sc) == 2);
  CHECK(sc == nullptr);
  CHECK(std::strlen(tl_last_error()) > 0);

  CHECK(tl_scenario_load_json(R"({"schema": 1})", &sc) == 2);  // missing keys

  REQUIRE(tl_scenario_load_json(kScenario, &sc) == 0);
  char* out = nullptr;
  CHECK(tl_report(sc, "no-such-command", nullptr, &out) == 64);
  CHECK(out == nullptr);
  CHECK(tl_report(sc, "pilots", "{ broken", &out) == 64);
  CHECK(tl_report(sc, "pilots", R"({"bogus": 1})", &out) == 64);
  tl_scenario_free(sc);

  CHECK(std::string(tl_errname(0)) == "ok");
  CHECK(std::string(tl_errname(1)) == "computation");
  CHECK(std::string(tl_errname(2)) == "validation");
  CHECK(std::string(tl_errname(64)) == "usage");
}

TEST_CASE("region volume documents through the C interface") {
  const char* doc = R"({
    "schema": 1,
    "level": 0,
    "base": { "degree": 1, "fibers": { "11": [ { "label": "v", "d": 1, "f": 1 } ] } },
    "summands": [
      { "index": ["v"], "region": { "kind": "scaled-ring", "shifts": ["5/26"] } }
    ]
  })";
  char* out = nullptr;
  REQUIRE(tl_region_volume_json(doc, &out) == 0);
  json rep = json::parse(out);
  CHECK(rep["exact"] == true);
  CHECK(rep["ln_nu"]["human"] == "-(5/26)*ln(11)");
  tl_string_free(out);

  CHECK(tl_region_volume_json("[]", &out) == 2);
  CHECK(tl_region_volume_json("{ nope", &out) == 2);
}

TEST_CASE("loading from a file path") {
  tl_scenario* sc = nullptr;
  CHECK(tl_scenario_load_file("/nonexistent/sc.json", &sc) == 2);
  CHECK(sc == nullptr);
}
