#include <doctest.h>

#include "mloop/config.hpp"
#include "mloop/errors.hpp"

using namespace mloop;
using nlohmann::json;

TEST_CASE("preset config round-trips through build") {
  auto cfg = RunConfig::from_json(json{{"schema_version", 1}, {"preset", "a2_twisted"}, {"weights", {0, 1, 2}}});
  auto M = cfg.build();
  CHECK(M->eigen_dim({0}) == 3);
  CHECK(M->eigen_dim({1}) == 5);
  CHECK(cfg.weights.size() == 3);
}

TEST_CASE("explicit algebra tuple builds the same twisted setup") {
  json j{{"schema_version", 1},
         {"algebra", "sl3"},
         {"n", 1},
         {"r", {2}},
         {"automorphisms", {"neg_transpose"}}};
  auto M = RunConfig::from_json(j).build();
  CHECK(M->eigen_dim({0}) == 3);
  CHECK(M->eigen_dim({1}) == 5);
}

TEST_CASE("custom structure constants and explicit automorphism matrix") {
  // abelian(2) with the coordinate swap as an order-2 automorphism
  auto j = json::parse(R"({
    "schema_version": 1,
    "structure_constants": [[["0","0"],["0","0"]], [["0","0"],["0","0"]]],
    "n": 1,
    "r": [2],
    "automorphisms": [{"kind": "matrix", "order": 2, "matrix": [["0","1"],["1","0"]]}]
  })");
  auto M = RunConfig::from_json(j).build();
  CHECK(M->eigen_dim({0}) == 1); // span(e0 + e1)
  CHECK(M->eigen_dim({1}) == 1); // span(e0 - e1)
}

TEST_CASE("unknown keys are rejected with their paths") {
  CHECK_THROWS_WITH_AS(RunConfig::from_json(json{{"schema_version", 1}, {"preset", "sl2_loop"}, {"surprise", 1}}),
                       "unknown config key 'surprise'", ConfigError);
  CHECK_THROWS_AS(
      RunConfig::from_json(json{{"schema_version", 1}, {"preset", "sl2_loop"}, {"density", {{"que", 1}}}}),
      ConfigError);
}

TEST_CASE("schema validation catches structural mistakes") {
  // missing schema_version
  CHECK_THROWS_AS(RunConfig::from_json(json{{"preset", "sl2_loop"}}), ConfigError);
  // preset excludes explicit fields
  CHECK_THROWS_AS(RunConfig::from_json(json{{"schema_version", 1}, {"preset", "sl2_loop"}, {"algebra", "sl2"}}),
                  ConfigError);
  // r arity mismatch
  CHECK_THROWS_AS(
      RunConfig::from_json(json{{"schema_version", 1}, {"algebra", "sl2"}, {"n", 2}, {"r", {1}}}),
      ConfigError);
  // weight arity mismatch
  CHECK_THROWS_AS(RunConfig::from_json(json{{"schema_version", 1},
                                            {"algebra", "sl2"},
                                            {"n", 2},
                                            {"r", {1, 1}},
                                            {"weights", {{0, 0, 0}}}}),
                  ConfigError);
  // nonsense cutoff
  CHECK_THROWS_AS(RunConfig::from_json(json{{"schema_version", 1}, {"preset", "sl2_loop"}, {"cutoff", 0}}),
                  ConfigError);
}

TEST_CASE("corrupted structure constants surface the offending triple") {
  // [e0,e1] = e2 and [e0,e2] = e0: antisymmetric but the cyclic sum on
  // (e0,e1,e2) leaves -e2
  auto j = json::parse(R"({
    "schema_version": 1,
    "structure_constants": [
      [["0","0","0"], ["0","0","1"], ["1","0","0"]],
      [["0","0","-1"], ["0","0","0"], ["0","0","0"]],
      [["-1","0","0"], ["0","0","0"], ["0","0","0"]]
    ],
    "n": 1
  })");
  try {
    RunConfig::from_json(j).build();
    FAIL("expected a Jacobi violation");
  } catch (const JacobiViolation &e) {
    CHECK(std::string(e.what()).find("(0,1,2)") != std::string::npos);
  }
}

TEST_CASE("config echo is deterministic and reflects defaults") {
  auto cfg = RunConfig::from_json(json{{"schema_version", 1}, {"preset", "sl2_loop"}});
  auto echo = cfg.echo();
  CHECK(echo["cutoff"] == 3);
  CHECK(echo["degree_cap"] == 64);
  CHECK(echo["trials"] == 500);
  CHECK(echo["density"]["function"] == "exp-sin");
  auto echo2 = RunConfig::from_json(json{{"schema_version", 1}, {"preset", "sl2_loop"}}).echo();
  CHECK(echo.dump() == echo2.dump());
}
