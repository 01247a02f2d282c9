#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "sqkd/depolarizing.hpp"
#include "sqkd/json_io.hpp"
#include "sqkd/key_rate.hpp"

using namespace sqkd;

TEST_CASE("attack files round-trip bit for bit", "[json]") {
  const AttackSpec original = dilation(DepolScenario{0.137, -0.21});
  const AttackSpec parsed = attack_from_json(attack_to_json(original));
  REQUIRE(parsed.bias == original.bias);
  REQUIRE(parsed.dim() == original.dim());
  for (std::size_t k = 0; k < original.dim(); ++k) {
    REQUIRE(parsed.e0[k] == original.e0[k]);
    REQUIRE(parsed.e1[k] == original.e1[k]);
    REQUIRE(parsed.e2[k] == original.e2[k]);
    REQUIRE(parsed.e3[k] == original.e3[k]);
  }
}

TEST_CASE("attack parsing names the offending field", "[json]") {
  REQUIRE_THROWS_AS(attack_from_json("not json"), std::invalid_argument);
  REQUIRE_THROWS_AS(attack_from_json("[1, 2, 3]"), std::invalid_argument);
  REQUIRE_THROWS_AS(attack_from_json(R"({"b": "zero", "dim": 1})"), std::invalid_argument);
  REQUIRE_THROWS_WITH(
      attack_from_json(R"({"b": 0.0, "dim": 1, "e0": [[1, 0, 0]], "e1": [[0, 0]],
                           "e2": [[0, 0]], "e3": [[1, 0]]})"),
      Catch::Matchers::ContainsSubstring("'e0'"));
  REQUIRE_THROWS_WITH(attack_from_json(R"({"dim": 1})"),
                      Catch::Matchers::ContainsSubstring("'b'"));
  REQUIRE_THROWS_WITH(attack_from_json(R"({"b": 0.0, "dim": 0})"),
                      Catch::Matchers::ContainsSubstring("'dim'"));
  REQUIRE_THROWS_WITH(
      attack_from_json(R"({"b": 0.0, "dim": 2, "e0": [[1, 0]], "e1": [[0, 0], [0, 0]],
                           "e2": [[0, 0], [0, 0]], "e3": [[1, 0], [0, 0]]})"),
      Catch::Matchers::ContainsSubstring("'e0'"));
  REQUIRE_THROWS_WITH(
      attack_from_json(R"({"b": 0.0, "dim": 1, "e0": [[1, 0]], "e1": [[0, 0]],
                           "e2": [[0, 0]], "e3": [0.5]})"),
      Catch::Matchers::ContainsSubstring("'e3'"));
}

TEST_CASE("statistics round-trip", "[json]") {
  const ChannelStatistics original = closed_form_statistics(DepolScenario{0.1072, -0.775e-1});
  const ChannelStatistics parsed = statistics_from_json(statistics_to_json(original));
  REQUIRE(parsed.bias == original.bias);
  REQUIRE(parsed.qz0 == original.qz0);
  REQUIRE(parsed.qz1 == original.qz1);
  REQUIRE(parsed.p0plus == original.p0plus);
  REQUIRE(parsed.p1plus == original.p1plus);
  REQUIRE(parsed.pe1 == original.pe1);
  REQUIRE(parsed.peminus == original.peminus);

  REQUIRE_THROWS_WITH(statistics_from_json(R"({"b": 0.0})"),
                      Catch::Matchers::ContainsSubstring("'qz0'"));
}

TEST_CASE("report serialization keeps full precision", "[json]") {
  const KeyRateReport report = key_rate(closed_form_statistics(DepolScenario{0.1, 0.0}));
  const std::string text = report_to_json(report);
  const nlohmann::json j = nlohmann::json::parse(text);
  REQUIRE(j["r"].get<double>() == report.r);
  REQUIRE(j["eta"].get<double>() == report.eta);
  REQUIRE(j["lambda"].get<double>() == report.lambda);
  REQUIRE(j["cap_b"].get<double>() == report.cap_b);
  REQUIRE(j["s_bec"].get<double>() == report.s_bec);
  REQUIRE(j["s_ec_upper"].get<double>() == report.s_ec_upper);
  REQUIRE(j["h_b_given_a"].get<double>() == report.h_b_given_a);
  REQUIRE(j["aborted"].get<bool>() == report.aborted);
}

TEST_CASE("non-finite values serialize as null", "[json]") {
  JsonWriter w;
  w.begin_object();
  w.key("x").value(std::numeric_limits<double>::quiet_NaN());
  w.end_object();
  REQUIRE(w.str() == R"({"x":null})");
}
