#include <gtest/gtest.h>

#include "resdyn/errors.hpp"
#include "resdyn/json_io.hpp"
#include "test_support.hpp"

namespace resdyn {
namespace {

TEST(JsonIoTest, MorphismRoundTrip) {
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const auto phi = testing::random_model(n, 1 + trial % 3, 5).scaled(testing::random_rational(7) + Rational(Integer(1), Integer(101)));
    const Json j = morphism_to_json(phi);
    const auto back = morphism_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back, phi);
    EXPECT_EQ(morphism_to_json(back).dump(), j.dump());
  }
}

TEST(JsonIoTest, MorphismFormat) {
  const auto phi = testing::quadratic(1, 0, 8, 0, 1, 0);
  EXPECT_EQ(morphism_to_json(phi).dump(), R"({"n":1,"d":2,"forms":[[["2,0","1"],["0,2","8"]],[["1,1","1"]]]})");
}

TEST(JsonIoTest, SchemaViolations) {
  const char* bad[] = {
      R"({"n":1,"d":2})",
      R"({"n":1,"d":2,"forms":[[["2,0","1"]]]})",
      R"({"n":1,"d":2,"forms":[[["2,0","1"]],[["1,0","1"]]]})",
      R"({"n":1,"d":2,"forms":[[["2,0","1"],["2,0","3"]],[["0,2","1"]]]})",
      R"({"n":1,"d":2,"forms":[[["2,0","x"]],[["0,2","1"]]]})",
      R"({"n":1,"d":2,"forms":[[["2,0","1"]],[["0,2","1"]]],"extra":1})",
      R"({"n":0,"d":2,"forms":[]})",
      R"({"n":1,"d":2,"forms":[[["2,0","0"]],[["0,2","0"]]]})",
      R"([1,2])",
  };
  for (const char* text : bad) EXPECT_THROW(morphism_from_json(Json::parse(text)), SchemaError) << text;
}

TEST(JsonIoTest, RationalAndIdeal) {
  EXPECT_EQ(rational_to_json(Rational(Integer(-6), Integer(4))).get<std::string>(), "-3/2");
  EXPECT_EQ(rational_from_json(Json("10/4")), Rational(Integer(5), Integer(2)));
  EXPECT_THROW(rational_from_json(Json(3)), SchemaError);
  const auto ideal = FactoredIdeal::from_factors({{Integer(2), 3}, {Integer(5), 1}});
  EXPECT_EQ(ideal_to_json(ideal).dump(), R"({"2":3,"5":1})");
  EXPECT_EQ(ideal_from_json(ideal_to_json(ideal)), ideal);
}

TEST(JsonIoTest, HeightHasTwelveSignificantDigits) {
  EXPECT_EQ(height_to_json(0.6931471805599453).dump(), "0.69314718056");
  EXPECT_EQ(height_to_json(0.0).dump(), "0.0");
}

TEST(JsonIoTest, SchemasCoverEveryPayload) {
  const Json schemas = payload_schemas();
  for (const char* name : {"morphism", "resultant", "reduce", "invariants", "twist-test", "error"}) {
    EXPECT_TRUE(schemas.contains(name)) << name;
  }
}

}  // namespace
}  // namespace resdyn
