#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "sortition/dataset.hpp"

using namespace sortition;

namespace {

FeatureSchema schema_from(const std::string& text) {
  std::istringstream in(text);
  return FeatureSchema::parse(in);
}

DataTable table_from(const std::string& csv, const FeatureSchema& schema) {
  std::istringstream in(csv);
  return load_dataset(in, schema);
}

const char* kTwoFeature =
    "feature color categorical\n"
    "feature size continuous\n"
    "weight_column w\n";

}  // namespace

TEST_CASE("schema parsing") {
  auto schema = schema_from(kTwoFeature);
  CHECK(schema.features.size() == 2);
  CHECK(schema.features[0].kind == FeatureKind::categorical);
  CHECK(schema.features[1].kind == FeatureKind::continuous);
  CHECK(schema.weight_column == "w");
  CHECK_FALSE(schema.all_weights_fixed());

  CHECK_THROWS(schema_from(""));  // no features
  CHECK_THROWS(schema_from("feature a weird\n"));
  CHECK_THROWS(schema_from("nonsense a b\n"));
  CHECK_THROWS(schema_from("feature a categorical\nfeature a continuous\n"));
  // Fixing only some weights is ambiguous.
  CHECK_THROWS(schema_from(
      "feature a categorical 0.5\nfeature b categorical\n"));
}

TEST_CASE("equal rows merge additively") {
  auto schema = schema_from(kTwoFeature);
  auto table = table_from(
      "color,size,w\n"
      "red,1.0,3\n"
      "blue,2.0,5\n"
      "red,1,4\n",  // same values as row 1, spelled differently
      schema);
  REQUIRE(table.size() == 2);
  CHECK(table.raw_weight[0] == 7.0);
  CHECK(table.weight[0] == 7);
  CHECK(table.weight[1] == 5);
}

TEST_CASE("load errors are descriptive") {
  auto schema = schema_from(kTwoFeature);
  CHECK_THROWS_WITH_AS(table_from("color,w\nred,1\n", schema),
                       doctest::Contains("size"), LoadError);
  CHECK_THROWS_AS(table_from("color,size,w\nred,abc,1\n", schema), LoadError);
  CHECK_THROWS_AS(table_from("color,size,w\nred,1.0,0\n", schema), LoadError);
  CHECK_THROWS_AS(table_from("color,size,w\nred,1.0,-2\n", schema), LoadError);
  CHECK_THROWS_AS(table_from("color,size,w\n", schema), LoadError);
}

TEST_CASE("weight column optional") {
  auto schema = schema_from("feature color categorical\n");
  auto table = table_from("color\nred\nred\nblue\n", schema);
  REQUIRE(table.size() == 2);
  CHECK(table.weight[0] == 2);
  CHECK(table.weight[1] == 1);
}

TEST_CASE("bundled sample deduplicates to the frozen count") {
  auto schema =
      FeatureSchema::parse_file(std::string(SORTITION_DATA_DIR) +
                                "/sample_people.schema");
  auto table = load_dataset_file(
      std::string(SORTITION_DATA_DIR) + "/sample_people.csv", schema);
  CHECK(table.size() == 40);  // 48 file rows, 8 duplicate profiles
  CHECK(table.total_weight() == 2145810);
}

TEST_CASE("apportion hits the resolution exactly") {
  std::vector<double> w = {10.0, 1.0, 1.0, 0.01};
  auto shares = apportion(w, 1000);
  CHECK(std::accumulate(shares.begin(), shares.end(), 0LL) == 1000);
  for (long long s : shares) CHECK(s >= 1);
  CHECK(shares[0] > 800);
  CHECK_THROWS(apportion(w, 3));  // below point count
  CHECK_THROWS(apportion({0.0, 0.0}, 10));
}

TEST_CASE("build_metric distances") {
  SUBCASE("single categorical feature") {
    auto schema = schema_from("feature color categorical 1.0\n");
    auto table = table_from("color\nred\nblue\n", schema);
    auto built = build_metric(table, 0);
    CHECK(built.instance.dist(0, 0) == 0.0);
    CHECK(built.instance.dist(0, 1) == 1.0);
  }
  SUBCASE("single continuous feature normalizes by range") {
    auto schema = schema_from("feature height continuous 1.0\n");
    auto table = table_from("height\n0\n100\n50\n", schema);
    auto built = build_metric(table, 0);
    CHECK(built.instance.dist(0, 1) == 1.0);
    CHECK(built.instance.dist(0, 2) == 0.5);
    CHECK(built.warnings.empty());
  }
  SUBCASE("zero-range continuous feature warns and contributes 0") {
    auto schema = schema_from(
        "feature flat continuous 0.5\nfeature color categorical 0.5\n");
    auto table = table_from("flat,color\n7,red\n7,blue\n", schema);
    auto built = build_metric(table, 0);
    REQUIRE(built.warnings.size() == 1);
    CHECK(built.instance.dist(0, 1) == 0.5);
  }
  SUBCASE("drawn weights are normalized and deterministic") {
    auto schema = schema_from(
        "feature a categorical\nfeature b categorical\nfeature c continuous\n");
    auto table = table_from("a,b,c\nx,u,0\ny,v,1\nx,v,2\n", schema);
    auto one = build_metric(table, 99);
    auto two = build_metric(table, 99);
    double sum = 0;
    for (double w : one.feature_weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.feature_weights == two.feature_weights);
    auto other = build_metric(table, 100);
    CHECK(one.feature_weights != other.feature_weights);
  }
}

TEST_CASE("metric construction is a metric across many seeds") {
  auto schema = schema_from(
      "feature a categorical\nfeature b categorical\nfeature c continuous\n"
      "feature d continuous\n");
  std::string csv = "a,b,c,d\n";
  for (int i = 0; i < 12; ++i)
    csv += "a" + std::to_string(i % 3) + ",b" + std::to_string(i % 4) + "," +
           std::to_string(i * 7 % 13) + "," + std::to_string(i * 3 % 5) + "\n";
  auto table = table_from(csv, schema);
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    CHECK_NOTHROW(build_metric(table, seed));  // from_distances validates
}

TEST_CASE("rescale_weights") {
  auto schema = schema_from(kTwoFeature);
  auto table = table_from(
      "color,size,w\nred,1,100\nblue,2,50\ngreen,3,25\n", schema);
  rescale_weights(table, 700);
  CHECK(table.total_weight() == 700);
  CHECK(table.weight[0] == 400);
  CHECK(table.weight[1] == 200);
  CHECK(table.weight[2] == 100);
}
