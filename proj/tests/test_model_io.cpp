#include "caimdp/json_writer.hpp"
#include "caimdp/model_io.hpp"

#include "random_models.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace caimdp;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("caimdp_test_" + name);
}

json two_state_affine() {
  return json::parse(R"({
    "n_states": 2, "n_actions_dim": 1,
    "action_set": {"type": "box", "lo": [0.0], "hi": [1.0]},
    "lower": [[{"kind": "affine", "c": [0.1], "d": 0.2}, {"kind": "affine", "c": [0.0], "d": 0.3}],
              [{"kind": "affine", "c": [0.0], "d": 0.5}, {"kind": "affine", "c": [0.0], "d": 0.5}]],
    "upper": [[{"kind": "affine", "c": [0.1], "d": 0.6}, {"kind": "affine", "c": [0.0], "d": 0.7}],
              [{"kind": "affine", "c": [0.0], "d": 0.5}, {"kind": "affine", "c": [0.0], "d": 0.5}]],
    "reward": [1.0, 2.0]
  })");
}

}  // namespace

TEST(ModelIo, RoundTripAffine) {
  const Caimdp m = model_from_json(two_state_affine());
  const auto path = temp_file("affine.json");
  save_model(m, path);
  const Caimdp back = load_model(path);
  EXPECT_TRUE(back == m);
  EXPECT_EQ(back.lower(0, 0).as_affine()->c(0), 0.1);
  std::filesystem::remove(path);
}

TEST(ModelIo, RoundTripRandomModelsBitExact) {
  Rng rng(21);
  using testkit::ModelKind;
  for (int trial = 0; trial < 30; ++trial) {
    const auto kind = static_cast<ModelKind>(trial % 3);
    const ActionSet set = kind == ModelKind::ConcaveConvex ? testkit::random_convex_set(rng)
                                                           : testkit::random_polytope(rng);
    const Caimdp m = testkit::random_model(kind, 3, set, rng);
    const std::string text = dump_json(model_to_json(m));
    const Caimdp back = model_from_json(json::parse(text));
    EXPECT_TRUE(back == m) << trial;
    EXPECT_EQ(dump_json(model_to_json(back)), text);
  }
}

TEST(ModelIo, NegativeRewardIsValidationError) {
  json j = two_state_affine();
  j["reward"][1] = -1.0;
  try {
    model_from_json(j);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("reward must be nonnegative"), std::string::npos);
  }
}

TEST(ModelIo, ConcaveTagWithPositiveDefiniteHessian) {
  json j = two_state_affine();
  j["lower"][0][0] = {{"kind", "quadratic"}, {"H", {{1.0}}}, {"c", {0.0}}, {"d", 0.2},
                      {"shape", "concave"}};
  try {
    model_from_json(j);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("lower[0][0]"), std::string::npos);
  }
}

TEST(ModelIo, SchemaErrorsCarryFieldPath) {
  json j = two_state_affine();
  j["upper"][1][0]["d"] = "x";
  try {
    model_from_json(j);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("upper[1][0].d"), std::string::npos) << e.what();
  }
  json k = two_state_affine();
  k.erase("action_set");
  EXPECT_THROW(model_from_json(k), ParseError);
  json d = two_state_affine();
  d["n_actions_dim"] = 2;
  EXPECT_THROW(model_from_json(d), Error);
}

TEST(ModelIo, InconsistentIntervalsRejectedOnLoad) {
  json j = two_state_affine();
  j["upper"][0][0]["d"] = 0.1;
  const auto path = temp_file("bad.json");
  write_json_file(j, path);
  EXPECT_THROW(load_model(path), ValidationError);
  EXPECT_NO_THROW(load_model(path, false));
  std::filesystem::remove(path);
}

TEST(ModelIo, OpaqueIsNotSerializable) {
  const ActionSet set = ActionSet::singleton(Vector::Zero(1));
  const auto op = BoundFunction::opaque(
      1, [](const Vector&) { return 1.0; }, [](const Vector&) { return Vector::Zero(1); },
      Shape::Linear);
  const Caimdp m(set, {{op}}, {{op}}, Vector::Ones(1));
  EXPECT_THROW(model_to_json(m), CapabilityError);
}

TEST(JsonWriter, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2.0");
  EXPECT_EQ(format_double(1e300), "1.0000000000000001e+300");
  const json j = {{"b", {1.5, 2.0}}, {"a", 1}};
  EXPECT_EQ(dump_json(j), "{\n  \"a\": 1,\n  \"b\": [1.5, 2.0]\n}\n");
}
