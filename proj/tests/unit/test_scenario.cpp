// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <random>
#include <sstream>

#include "hcrb/constants.hpp"
#include "hcrb/errors.hpp"
#include "hcrb/scenario.hpp"
#include "support/random_scenario.hpp"

using namespace hcrb;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvalidArgument;
}

std::string error_text(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("hcrb_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ResultRow sample_row(bool feasible) {
  ResultRow r;
  r.scenario = "A";
  r.gnb_count = 1;
  r.sat_count = 4;
  r.subset = "g0+s0+s1+s2+s3";
  if (feasible) {
    r.peb_m = 0.123456789;
    r.veb_mps = 0.0105;
  }
  r.feasible = feasible;
  r.rank = feasible ? 7 : 6;
  r.condition_number = 12345.678;
  r.wallclock_s = 0.25;
  return r;
}

}  // namespace

TEST(Builtin, ScenarioASatellitePosition) {
  const ScenarioSpec A = builtin_scenario("A");
  const Vec3 expect = spherical_to_cartesian({20.2e6, deg2rad(35.2), deg2rad(45.0)});
  EXPECT_LT((A.satellites.at(0).anchor.p - expect).norm(), 1e-6);
  EXPECT_EQ(A.satellites.size(), 4u);
  EXPECT_EQ(A.gnbs.size(), 2u);
}

TEST(Builtin, ScenarioBAzimuthsOnNarrowArc) {
  for (const SatelliteSpec& s : builtin_scenario("B").satellites) {
    EXPECT_LE(std::abs(cartesian_to_spherical(s.anchor.p).phi), deg2rad(0.7) + 1e-12);
  }
}

TEST(Builtin, VehicleState) {
  for (const char* name : {"A", "B"}) {
    const ScenarioSpec s = builtin_scenario(name);
    EXPECT_EQ(s.vehicle.state.p, Vec3(10.0, 0.0, 1.5));
    EXPECT_NEAR(s.vehicle.state.v(0), 13.89, 0.005);
    EXPECT_EQ(s.vehicle.state.v(1), 0.0);
    EXPECT_EQ(s.vehicle.state.v(2), 0.0);
    EXPECT_EQ(s.gnbs.at(0).anchor.p, Vec3(0.0, 0.0, 7.0));
    EXPECT_EQ(s.gnbs.at(1).anchor.p, Vec3(20.0, -6.0, 5.0));
    EXPECT_EQ(s.gnbs.at(0).array.element_count(), 144);
    EXPECT_EQ(s.vehicle.array.element_count(), 64);
    EXPECT_NO_THROW(s.validate());
  }
}

TEST(Builtin, SatelliteSpeedAndRadialComponent) {
  const ScenarioSpec A = builtin_scenario("A");
  for (const SatelliteSpec& s : A.satellites) {
    EXPECT_NEAR(s.anchor.v.norm(), 3900.0, 1e-9);
    const Vec3 away = (s.anchor.p - A.vehicle.state.p).normalized();
    EXPECT_NEAR(s.anchor.v.dot(away), 1000.0, 1e-9);
    EXPECT_EQ(s.anchor.carrier_freq_hz, 1575.42e6);
  }
  BuiltinOptions toward;
  toward.radial_away = false;
  const ScenarioSpec T = builtin_scenario("A", toward);
  const Vec3 away = (T.satellites[0].anchor.p - T.vehicle.state.p).normalized();
  EXPECT_NEAR(T.satellites[0].anchor.v.dot(away), -1000.0, 1e-9);
}

TEST(Builtin, VelocitySeedIsRecordedAndDeterministic) {
  BuiltinOptions o;
  o.velocity_seed = 77;
  const ScenarioSpec a = builtin_scenario("A", o);
  const ScenarioSpec b = builtin_scenario("A", o);
  EXPECT_EQ(a.satellite_velocity_seed, 77u);
  EXPECT_EQ(a.satellites[2].anchor.v, b.satellites[2].anchor.v);
  EXPECT_NE(a.satellites[2].anchor.v, builtin_scenario("A").satellites[2].anchor.v);
}

TEST(Builtin, UnknownName) {
  EXPECT_EQ(kind_of([] { builtin_scenario("C"); }), ErrorKind::kUnknownScenario);
}

TEST(ScenarioIo, RoundTrip) {
  for (const char* name : {"A", "B"}) {
    const ScenarioSpec spec = builtin_scenario(name);
    const fs::path p = temp_path(std::string("rt_") + name + ".json");
    save_scenario(spec, p.string());
    const ScenarioSpec back = load_scenario(p.string());
    fs::remove(p);
    EXPECT_EQ(scenario_to_json(back), scenario_to_json(spec));
    EXPECT_EQ(back.satellites[3].anchor.v, spec.satellites[3].anchor.v);
    EXPECT_EQ(back.gnbs[1].sector.polar, spec.gnbs[1].sector.polar);
    EXPECT_EQ(back.gnbs[1].ofdm.T0, spec.gnbs[1].ofdm.T0);
  }
}

TEST(ScenarioIo, MissingSatelliteCarrierNamesField) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(scenario_to_json(builtin_scenario("A")));
  j["satellites"][1].erase("carrier_freq_hz");
  const std::string text = j.dump();
  EXPECT_EQ(kind_of([&] { scenario_from_json(text); }), ErrorKind::kValidationError);
  EXPECT_NE(error_text([&] { scenario_from_json(text); }).find("carrier_freq_hz"), std::string::npos);
}

TEST(ScenarioIo, UnknownKeyNamesKey) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(scenario_to_json(builtin_scenario("A")));
  j["gnbs"][0]["antenna_gain_db"] = 3.0;
  const std::string text = j.dump();
  EXPECT_EQ(kind_of([&] { scenario_from_json(text); }), ErrorKind::kParseError);
  EXPECT_NE(error_text([&] { scenario_from_json(text); }).find("antenna_gain_db"), std::string::npos);
}

TEST(ScenarioIo, MalformedJsonReportsLocation) {
  const std::string text = "{\n  \"name\": \"x\",\n  \"vehicle\": [1,\n}";
  EXPECT_EQ(kind_of([&] { scenario_from_json(text, "bad.json"); }), ErrorKind::kParseError);
  EXPECT_NE(error_text([&] { scenario_from_json(text, "bad.json"); }).find("line"), std::string::npos);
}

TEST(ScenarioIo, InvalidValueIsValidationError) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(scenario_to_json(builtin_scenario("A")));
  j["gnbs"][0]["ofdm"]["subcarriers"] = 7;
  const std::string text = j.dump();
  EXPECT_EQ(kind_of([&] { scenario_from_json(text); }), ErrorKind::kValidationError);
}

TEST(ScenarioIo, MissingFileIsIoError) {
  EXPECT_EQ(kind_of([] { load_scenario("/nonexistent/dir/scenario.json"); }), ErrorKind::kIoError);
}

TEST(Emit, EmptyRowsCreateNoFile) {
  const fs::path p = temp_path("empty.csv");
  fs::remove(p);
  EXPECT_EQ(kind_of([&] { emit({}, OutputFormat::kCsv, p.string()); }), ErrorKind::kIoError);
  EXPECT_FALSE(fs::exists(p));
}

TEST(Emit, OneFeasibleRowIsTwoCsvLines) {
  const fs::path p = temp_path("one.csv");
  emit({sample_row(true)}, OutputFormat::kCsv, p.string());
  const std::string text = read_file(p);
  fs::remove(p);
  EXPECT_EQ(text,
            "scenario,gnb_count,sat_count,subset,peb_m,veb_mps,feasible,rank,cond,wallclock_s\n"
            "A,1,4,g0+s0+s1+s2+s3,0.123457,0.0105,true,7,12345.7,0.25\n");
}

TEST(Emit, InfeasibleRowHasEmptyCsvFieldsAndJsonNulls) {
  const std::vector<ResultRow> rows{sample_row(false)};
  EXPECT_NE(format_csv(rows).find("g0+s0+s1+s2+s3,,,false,6"), std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(format_json(rows));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_TRUE(j[0]["peb_m"].is_null());
  EXPECT_TRUE(j[0]["veb_mps"].is_null());
  EXPECT_EQ(j[0]["rank"], 6);
  EXPECT_EQ(j[0]["subset"], "g0+s0+s1+s2+s3");
}

TEST(Evaluate, SubsetLabels) {
  EXPECT_EQ(subset_label({0, 1}, {0, 3}), "g0+g1+s0+s3");
  EXPECT_EQ(subset_label({}, {2}), "s2");
}

TEST(Evaluate, SweepCoversEveryNonEmptySubset) {
  std::mt19937_64 rng(1);
  const ScenarioSpec spec = test_support::random_small_scenario(rng, 3);
  const auto rows = evaluate(spec, {{}, {}, true}, {1});
  EXPECT_EQ(rows.size(), 31u);
  for (const ResultRow& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_EQ(r.scenario, "random");
  }
}

TEST(Evaluate, BadSelection) {
  const ScenarioSpec A = builtin_scenario("A");
  EXPECT_EQ(kind_of([&] { evaluate(A, {{2}, {}, false}); }), ErrorKind::kIndexOutOfRange);
  EXPECT_EQ(kind_of([&] { evaluate(A, {{}, {}, false}); }), ErrorKind::kInvalidArgument);
}

TEST(Evaluate, Deterministic) {
  std::mt19937_64 rng(2);
  const ScenarioSpec spec = test_support::random_small_scenario(rng);
  const auto a = evaluate(spec, {{}, {}, true}, {1});
  const auto b = evaluate(spec, {{}, {}, true}, {3});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].subset, b[i].subset);
    EXPECT_EQ(a[i].peb_m, b[i].peb_m);
    EXPECT_EQ(a[i].veb_mps, b[i].veb_mps);
    EXPECT_EQ(a[i].rank, b[i].rank);
    EXPECT_EQ(a[i].feasible, b[i].feasible);
  }
}

TEST(Evaluate, NestedSubsetsAreMonotone) {
  std::mt19937_64 rng(3);
  const ScenarioSpec spec = test_support::random_small_scenario(rng, 3);
  const auto rows = evaluate(spec, {{}, {}, true}, {1});
  std::map<std::string, const ResultRow*> by;
  for (const ResultRow& r : rows) by[r.subset] = &r;
  const ResultRow& small = *by.at("g0+g1+s1");
  const ResultRow& big = *by.at("g0+g1+s0+s1+s2");
  ASSERT_TRUE(small.feasible && big.feasible);
  EXPECT_LE(*big.peb_m, *small.peb_m);
}

TEST(Evaluate, IciTruncationBarelyMatters) {
  std::mt19937_64 rng(4);
  ScenarioSpec spec = test_support::random_small_scenario(rng);
  const auto narrow = evaluate(spec, {{0, 1}, {0}, false}, {1}).at(0);
  for (GnbSpec& g : spec.gnbs) g.ofdm.ici_halfwidth = g.ofdm.K / 2 - 1;
  const auto wide = evaluate(spec, {{0, 1}, {0}, false}, {1}).at(0);
  ASSERT_TRUE(narrow.peb_m && wide.peb_m);
  EXPECT_LT(std::abs(*wide.peb_m / *narrow.peb_m - 1.0), 1e-2);
}

TEST(Evaluate, PowerScalingLaw) {
  std::mt19937_64 rng(5);
  ScenarioSpec spec = test_support::random_small_scenario(rng);
  const auto base = evaluate(spec, {{0, 1}, {0, 1, 2, 3}, false}, {1}).at(0);
  test_support::add_power_db(spec, 20.0);
  const auto loud = evaluate(spec, {{0, 1}, {0, 1, 2, 3}, false}, {1}).at(0);
  EXPECT_NEAR(*loud.peb_m / *base.peb_m, 0.1, 1e-10);
  EXPECT_NEAR(*loud.veb_mps / *base.veb_mps, 0.1, 1e-10);
}
