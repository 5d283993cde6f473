// Copyright 2026 The Compromise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/runner.hpp"

using namespace compromise;

namespace {

const char* kEx1 =
    "# single-peaked\n"
    "space.kind = interval\n"
    "pref1.kind = piecewise_linear\n"
    "pref1.knots = 0:0.9, 0.1:1, 1:0.1\n"
    "pref2.kind = piecewise_linear\n"
    "pref2.knots = 0:0, 0.5:1, 1:0.5\n"
    "solver.resolution = 2000\n";

const char* kEx3 =
    "space.kind = interval\n"
    "pref1.kind = piecewise_linear\n"
    "pref1.knots = 0:1, 0.5:0, 1:1\n"
    "pref2.kind = piecewise_linear\n"
    "pref2.knots = 0:0, 0.5:1, 1:0\n";

std::string config_error(const std::string& text) {
  try {
    RunConfig::parse(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& needle) {
  return s.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("a minimal config parses with defaults") {
  const auto cfg = RunConfig::parse(kEx1);
  CHECK(cfg.problem().space.kind() == SpaceKind::kInterval);
  CHECK(cfg.problem().measure.kind() == MeasureKind::kLebesgueNormalized);
  CHECK(cfg.solver().resolution == 2000);
  CHECK(cfg.seed() == 0);
  CHECK(cfg.mechanism().mode == MechanismMode::kFamily);
  CHECK(cfg.entries().at("pref1.knots").line == 4);
}

TEST_CASE("errors name the line and the key") {
  const std::string unknown = config_error(std::string(kEx1) + "solver.speed = 3\n");
  CHECK(contains(unknown, "line 8"));
  CHECK(contains(unknown, "solver.speed"));

  const std::string missing = config_error(
      "pref1.kind = euclidean\npref1.ideal = 0\npref2.kind = euclidean\npref2.ideal = 1\n");
  CHECK(contains(missing, "space.kind"));

  const std::string fs = config_error(
      "space.kind = unit_triangle\n"
      "pref1.kind = fehr_schmidt\npref1.alpha = 0.2\npref1.beta = 0.4\n"
      "pref2.kind = fehr_schmidt\npref2.alpha = 0.5\npref2.beta = 0.2\n");
  CHECK(contains(fs, "line 4"));
  CHECK(contains(fs, "beta <= alpha"));

  CHECK(contains(config_error(std::string(kEx1) + "solver.resolution = 10\n"), "duplicate"));
  CHECK(contains(config_error(std::string(kEx3) + "seed = many\n"), "seed"));
  CHECK(contains(config_error(std::string(kEx3) + "just some words\n"), "key = value"));
  CHECK(contains(config_error("space.kind = torus\npref1.kind = euclidean\n"
                              "pref1.ideal = 0\npref2.kind = euclidean\npref2.ideal = 1\n"),
                 "torus"));
}

TEST_CASE("programmatic overrides revalidate") {
  auto cfg = RunConfig::parse(kEx1);
  cfg.set("seed", "17");
  CHECK(cfg.seed() == 17);
  CHECK_THROWS_AS(cfg.set("solver.resolution", "2"), Error);
  CHECK(cfg.solver().resolution == 2000);  // unchanged after the failure
  CHECK_THROWS_AS(cfg.set("no.such.key", "1"), Error);

  cfg.set_custom(2, Preference::custom([](const Point& p) { return -p[0]; }));
  CHECK(cfg.problem().pref2.kind_name() == "custom");
}

TEST_CASE("solve reports one row per compromise") {
  const auto rep = run_solve(RunConfig::parse(kEx3));
  CHECK(rep.passed);
  CHECK(rep.rows.size() == 2);
  const std::string csv = rep.csv();
  CHECK(contains(csv, rep.header.front()));
  CHECK(run_solve(RunConfig::parse(kEx3)).csv() == csv);
}

TEST_CASE("verify accepts the compromise and rejects other points") {
  const auto cfg = RunConfig::parse(kEx1);
  CHECK(run_verify(cfg, Point{0.375}).passed);
  CHECK_FALSE(run_verify(cfg, Point{0.5}).passed);
  CHECK_THROWS_AS(run_verify(cfg, Point{0.5, 0.5}), Error);
}

TEST_CASE("mechanism certificates") {
  CHECK(run_mechanism(RunConfig::parse(kEx1)).passed);
  auto ex = RunConfig::parse(kEx1);
  ex.set("mechanism.mode", "exhaustive");
  ex.set("mechanism.cap", "10");
  const auto rep = run_mechanism(ex);
  CHECK(rep.rows.size() == 3);
}

TEST_CASE("sampling is deterministic for a seed") {
  auto cfg = RunConfig::parse(kEx1);
  cfg.set("seed", "5");
  const auto a = run_sample(cfg, 20);
  const auto b = run_sample(cfg, 20);
  CHECK(a.rows.size() == 20);
  CHECK(a.csv() == b.csv());
  cfg.set("seed", "6");
  CHECK(run_sample(cfg, 20).csv() != a.csv());
}

TEST_CASE("reproduce table") {
  const auto rep = run_reproduce(std::string("ex3_two_compromises"));
  CHECK(rep.passed);
  CHECK(rep.header.size() == 7);
  CHECK(rep.rows.size() == 6);
  CHECK_THROWS_AS(run_reproduce(std::string("nope")), Error);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.375) == "0.375");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}
