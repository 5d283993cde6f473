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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "compromise/compromise.h"

namespace {

const char* kEx1 =
    "space.kind = interval\n"
    "pref1.kind = piecewise_linear\n"
    "pref1.knots = 0:0.9, 0.1:1, 1:0.1\n"
    "pref2.kind = piecewise_linear\n"
    "pref2.knots = 0:0, 0.5:1, 1:0.5\n"
    "solver.resolution = 2000\n";

struct Config {
  cmp_config* cfg = nullptr;
  explicit Config(const char* text) { REQUIRE(cmp_config_parse(text, &cfg) == CMP_OK); }
  ~Config() { cmp_config_free(cfg); }
};

struct Report {
  cmp_report* rep = nullptr;
  ~Report() { cmp_report_free(rep); }
};

double mirror(const double* x, size_t, void*) { return -std::abs(x[0] - 0.5); }

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(cmp_version()).size() > 0);
  CHECK(std::string(cmp_status_name(CMP_OK)) == "ok");
  CHECK(std::string(cmp_status_name(CMP_ERR_NON_REGULAR)).size() > 0);
}

TEST_CASE("parse errors map to CMP_ERR_CONFIG") {
  cmp_config* cfg = nullptr;
  CHECK(cmp_config_parse("space.kind = interval\nbogus = 1\n", &cfg) == CMP_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(cmp_last_error()).find("line 2") != std::string::npos);
  CHECK(cmp_config_parse(nullptr, &cfg) == CMP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("solve and verify") {
  Config c(kEx1);
  Report r;
  REQUIRE(cmp_solve(c.cfg, &r.rep) == CMP_OK);
  CHECK(cmp_report_passed(r.rep) == 1);
  CHECK(cmp_report_row_count(r.rep) == 1);
  CHECK(std::string(cmp_report_table(r.rep)).find("0.375") != std::string::npos);

  const double good = 0.375, bad = 0.5;
  Report v1, v2;
  REQUIRE(cmp_verify(c.cfg, &good, 1, &v1.rep) == CMP_OK);
  REQUIRE(cmp_verify(c.cfg, &bad, 1, &v2.rep) == CMP_OK);
  CHECK(cmp_report_passed(v1.rep) == 1);
  CHECK(cmp_report_passed(v2.rep) == 0);

  const double two[2] = {0.1, 0.2};
  Report v3;
  CHECK(cmp_verify(c.cfg, two, 2, &v3.rep) == CMP_ERR_CONFIG);
}

TEST_CASE("lower contour measures") {
  Config c(kEx1);
  const double x = 0.375;
  double value = 0.0, se = -1.0;
  REQUIRE(cmp_lower_measure(c.cfg, 2, &x, 1, &value, &se) == CMP_OK);
  CHECK(value == doctest::Approx(0.625));
  CHECK(se == 0.0);
  CHECK(cmp_lower_measure(c.cfg, 3, &x, 1, &value, &se) == CMP_ERR_INVALID_ARGUMENT);

  REQUIRE(cmp_config_set(c.cfg, "contour.backend", "mc") == CMP_OK);
  REQUIRE(cmp_lower_measure(c.cfg, 2, &x, 1, &value, &se) == CMP_OK);
  CHECK(se > 0.0);
  CHECK(std::abs(value - 0.625) <= 4.0 * se);
}

TEST_CASE("custom preferences through callbacks") {
  Config c(kEx1);
  REQUIRE(cmp_config_set_custom_preference(c.cfg, 1, &mirror, nullptr) == CMP_OK);
  const double x = 0.3;
  double value = 0.0;
  REQUIRE(cmp_lower_measure(c.cfg, 1, &x, 1, &value, nullptr) == CMP_OK);
  // Lower set of the point 0.2 away from 1/2: [0, 0.3] and [0.7, 1].
  CHECK(value == doctest::Approx(0.6).epsilon(1e-2));
}

TEST_CASE("mechanism, sample and reproduce") {
  Config c(kEx1);
  Report m;
  REQUIRE(cmp_mechanism(c.cfg, &m.rep) == CMP_OK);
  CHECK(cmp_report_passed(m.rep) == 1);

  Report s;
  REQUIRE(cmp_sample(c.cfg, 7, &s.rep) == CMP_OK);
  CHECK(cmp_report_row_count(s.rep) == 7);

  REQUIRE(cmp_scenario_count() == 9);
  CHECK(cmp_scenario_name(9) == nullptr);
  Report rep;
  REQUIRE(cmp_reproduce(cmp_scenario_name(0), 0, &rep.rep) == CMP_OK);
  CHECK(cmp_report_passed(rep.rep) == 1);
  Report missing;
  CHECK(cmp_reproduce("nope", 0, &missing.rep) == CMP_ERR_NOT_FOUND);
}

TEST_CASE("finite equilibria") {
  const double u1[3] = {3, 2, 1};
  const double u2[3] = {1, 2, 3};
  size_t lex = 99;
  uint32_t mask = 0;
  REQUIRE(cmp_finite_spne(3, u1, u2, nullptr, &lex, &mask) == CMP_OK);
  CHECK(lex == 1);
  CHECK(mask == 2u);

  double big[30] = {0};
  CHECK(cmp_finite_spne(30, big, big, nullptr, &lex, nullptr) == CMP_ERR_CAPACITY);
  const double neg[3] = {1, -1, 1};
  CHECK(cmp_finite_spne(3, u1, u2, neg, &lex, nullptr) == CMP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("null handles") {
  CHECK(cmp_solve(nullptr, nullptr) == CMP_ERR_INVALID_ARGUMENT);
  cmp_report_free(nullptr);
  cmp_config_free(nullptr);
}
