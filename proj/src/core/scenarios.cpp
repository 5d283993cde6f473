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

#include "core/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "core/contour.hpp"
#include "core/error.hpp"

namespace compromise {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Problem interval_problem(Preference a, Preference b) {
  return {PolicySpace::interval(0.0, 1.0), MeasureSpec::lebesgue_normalized(),
          std::move(a), std::move(b), {}, SearchDomain::kFull};
}

Problem ex1_problem() {
  return interval_problem(
      Preference::piecewise_linear({{0.0, 0.9}, {0.1, 1.0}, {1.0, 0.1}}),
      Preference::piecewise_linear({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.5}}));
}

Problem ex2_problem() {
  return interval_problem(
      Preference::piecewise_linear({{0.0, 1.0 / 3.0}, {0.5, 0.0}, {1.0, 1.0}}),
      Preference::piecewise_linear({{0.0, 1.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0, 0.0}}));
}

Problem ex3_problem() {
  return interval_problem(
      Preference::piecewise_linear({{0.0, 1.0}, {0.5, 0.0}, {1.0, 1.0}}),
      Preference::piecewise_linear({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}}));
}

Problem maskin_problem(double ideal2) {
  return interval_problem(Preference::euclidean({0.0}),
                          Preference::euclidean({ideal2}));
}

Problem public_good_problem(double theta1, double theta2) {
  Problem p{PolicySpace::budget_surface(), MeasureSpec::lebesgue_raw(),
            Preference::public_good_log(theta1, 1),
            Preference::public_good_log(theta2, 2), {}, SearchDomain::kParetoLine};
  p.contour.backend = Backend::kExact;
  return p;
}

Problem fehr_schmidt_problem(double a1, double b1, double a2, double b2) {
  Problem p{PolicySpace::unit_triangle(), MeasureSpec::lebesgue_raw(),
            Preference::fehr_schmidt(a1, b1, 1),
            Preference::fehr_schmidt(a2, b2, 2), {}, SearchDomain::kParetoLine};
  p.contour.backend = Backend::kExact;
  return p;
}

// Ideal points of the facility problem: i2 sits at distance c from i1 along
// the diagonal direction (1, -1) / sqrt(2).
constexpr double kFacilityC = std::numbers::sqrt2 / 4.0 + 0.25;

Problem facility_problem() {
  const double s = kFacilityC / std::numbers::sqrt2;
  Problem p{PolicySpace::box({{0.0, 2.0}, {0.0, 1.0}}), MeasureSpec::lebesgue_raw(),
            Preference::euclidean({1.0, 1.0}),
            Preference::euclidean({1.0 + s, 1.0 - s}), {}, SearchDomain::kFull};
  p.contour.backend = Backend::kGrid;
  p.contour.resolution = 800;
  return p;
}

Problem lottery_problem() {
  Problem p{PolicySpace::probability_simplex(3), MeasureSpec::lebesgue_normalized(),
            Preference::linear_vnm({1.0, 0.3, 0.0}),
            Preference::linear_vnm({0.0, 0.3, 1.0}), {}, SearchDomain::kFull};
  p.contour.backend = Backend::kGrid;
  p.contour.resolution = 1000;
  return p;
}

SolveOptions options_for(const ScenarioOverrides& o, std::size_t resolution) {
  SolveOptions s;
  s.resolution = o.resolution.value_or(resolution);
  s.seed = o.seed.value_or(0);
  return s;
}

Measured measure_ex1(const ScenarioOverrides& o) {
  const auto r = solve_maxmin_grid(ex1_problem(), options_for(o, 4000));
  return {{"solution_count", static_cast<double>(r.solutions.size())},
          {"x_star", r.solutions[0][0]},
          {"m1", r.measures[0].first},
          {"m2", r.measures[0].second},
          {"regular", r.regular_ok ? 1.0 : 0.0},
          {"pareto", r.pareto_ok ? 1.0 : 0.0}};
}

Measured measure_ex2(const ScenarioOverrides& o) {
  const auto r = solve_maxmin_grid(ex2_problem(), options_for(o, 4000));
  return {{"solution_count", static_cast<double>(r.solutions.size())},
          {"x_star", r.solutions[0][0]},
          {"m1", r.measures[0].first},
          {"m2", r.measures[0].second},
          {"non_regular", r.regular_ok ? 0.0 : 1.0},
          {"pareto", r.pareto_ok ? 1.0 : 0.0}};
}

Measured measure_ex3(const ScenarioOverrides& o) {
  const Problem p = ex3_problem();
  const auto r = solve_maxmin_grid(p, options_for(o, 4000));
  Measured m{{"solution_count", static_cast<double>(r.solutions.size())},
             {"value", r.value}};
  if (r.solutions.size() == 2) {
    m["x_star_1"] = r.solutions[0][0];
    m["x_star_2"] = r.solutions[1][0];
    m["m1_spread"] = std::abs(r.measures[0].first - r.measures[1].first);
    m["m2_spread"] = std::abs(r.measures[0].second - r.measures[1].second);
  }
  return m;
}

Measured measure_maskin(const ScenarioOverrides& o) {
  const auto a = solve_maxmin_grid(maskin_problem(1.0), options_for(o, 4000));
  const auto b = solve_maxmin_grid(maskin_problem(0.5), options_for(o, 4000));
  // On [0, 1/2] the centrist's measure 1 - 2|x - 1/2| increases and the
  // left agent's 1 - x decreases.
  const double eq = solve_equalize_1d(
      [](double x) { return 1.0 - 2.0 * std::abs(x - 0.5); },
      [](double x) { return 1.0 - x; }, 1e-12, 0.0, 0.5);
  return {{"symmetric_x_star", a.solutions[0][0]},
          {"symmetric_count", static_cast<double>(a.solutions.size())},
          {"shifted_x_star", b.solutions[0][0]},
          {"shifted_value", b.value},
          {"shifted_equalize_x_star", eq}};
}

Measured measure_pg_symmetric(const ScenarioOverrides&) {
  Measured m;
  for (double theta : {0.1, 0.2, 0.3}) {
    const auto [x1, x2] = solve_pareto_line(public_good_problem(theta, theta));
    char key[32];
    std::snprintf(key, sizeof key, "x1_theta_%.1f", theta);
    m[key] = x1;
    std::snprintf(key, sizeof key, "x2_theta_%.1f", theta);
    m[key] = x2;
  }
  return m;
}

Measured measure_pg_asymmetric(const ScenarioOverrides& o) {
  const Problem p = public_good_problem(0.3, 0.2);
  const auto [x1, x2] = solve_pareto_line(p);
  const auto r = solve_maxmin_grid(p, options_for(o, 400));
  const double K = 0.5;
  return {{"x1_below_x2", x1 < x2 ? 1.0 : 0.0},
          {"share_sum", x1 + x2},
          {"phi_gap", phi(x1, 0.3, K) - phi(x2, 0.2, K)},
          {"grid_vs_line", std::abs(r.solutions[0][0] - x1)}};
}

Measured measure_fehr_schmidt(const ScenarioOverrides& o) {
  const double alpha = 0.533, beta = 0.326;
  const Problem sym = fehr_schmidt_problem(alpha, beta, alpha, beta);
  const auto rs = solve_maxmin_grid(sym, options_for(o, 400));
  const double eq_sym = solve_equalize_fs(*sym.pref1.as<FehrSchmidt>(),
                                          *sym.pref2.as<FehrSchmidt>());
  const Problem asym = fehr_schmidt_problem(alpha, 0.4, alpha, 0.2);
  const auto ra = solve_maxmin_grid(asym, options_for(o, 400));
  const double eq_asym = solve_equalize_fs(*asym.pref1.as<FehrSchmidt>(),
                                           *asym.pref2.as<FehrSchmidt>());
  const double res = static_cast<double>(options_for(o, 400).resolution);
  return {{"symmetric_x_star", rs.solutions[0][0]},
          {"symmetric_equalize", eq_sym},
          {"half_measure", lower_measure_fs(*sym.pref1.as<FehrSchmidt>(), 0.5)},
          {"asymmetric_below_half", eq_asym < 0.5 ? 1.0 : 0.0},
          {"asymmetric_grid_agrees",
           std::abs(ra.solutions[0][0] - eq_asym) <= 2.0 / res ? 1.0 : 0.0}};
}

Measured measure_facility(const ScenarioOverrides& o) {
  const Problem p = facility_problem();
  const auto r = solve_maxmin_grid(p, options_for(o, 100));
  const Point& x = r.solutions[0];
  const double total = total_measure(p.space, p.measure);
  const double up1 = total - r.measures[0].first;
  const double up2 = total - r.measures[0].second;
  const auto& i1 = p.pref1.as<Euclidean>()->ideal;
  const auto& i2 = p.pref2.as<Euclidean>()->ideal;
  return {{"solution_count", static_cast<double>(r.solutions.size())},
          {"x_star_1", x[0]},
          {"x_star_2", x[1]},
          {"upper_area_1", up1},
          {"upper_area_2", up2},
          {"upper_area_gap", std::abs(up1 - up2)},
          {"radius_ratio", distance(x, i1) / distance(x, i2)}};
}

Measured measure_lottery(const ScenarioOverrides& o) {
  const auto r = solve_maxmin_grid(lottery_problem(), options_for(o, 200));
  const Point& x = r.solutions[0];
  return {{"solution_count", static_cast<double>(r.solutions.size())},
          {"p_a", x[0]},
          {"p_b", x[1]},
          {"p_c", x[2]}};
}

std::vector<Scenario> build_registry() {
  const double pi16 = std::numbers::pi / 16.0;
  std::vector<Scenario> v;
  v.push_back({"ex1_single_peaked",
               "single-peaked utilities on [0,1]; regular, unique compromise",
               true, ex1_problem,
               {{"solution_count", 1, 0.5, "analytic"},
                {"x_star", 0.375, 1e-3, "analytic"},
                {"m1", 0.625, 2e-3, "analytic"},
                {"m2", 0.625, 2e-3, "analytic"},
                {"regular", 1, 0.5, "analytic"},
                {"pareto", 1, 0.5, "analytic"}},
               measure_ex1});
  v.push_back({"ex2_non_regular",
               "agent 2's utility peaks at 0; measures stay unequal", false,
               ex2_problem,
               {{"solution_count", 1, 0.5, "analytic"},
                {"x_star", 0.0, 1e-3, "analytic"},
                {"m1", 2.0 / 3.0, 2e-3, "analytic"},
                {"m2", 1.0, 2e-3, "analytic"},
                {"non_regular", 1, 0.5, "analytic"},
                {"pareto", 1, 0.5, "analytic"}},
               measure_ex2});
  v.push_back({"ex3_two_compromises",
               "mirror-image tent utilities; two compromises", true, ex3_problem,
               {{"solution_count", 2, 0.5, "analytic"},
                {"x_star_1", 0.25, 1e-3, "analytic"},
                {"x_star_2", 0.75, 1e-3, "analytic"},
                {"value", 0.5, 2e-3, "analytic"},
                {"m1_spread", 0.0, 1e-3, "analytic"},
                {"m2_spread", 0.0, 1e-3, "analytic"}},
               measure_ex3});
  v.push_back({"maskin_euclidean",
               "Euclidean agents with ideals (0,1), then (0,1/2)", true,
               [] { return maskin_problem(0.5); },
               {{"symmetric_x_star", 0.5, 1e-3, "identity"},
                {"symmetric_count", 1, 0.5, "identity"},
                {"shifted_x_star", 1.0 / 3.0, 1e-3, "analytic"},
                {"shifted_value", 2.0 / 3.0, 2e-3, "analytic"},
                {"shifted_equalize_x_star", 1.0 / 3.0, 1e-9, "derived"}},
               measure_maskin});
  v.push_back({"public_good_symmetric",
               "log public good with equal tastes splits the private budget",
               true, [] { return public_good_problem(0.2, 0.2); },
               {{"x1_theta_0.1", 0.4, 1e-6, "analytic"},
                {"x2_theta_0.1", 0.4, 1e-6, "analytic"},
                {"x1_theta_0.2", 0.3, 1e-6, "analytic"},
                {"x2_theta_0.2", 0.3, 1e-6, "analytic"},
                {"x1_theta_0.3", 0.2, 1e-6, "analytic"},
                {"x2_theta_0.3", 0.2, 1e-6, "analytic"}},
               measure_pg_symmetric});
  v.push_back({"public_good_asymmetric",
               "log public good, theta = (0.3, 0.2)", true,
               [] { return public_good_problem(0.3, 0.2); },
               {{"x1_below_x2", 1, 0.5, "analytic"},
                {"share_sum", 0.5, 1e-12, "identity"},
                {"phi_gap", 0.0, 1e-8, "derived"},
                {"grid_vs_line", 0.0, 1e-2, "derived"}},
               measure_pg_asymmetric});
  v.push_back({"fehr_schmidt_grid",
               "inequity-averse players splitting a unit budget", true,
               [] { return fehr_schmidt_problem(0.533, 0.326, 0.533, 0.326); },
               {{"symmetric_x_star", 0.5, 5e-3, "analytic"},
                {"symmetric_equalize", 0.5, 1e-9, "analytic"},
                {"half_measure", (3.0 - 2.0 * 0.326) / (8.0 * (1.0 - 0.326)), 1e-12,
                 "analytic"},
                {"asymmetric_below_half", 1, 0.5, "analytic"},
                {"asymmetric_grid_agrees", 1, 0.5, "derived"}},
               measure_fehr_schmidt});
  v.push_back({"facility_rectangle",
               "Euclidean ideals on the box [0,2]x[0,1]", true, facility_problem,
               {{"solution_count", 1, 0.5, "derived"},
                {"x_star_1", 1.25, 5e-3, "derived"},
                {"x_star_2", 0.75, 5e-3, "derived"},
                {"upper_area_1", pi16, 1e-3, "derived"},
                {"upper_area_2", pi16, 1e-3, "derived"},
                {"upper_area_gap", 0.0, 1e-3, "derived"},
                {"radius_ratio", std::numbers::sqrt2, 1e-2, "analytic"}},
               measure_facility});
  v.push_back({"lottery_simplex",
               "linear expected utility over three outcomes, m = n = 0.3", true,
               lottery_problem,
               {{"solution_count", 1, 0.5, "identity"},
                {"p_a", 0.5, 5e-3, "identity"},
                {"p_b", 0.0, 5e-3, "analytic"},
                {"p_c", 0.5, 5e-3, "identity"}},
               measure_lottery});
  return v;
}

}  // namespace

const std::vector<Scenario>& scenario_registry() {
  static const std::vector<Scenario> registry = build_registry();
  return registry;
}

std::vector<std::string> list_scenarios() {
  std::vector<std::string> names;
  for (const auto& s : scenario_registry()) names.push_back(s.name);
  return names;
}

const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : scenario_registry()) {
    if (s.name == name) return s;
  }
  fail(ErrorCode::kNotFound, "unknown scenario '" + name + "'");
}

ScenarioReport run_scenario(const std::string& name,
                            const ScenarioOverrides& overrides) {
  const Scenario& s = find_scenario(name);
  const auto t0 = std::chrono::steady_clock::now();
  const Measured measured = s.measure(overrides);
  ScenarioReport rep;
  rep.name = s.name;
  rep.passed = true;
  for (const auto& e : s.expected) {
    const auto it = measured.find(e.quantity);
    const double m = it == measured.end() ? kNaN : it->second;
    const bool ok = std::abs(m - e.value) <= e.tol;
    rep.rows.push_back({e.quantity, m, e.value, e.tol, e.provenance, ok});
    rep.passed = rep.passed && ok;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace compromise
