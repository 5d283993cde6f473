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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "core/error.hpp"
#include "core/solver.hpp"

using namespace compromise;

namespace {

using Fn = std::function<double(double)>;

Problem interval_problem(Preference a, Preference b) {
  return Problem{PolicySpace::interval(0, 1), MeasureSpec::lebesgue_normalized(),
                 std::move(a), std::move(b), {}, SearchDomain::kFull};
}

Problem ex1() {
  return interval_problem(
      Preference::piecewise_linear({{0, 0.9}, {0.1, 1}, {1, 0.1}}),
      Preference::piecewise_linear({{0, 0}, {0.5, 1}, {1, 0.5}}));
}
Problem ex2() {
  return interval_problem(
      Preference::piecewise_linear({{0, 1.0 / 3.0}, {0.5, 0}, {1, 1}}),
      Preference::piecewise_linear({{0, 1}, {2.0 / 3.0, 1.0 / 6.0}, {1, 0}}));
}
Problem ex3() {
  return interval_problem(Preference::piecewise_linear({{0, 1}, {0.5, 0}, {1, 1}}),
                          Preference::piecewise_linear({{0, 0}, {0.5, 1}, {1, 0}}));
}

// Brute-force max-min: contour lengths from a sorted lattice of utilities,
// scanned over candidate points. Returns the clustered maximisers.
struct BruteResult {
  double value;
  std::vector<double> argmax;
};

BruteResult brute_maxmin(const Fn& u1, const Fn& u2) {
  const int n = 100000;
  std::vector<double> s1(n), s2(n);
  for (int i = 0; i < n; ++i) {
    const double y = (i + 0.5) / n;
    s1[i] = u1(y);
    s2[i] = u2(y);
  }
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  const auto m = [&](const std::vector<double>& s, double level) {
    return static_cast<double>(std::upper_bound(s.begin(), s.end(), level + 1e-12) -
                               s.begin()) / n;
  };
  const int c = 20000;
  std::vector<double> f(c + 1);
  double best = -1.0;
  for (int i = 0; i <= c; ++i) {
    const double x = static_cast<double>(i) / c;
    f[i] = std::min(m(s1, u1(x)), m(s2, u2(x)));
    best = std::max(best, f[i]);
  }
  BruteResult r{best, {}};
  double last = -1.0;
  for (int i = 0; i <= c; ++i) {
    const double x = static_cast<double>(i) / c;
    if (f[i] >= best - 2e-4) {
      if (r.argmax.empty() || x - last > 0.01) r.argmax.push_back(x);
      last = x;
    }
  }
  return r;
}

double pwl(const std::vector<std::pair<double, double>>& k, double x) {
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (x <= k[i].first) {
      const double t = (x - k[i - 1].first) / (k[i].first - k[i - 1].first);
      return k[i - 1].second + t * (k[i].second - k[i - 1].second);
    }
  }
  return k.back().second;
}

}  // namespace

TEST_CASE("Ex1: a single regular compromise") {
  const auto r = solve_maxmin_grid(ex1(), 4000, 3);
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0][0] == doctest::Approx(0.375).epsilon(1e-3));
  CHECK(r.value == doctest::Approx(0.625).epsilon(2e-3));
  CHECK(r.measures[0].first == doctest::Approx(0.625).epsilon(2e-3));
  CHECK(r.measures[0].second == doctest::Approx(0.625).epsilon(2e-3));
  CHECK(r.regular_ok);
  CHECK(r.pareto_ok);
  CHECK(r.backend == Backend::kExact);

  const auto oracle = brute_maxmin(
      [](double x) { return pwl({{0, 0.9}, {0.1, 1}, {1, 0.1}}, x); },
      [](double x) { return pwl({{0, 0}, {0.5, 1}, {1, 0.5}}, x); });
  REQUIRE(oracle.argmax.size() == 1);
  CHECK(std::abs(r.solutions[0][0] - oracle.argmax[0]) < 1e-3);
  CHECK(r.value == doctest::Approx(oracle.value).epsilon(1e-3));
}

TEST_CASE("Ex2: the optimum has unequal measures") {
  const auto r = solve_maxmin_grid(ex2(), 4000, 3);
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0][0] == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(r.measures[0].first == doctest::Approx(2.0 / 3.0).epsilon(2e-3));
  CHECK(r.measures[0].second == doctest::Approx(1.0).epsilon(2e-3));
  CHECK_FALSE(r.regular_ok);
  CHECK(r.pareto_ok);

  const auto oracle = brute_maxmin(
      [](double x) { return pwl({{0, 1.0 / 3.0}, {0.5, 0}, {1, 1}}, x); },
      [](double x) { return pwl({{0, 1}, {2.0 / 3.0, 1.0 / 6.0}, {1, 0}}, x); });
  REQUIRE(oracle.argmax.size() == 1);
  CHECK(oracle.argmax[0] < 1e-3);
}

TEST_CASE("Ex3: two compromises with equal measures") {
  const auto r = solve_maxmin_grid(ex3(), 4000, 3);
  REQUIRE(r.solutions.size() == 2);
  CHECK(r.solutions[0][0] == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(r.solutions[1][0] == doctest::Approx(0.75).epsilon(1e-3));
  CHECK(r.value == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(r.indifferent);
  CHECK(r.regular_ok);

  const auto oracle = brute_maxmin(
      [](double x) { return std::abs(2.0 * x - 1.0); },
      [](double x) { return 1.0 - std::abs(2.0 * x - 1.0); });
  REQUIRE(oracle.argmax.size() == 2);
  CHECK(std::abs(r.solutions[0][0] - oracle.argmax[0]) < 1e-3);
  CHECK(std::abs(r.solutions[1][0] - oracle.argmax[1]) < 1e-3);
}

TEST_CASE("Maskin's Euclidean example") {
  const auto p = interval_problem(Preference::euclidean(Point{0.0}),
                                  Preference::euclidean(Point{0.5}));
  const auto r = solve_maxmin_grid(p, 2000, 3);
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0][0] == doctest::Approx(1.0 / 3.0).epsilon(1e-3));

  // Closed-form contour lengths on [0, 1/2]: 1 - x and 2x.
  const double x = solve_equalize_1d([](double t) { return 2.0 * t; },
                                     [](double t) { return 1.0 - t; }, 1e-12, 0.0, 0.5);
  CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  const auto same = interval_problem(Preference::euclidean(Point{0.0}),
                                     Preference::euclidean(Point{0.0}));
  const auto rs = solve_maxmin_grid(same, 1000, 3);
  REQUIRE(rs.solutions.size() == 1);
  CHECK(rs.solutions[0][0] == doctest::Approx(0.0).epsilon(2e-3));
}

TEST_CASE("equalize: monotonicity and bracketing") {
  try {
    solve_equalize_1d([](double t) { return std::sin(12.0 * t); },
                      [](double t) { return 1.0 - t; }, 1e-9);
    FAIL("expected kNotMonotone");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotMonotone);
  }
  try {
    solve_equalize_1d([](double t) { return t; }, [](double t) { return 3.0 - t; }, 1e-9);
    FAIL("expected kDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomain);
  }
}

TEST_CASE("Fehr-Schmidt equal-area shares") {
  CHECK(solve_equalize_fs({0.533, 0.326, 1}, {0.533, 0.326, 2}) ==
        doctest::Approx(0.5).epsilon(1e-9));
  // The player with the stronger guilt term accepts the smaller share.
  const double x = solve_equalize_fs({0.533, 0.4, 1}, {0.533, 0.2, 2});
  CHECK(x < 0.5);
  const double flip = solve_equalize_fs({0.533, 0.2, 1}, {0.533, 0.4, 2});
  CHECK(flip == doctest::Approx(1.0 - x).epsilon(1e-9));

  // Grid max-min on the full triangle picks the same split.
  Problem p{PolicySpace::unit_triangle(), MeasureSpec::lebesgue_raw(),
            Preference::fehr_schmidt(0.533, 0.4, 1),
            Preference::fehr_schmidt(0.533, 0.2, 2), {}, SearchDomain::kFull};
  p.contour.resolution = 800;
  const auto r = solve_maxmin_grid(p, 200, 3);
  REQUIRE(!r.solutions.empty());
  CHECK(r.solutions[0][0] + r.solutions[0][1] == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(std::abs(r.solutions[0][0] - x) < 2e-2);
}

TEST_CASE("public good on the Pareto line") {
  for (double theta : {0.1, 0.2, 0.3}) {
    Problem p{PolicySpace::budget_surface(), MeasureSpec::lebesgue_raw(),
              Preference::public_good_log(theta, 1),
              Preference::public_good_log(theta, 2), {}, SearchDomain::kParetoLine};
    const auto [x1, x2] = solve_pareto_line(p);
    CHECK(x1 == doctest::Approx(0.5 - theta).epsilon(1e-9));
    CHECK(x2 == doctest::Approx(0.5 - theta).epsilon(1e-9));
  }
  Problem a{PolicySpace::budget_surface(), MeasureSpec::lebesgue_raw(),
            Preference::public_good_log(0.3, 1),
            Preference::public_good_log(0.2, 2), {}, SearchDomain::kParetoLine};
  const auto [x1, x2] = solve_pareto_line(a);
  CHECK(x1 < x2);
  CHECK(x1 + x2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(phi(x1, 0.3, 0.5) == doctest::Approx(phi(x2, 0.2, 0.5)).epsilon(1e-9));

  const auto r = solve_maxmin_grid(a, 1000, 3);
  REQUIRE(r.solutions.size() == 1);
  CHECK(std::abs(r.solutions[0][0] - x1) < 1e-2);
}

TEST_CASE("a small public good reverses the share ordering") {
  // Above the efficient level a larger theta shrinks the lower contour set,
  // which dominates when theta1 + theta2 is small.
  Problem p{PolicySpace::budget_surface(), MeasureSpec::lebesgue_raw(),
            Preference::public_good_log(0.121, 1),
            Preference::public_good_log(0.028, 2), {}, SearchDomain::kParetoLine};
  const auto [x1, x2] = solve_pareto_line(p);
  CHECK(x1 > x2);
  const double K = 0.149;
  CHECK(phi(x1, 0.121, K) == doctest::Approx(phi(x2, 0.028, K)).epsilon(1e-9));
  const double split = (1.0 - K) / 2.0;
  CHECK(phi(split, 0.121, K) < phi(split, 0.028, K));
}

TEST_CASE("facility location in a rectangle") {
  // Ideal i1 sits on the top edge; a disk of radius r1 about it is cut in
  // half, the one of radius r2 about i2 lies inside. Equal areas
  // pi r1^2 / 2 = pi r2^2 with r1 + r2 = |i1 - i2| puts x* on the segment.
  const double s = 0.25 + 0.25 / std::numbers::sqrt2;
  const Point i1{1.0, 1.0};
  const Point i2{1.0 + s, 1.0 - s};
  const double c = distance(i1, i2);
  const double r2 = c / (1.0 + std::numbers::sqrt2);
  const double r1 = std::numbers::sqrt2 * r2;
  const Point want{1.0 + r1 / std::numbers::sqrt2, 1.0 - r1 / std::numbers::sqrt2};

  Problem p{PolicySpace::box({{0, 2}, {0, 1}}), MeasureSpec::lebesgue_raw(),
            Preference::euclidean(i1), Preference::euclidean(i2), {},
            SearchDomain::kFull};
  p.contour.backend = Backend::kGrid;
  p.contour.resolution = 800;
  const auto r = solve_maxmin_grid(p, 100, 3);
  REQUIRE(r.solutions.size() == 1);
  CHECK(distance(r.solutions[0], want) < 5e-3);
  CHECK(want[0] == doctest::Approx(1.25));
  CHECK(want[1] == doctest::Approx(0.75));
  // Upper contour areas are pi r^2 / 2 and pi r^2.
  const double total = 2.0;
  CHECK(total - r.measures[0].first ==
        doctest::Approx(std::numbers::pi * r1 * r1 / 2.0).epsilon(2e-2));
  CHECK(total - r.measures[0].second ==
        doctest::Approx(std::numbers::pi * r2 * r2).epsilon(2e-2));
}

TEST_CASE("lottery over three outcomes") {
  Problem p{PolicySpace::probability_simplex(3), MeasureSpec::lebesgue_raw(),
            Preference::linear_vnm({1, 0.3, 0}), Preference::linear_vnm({0, 0.3, 1}),
            {}, SearchDomain::kFull};
  p.contour.backend = Backend::kGrid;
  const auto r = solve_maxmin_grid(p, 200, 3);
  REQUIRE(r.solutions.size() == 1);
  // Swapping a and c swaps the agents, so the compromise is symmetric.
  CHECK(r.solutions[0][0] == doctest::Approx(r.solutions[0][2]).epsilon(1e-2));
  CHECK(r.solutions[0][1] < 1e-2);
}

TEST_CASE("verification") {
  const auto p = ex1();
  const auto good = verify_compromise(p, Point{0.375}, 1e-3);
  CHECK(good.passed());
  const auto off = verify_compromise(p, Point{0.5}, 1e-3);
  CHECK_FALSE(off.equal_measures);
  CHECK_FALSE(off.passed());

  const auto v2 = verify_compromise(ex2(), Point{0.0}, 1e-3);
  CHECK_FALSE(v2.equal_measures);
  CHECK(v2.pareto_ok);
  CHECK(v2.min_bound);
}

TEST_CASE("rescaling the measure scales the value only") {
  auto p = ex1();
  const auto base = solve_maxmin_grid(p, 2000, 3);
  p.measure = p.measure.scaled(3.7);
  const auto scaled = solve_maxmin_grid(p, 2000, 3);
  REQUIRE(base.solutions.size() == scaled.solutions.size());
  CHECK(scaled.solutions[0][0] == doctest::Approx(base.solutions[0][0]).epsilon(1e-9));
  CHECK(scaled.value == doctest::Approx(3.7 * base.value).epsilon(1e-9));
}

TEST_CASE("contour measures are monotone and Lipschitz") {
  struct Case {
    Problem p;
    double lipschitz;
  };
  std::vector<Case> cases{{ex1(), 3.0}, {ex2(), 4.0}, {ex3(), 2.0}};
  for (const auto& c : cases) {
    const ContourOracle o(c.p);
    for (int agent : {1, 2}) {
      const Preference& u = agent == 1 ? c.p.pref1 : c.p.pref2;
      double prev = o.measure(agent, Point{0.0});
      for (int i = 1; i <= 1000; ++i) {
        const Point x{i / 1000.0};
        const double m = o.measure(agent, x);
        CHECK(std::abs(m - prev) <= c.lipschitz / 1000.0 + 1e-12);
        prev = m;
        // y in L(x) implies L(y) is inside L(x).
        const Point y{std::fmod(i * 0.618034, 1.0)};
        if (u.utility(y) <= u.utility(x)) CHECK(o.measure(agent, y) <= m + 1e-12);
      }
    }
  }
}

TEST_CASE("backend selection and validation") {
  Problem fs{PolicySpace::unit_triangle(), MeasureSpec::lebesgue_raw(),
             Preference::fehr_schmidt(0.5, 0.2, 1),
             Preference::fehr_schmidt(0.5, 0.2, 2), {}, SearchDomain::kFull};
  CHECK(resolve_backend(fs) == Backend::kGrid);
  fs.contour.backend = Backend::kExact;
  try {
    resolve_backend(fs);
    FAIL("expected kConfig");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
  }
  fs.search = SearchDomain::kParetoLine;
  CHECK(resolve_backend(fs) == Backend::kExact);
  CHECK(resolve_backend(ex1()) == Backend::kExact);

  const auto bad = interval_problem(Preference::euclidean(Point{0, 0}),
                                    Preference::euclidean(Point{0.5}));
  CHECK_THROWS_AS(validate(bad), Error);
}
