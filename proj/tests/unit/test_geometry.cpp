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

#include <cmath>
#include <numeric>

#include "core/error.hpp"
#include "core/geometry.hpp"

using namespace compromise;

namespace {

double grid_total(const std::vector<GridCell>& cells) {
  double s = 0.0;
  for (const auto& c : cells) s += c.weight;
  return s;
}

}  // namespace

TEST_CASE("chart volumes and totals") {
  CHECK(PolicySpace::interval(0, 1).chart_volume() == doctest::Approx(1.0));
  CHECK(PolicySpace::box({{0, 2}, {0, 1}}).chart_volume() ==
        doctest::Approx(2.0));
  CHECK(PolicySpace::unit_triangle().chart_volume() == doctest::Approx(0.5));
  CHECK(PolicySpace::probability_simplex(3).chart_volume() ==
        doctest::Approx(0.5));
  CHECK(PolicySpace::probability_simplex(4).chart_volume() ==
        doctest::Approx(1.0 / 6.0));

  const auto box = PolicySpace::box({{0, 2}, {0, 1}});
  CHECK(total_measure(box, MeasureSpec::lebesgue_raw()) == doctest::Approx(2.0));
  CHECK(total_measure(box, MeasureSpec::lebesgue_normalized()) ==
        doctest::Approx(1.0));
  CHECK(total_measure(box, MeasureSpec::lebesgue_raw().scaled(3.0)) ==
        doctest::Approx(6.0));
}

TEST_CASE("embedding coordinates") {
  const auto simplex = PolicySpace::probability_simplex(3);
  CHECK(simplex.embed_dim() == 3);
  const std::vector<double> chart{0.2, 0.3};
  const Point p = simplex.embed(chart);
  REQUIRE(p.dim() == 3);
  CHECK(p[2] == doctest::Approx(0.5));
  CHECK(simplex.chart_of(p) == chart);

  const auto budget = PolicySpace::budget_surface();
  CHECK(budget.embed_dim() == 3);
  CHECK(budget.embed(std::vector<double>{0.25, 0.25})[2] ==
        doctest::Approx(0.5));
}

TEST_CASE("membership") {
  const auto tri = PolicySpace::unit_triangle();
  CHECK(contains(tri, Point{0.5, 0.5}));
  CHECK(contains(tri, Point{0.0, 0.0}));
  CHECK_FALSE(contains(tri, Point{0.6, 0.5}));
  CHECK_FALSE(contains(tri, Point{-0.1, 0.5}));
  CHECK_THROWS_AS(contains(tri, Point{0.5}), Error);

  const auto simplex = PolicySpace::probability_simplex(3);
  CHECK(contains(simplex, Point{0.2, 0.3, 0.5}));
  CHECK_FALSE(contains(simplex, Point{0.2, 0.3, 0.4}));
}

TEST_CASE("invalid spaces are rejected") {
  CHECK_THROWS_AS(PolicySpace::interval(1, 0), Error);
  CHECK_THROWS_AS(PolicySpace::box({}), Error);
  CHECK_THROWS_AS(PolicySpace::probability_simplex(1), Error);
  CHECK_THROWS_AS(MeasureSpec::lebesgue_raw().scaled(0.0), Error);
}

TEST_CASE("grid weights sum to the total measure") {
  const MeasureSpec raw = MeasureSpec::lebesgue_raw();
  for (const auto& space :
       {PolicySpace::interval(-1, 3), PolicySpace::box({{0, 2}, {0, 1}}),
        PolicySpace::unit_triangle(), PolicySpace::probability_simplex(4),
        PolicySpace::budget_surface()}) {
    for (std::size_t r : {7u, 40u}) {
      const auto cells = grid(space, raw, r);
      CHECK(grid_total(cells) == doctest::Approx(total_measure(space, raw)));
      for (const auto& c : cells) CHECK(contains(space, c.point));
    }
  }
}

TEST_CASE("density grids normalise to the integral") {
  const auto space = PolicySpace::interval(0, 1);
  const auto m = MeasureSpec::density([](const Point& p) { return 2.0 * p[0] + 0.5; });
  // integral of 2x + 1/2 over [0, 1]
  CHECK(total_measure(space, m) == doctest::Approx(1.5).epsilon(1e-4));
  const auto cells = grid(space, m, 200);
  CHECK(grid_total(cells) == doctest::Approx(total_measure(space, m)));
}

TEST_CASE("sampling is reproducible and uniform") {
  const auto tri = PolicySpace::unit_triangle();
  const auto m = MeasureSpec::lebesgue_raw();
  const auto a = sample(tri, m, 42, 1000);
  const auto b = sample(tri, m, 42, 1000);
  const auto c = sample(tri, m, 43, 1000);
  CHECK(a == b);
  CHECK_FALSE(a == c);

  const auto big = sample(tri, m, 1, 200000);
  double mean_x = 0.0;
  for (const auto& p : big) {
    CHECK(contains(tri, p));
    mean_x += p[0];
  }
  mean_x /= static_cast<double>(big.size());
  // E[x] = 1/3 on the triangle; sd of x is sqrt(1/18), so 5 sigma ~ 0.0027.
  CHECK(std::abs(mean_x - 1.0 / 3.0) < 0.003);
}

TEST_CASE("density sampling follows the weight") {
  const auto space = PolicySpace::interval(0, 1);
  const auto m = MeasureSpec::density([](const Point& p) { return p[0] + 1e-3; });
  const auto pts = sample(space, m, 5, 100000);
  double mean = 0.0;
  for (const auto& p : pts) mean += p[0];
  mean /= static_cast<double>(pts.size());
  CHECK(mean == doctest::Approx(2.0 / 3.0).epsilon(0.01));
}

TEST_CASE("distance") {
  CHECK(distance(Point{0, 0}, Point{3, 4}) == doctest::Approx(5.0));
  CHECK_THROWS_AS(distance(Point{0}, Point{0, 1}), Error);
}
