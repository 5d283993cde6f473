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
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "core/error.hpp"
#include "core/mechanism.hpp"
#include "support/tree_oracle.hpp"

using namespace compromise;
using compromise::testing::Outcomes;
using compromise::testing::TreeOracle;

namespace {

double menu_mass(const FiniteProblem& fp, std::uint32_t m) {
  double s = 0.0;
  for (std::size_t i = 0; i < fp.size(); ++i) if ((m >> i) & 1u) s += fp.weights[i];
  return s;
}

Problem interval_problem(Preference a, Preference b) {
  return Problem{PolicySpace::interval(0, 1), MeasureSpec::lebesgue_normalized(),
                 std::move(a), std::move(b), {}, SearchDomain::kFull};
}

}  // namespace

TEST_CASE("menus and choices") {
  const auto fp = counting_problem({1, 3, 3, 0}, {0, 0, 1, 2});
  const Menu m = make_menu(fp, {2, 0, 2});
  CHECK(m.members == std::vector<std::size_t>{0, 2});
  CHECK(m.mass == doctest::Approx(2.0));
  const std::vector<std::size_t> all{0, 1, 2, 3};
  CHECK(best_choice(all, fp.u1) == 1);  // tie between 1 and 2 goes low
  CHECK(best_choice(all, fp.u2) == 3);
  CHECK_THROWS_AS(counting_problem({1}, {1}), Error);
}

TEST_CASE("exhaustive equilibria of a three-outcome game") {
  // Opposed rankings a > b > c and c > b > a.
  const auto fp = counting_problem({3, 2, 1}, {1, 2, 3});
  const auto r = spne_exhaustive(fp);
  CHECK(r.lex_outcome == 1);
  CHECK(r.outcomes == std::vector<std::size_t>{1});
}

TEST_CASE("aligned preferences lead to the common favourite") {
  const auto fp = counting_problem({0, 5, 2, 1}, {1, 9, 3, 0});
  const auto r = spne_exhaustive(fp);
  CHECK(r.outcomes == std::vector<std::size_t>{1});
  CHECK(r.lex_outcome == 1);
}

TEST_CASE("capacity limit") {
  std::vector<double> u(15);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<double>(i);
  try {
    spne_exhaustive(counting_problem(u, u));
    FAIL("expected kCapacity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapacity);
  }
}

TEST_CASE("exhaustive engine matches the explicit game tree") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> util(0, 3);
  std::uniform_int_distribution<int> weight(0, 3);
  std::uniform_int_distribution<int> size(2, 4);
  for (int draw = 0; draw < 200; ++draw) {
    const std::size_t n = static_cast<std::size_t>(size(rng));
    FiniteProblem fp;
    for (std::size_t i = 0; i < n; ++i) {
      fp.outcomes.push_back(Point{static_cast<double>(i)});
      fp.u1.push_back(util(rng));
      fp.u2.push_back(util(rng));
      fp.weights.push_back(weight(rng));
    }
    if (menu_mass(fp, (1u << n) - 1) == 0.0) fp.weights[0] = 1.0;

    const auto r = spne_exhaustive(fp);
    const Outcomes want = TreeOracle{fp, n}.root();
    const Outcomes got(r.outcomes.begin(), r.outcomes.end());
    CAPTURE(draw);
    CHECK(got == want);
    CHECK(want.count(r.lex_outcome) == 1);

    // The lexicographic path is a legal play.
    CHECK(r.lex_opening != 0u);
    if (r.lex_accepted) {
      CHECK(((r.lex_opening >> r.lex_outcome) & 1u) == 1u);
      CHECK(r.lex_counter == 0u);
    } else {
      CHECK(r.lex_counter != 0u);
      CHECK(menu_mass(fp, r.lex_counter) >= menu_mass(fp, r.lex_opening));
      CHECK(((r.lex_counter >> r.lex_outcome) & 1u) == 1u);
    }
    CHECK(r.lex_u1 == fp.u1[r.lex_outcome]);
    CHECK(r.lex_u2 == fp.u2[r.lex_outcome]);
  }
}

TEST_CASE("grid game menus") {
  FiniteProblem fp = counting_problem({0.1, 0.5, 0.3, 0.9}, {0.9, 0.2, 0.6, 0.1});
  fp.weights = {1.0, 2.0, 3.0, 4.0};
  const GridGame g(fp);

  const auto low = g.lower_set(1, 2);  // u1 <= 0.3: outcomes 0 and 2
  CHECK(g.mass(low) == doctest::Approx(4.0));
  CHECK(g.contains(low, 0));
  CHECK(g.contains(low, 2));
  CHECK_FALSE(g.contains(low, 1));
  CHECK(g.best(low, 1) == 2);
  CHECK(g.best(low, 2) == 0);

  const auto aug = g.augment(low, 3);
  CHECK(g.mass(aug) == doctest::Approx(8.0));
  CHECK(g.best(aug, 1) == 3);
  CHECK(g.materialize(aug).members == std::vector<std::size_t>{0, 2, 3});

  const auto one = g.singleton(1);
  CHECK(g.mass(one) == doctest::Approx(2.0));
  CHECK(g.materialize(one).members == std::vector<std::size_t>{1});

  // Trimming drops the apex band: at eps = 3 outcome 2 (weight 3) can go,
  // leaving outcome 0 and the apex itself.
  const auto t = g.trim(1, 2, 3.0);
  CHECK(g.contains(t, 2));
  CHECK(g.contains(t, 0));
  CHECK(g.best(t, 1) == 2);
}

TEST_CASE("counter table finds the best feasible counter") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  FiniteProblem fp;
  for (int i = 0; i < 30; ++i) {
    fp.outcomes.push_back(Point{static_cast<double>(i)});
    fp.u1.push_back(unif(rng));
    fp.u2.push_back(unif(rng));
    fp.weights.push_back(unif(rng));
  }
  const GridGame g(fp);
  const auto family = build_family(g, {0.5});
  const CounterTable ct(g, family);
  for (double thr : {0.0, 1.0, 5.0, 10.0, 14.0}) {
    double want = -1e300;
    for (const auto& m : family) {
      if (g.mass(m) >= thr - ct.slack()) want = std::max(want, fp.u2[g.best(m, 1)]);
    }
    const auto b = ct.best(thr);
    if (want > -1e300) {
      REQUIRE(b.found);
      CHECK(b.value == doctest::Approx(want));
      CHECK(g.mass(b.menu) >= thr - ct.slack());
    } else {
      CHECK_FALSE(b.found);
    }
  }
}

TEST_CASE("constructed equilibria are certified") {
  struct Case {
    const char* name;
    Problem p;
    double x;
    double mass;
  };
  std::vector<Case> cases{
      {"ex1",
       interval_problem(Preference::piecewise_linear({{0, 0.9}, {0.1, 1}, {1, 0.1}}),
                        Preference::piecewise_linear({{0, 0}, {0.5, 1}, {1, 0.5}})),
       0.375, 0.625},
      {"ex3",
       interval_problem(Preference::piecewise_linear({{0, 1}, {0.5, 0}, {1, 1}}),
                        Preference::piecewise_linear({{0, 0}, {0.5, 1}, {1, 0}})),
       0.25, 0.5},
      {"maskin", interval_problem(Preference::euclidean(Point{0.0}),
                                  Preference::euclidean(Point{1.0})),
       0.5, 0.5},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const auto cg = build_continuum_game(c.p, Point{c.x}, 400);
    const auto prof = construct_equilibrium(cg);
    CHECK(cg.game.mass(prof.opening) == doctest::Approx(c.mass).epsilon(0.005));
    CHECK(cg.game.contains(prof.opening, cg.x_star));
    // Every opening member is no better than x* for player 2.
    const auto& fp = cg.game.problem();
    for (auto i : cg.game.materialize(prof.opening).members) {
      CHECK(fp.u2[i] <= fp.u2[cg.x_star] + 1e-12);
    }
    const double tol = 5.0 * cg.cell_weight;
    const auto d = check_deviations(cg.game, cg.counters, cg.family, prof, tol);
    CHECK(d.feasible);
    CHECK(d.certificate);
    CHECK(d.outcome == cg.x_star);
  }
}

TEST_CASE("a bad profile is caught") {
  const auto p = interval_problem(
      Preference::piecewise_linear({{0, 0.9}, {0.1, 1}, {1, 0.1}}),
      Preference::piecewise_linear({{0, 0}, {0.5, 1}, {1, 0.5}}));
  const auto cg = build_continuum_game(p, Point{0.375}, 400);
  const double tol = 5.0 * cg.cell_weight;
  // Opening with the singleton {x*} and accepting it: player 2 gains by
  // countering with a heavier menu.
  const auto single = make_profile(cg.game, cg.counters, cg.game.singleton(cg.x_star),
                                   cg.x_star);
  const auto d = check_deviations(cg.game, cg.counters, cg.family, single, tol);
  CHECK_FALSE(d.certificate);
  CHECK(d.max_gain_p2 > tol);
}

TEST_CASE("non-regular problems have no equilibrium at x*") {
  const auto p = interval_problem(
      Preference::piecewise_linear({{0, 1.0 / 3.0}, {0.5, 0}, {1, 1}}),
      Preference::piecewise_linear({{0, 1}, {2.0 / 3.0, 1.0 / 6.0}, {1, 0}}));
  const auto cg = build_continuum_game(p, Point{0.0}, 400);
  try {
    construct_equilibrium(cg);
    FAIL("expected kNonRegular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonRegular);
  }
}

TEST_CASE("finite games approach the compromise") {
  const auto ex1 = interval_problem(
      Preference::piecewise_linear({{0, 0.9}, {0.1, 1}, {1, 0.1}}),
      Preference::piecewise_linear({{0, 0}, {0.5, 1}, {1, 0.5}}));
  const auto rows = refine_and_compare(ex1, {9, 11, 13}, {Point{0.375}},
                                       MechanismMode::kExhaustive);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.distance < 1.0 / static_cast<double>(r.resolution));

  const auto ex3 = interval_problem(
      Preference::piecewise_linear({{0, 1}, {0.5, 0}, {1, 1}}),
      Preference::piecewise_linear({{0, 0}, {0.5, 1}, {1, 0}}));
  const auto rows3 = refine_and_compare(ex3, {9, 13}, {Point{0.25}, Point{0.75}},
                                        MechanismMode::kExhaustive);
  for (const auto& r : rows3) CHECK(r.distance < 1.0 / static_cast<double>(r.resolution));

  const auto fam = refine_and_compare(ex1, {200, 400}, {Point{0.375}},
                                      MechanismMode::kFamily);
  for (const auto& r : fam) CHECK(r.distance < 0.02);

  const auto aligned = interval_problem(Preference::euclidean(Point{0.2}),
                                        Preference::euclidean(Point{0.2}));
  const auto al = refine_and_compare(aligned, {9}, {Point{0.2}}, MechanismMode::kExhaustive);
  CHECK(al[0].distance < 1.0 / 9.0);
}
