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

// The multimatum game form. Player 1 offers a nonempty menu A1. Player 2
// either accepts an element of A1 or counters with a menu A2 whose mass is at
// least mass(A1), and player 1 then picks from A2.
//
// Two engines live here: exhaustive backward induction over every subset of
// a small finite outcome set, and a grid engine that checks a given strategy
// profile against deviations drawn from a structured family of menus.

#ifndef COMPROMISE_CORE_MECHANISM_HPP_
#define COMPROMISE_CORE_MECHANISM_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "core/geometry.hpp"
#include "core/solver.hpp"

namespace compromise {

struct FiniteProblem {
  std::vector<Point> outcomes;
  std::vector<double> u1;
  std::vector<double> u2;
  std::vector<double> weights;

  std::size_t size() const { return u1.size(); }
  const std::vector<double>& utility(int player) const {
    return player == 1 ? u1 : u2;
  }
};

// Throws kInvalidArgument unless there are >= 2 outcomes, finite utilities
// and nonnegative weights.
void validate(const FiniteProblem& fp);

// Counting measure over n outcomes with the given utilities.
FiniteProblem counting_problem(std::vector<double> u1, std::vector<double> u2);

struct Menu {
  std::vector<std::size_t> members;  // sorted, unique
  double mass = 0.0;
};

Menu make_menu(const FiniteProblem& fp, std::vector<std::size_t> members);

// Highest utility in the menu, lowest index among ties.
std::size_t best_choice(std::span<const std::size_t> menu,
                        const std::vector<double>& u);

inline constexpr std::size_t kDefaultExhaustiveCap = 14;

struct SpneResult {
  std::vector<std::size_t> outcomes;  // every outcome of some pure SPNE
  std::size_t equilibrium_count = 0;  // (opening, outcome) pairs on path
  // Lexicographic tie resolution.
  std::size_t lex_outcome = 0;
  std::uint32_t lex_opening = 0;  // bitmask over outcomes
  bool lex_accepted = false;
  std::uint32_t lex_counter = 0;  // zero when accepted
  double lex_u1 = 0.0;
  double lex_u2 = 0.0;
  // Range of each player's payoff across SPNE outcomes.
  double u1_pessimistic = 0.0, u1_optimistic = 0.0;
  double u2_pessimistic = 0.0, u2_optimistic = 0.0;
};

// Backward induction over all 2^n - 1 menus. Throws kCapacity above `cap`.
SpneResult spne_exhaustive(const FiniteProblem& fp,
                           std::size_t cap = kDefaultExhaustiveCap);

inline constexpr std::size_t kNoExtra = std::numeric_limits<std::size_t>::max();

// A menu made of the `length` outcomes that `agent` ranks lowest, plus an
// optional extra outcome. Lower contour sets, trims, augmentations and
// singletons all take this form.
struct FamilyMenu {
  int agent = 1;
  std::size_t length = 0;
  std::size_t extra = kNoExtra;

  bool operator==(const FamilyMenu&) const = default;
};

class GridGame {
 public:
  explicit GridGame(FiniteProblem fp);

  const FiniteProblem& problem() const { return fp_; }
  std::size_t size() const { return fp_.size(); }

  double mass(const FamilyMenu& m) const;
  bool contains(const FamilyMenu& m, std::size_t outcome) const;
  // Best outcome in the menu for `player`, lowest index among ties.
  std::size_t best(const FamilyMenu& m, int player) const;
  Menu materialize(const FamilyMenu& m) const;

  // Weak lower contour set of `agent` at `outcome`.
  FamilyMenu lower_set(int agent, std::size_t outcome) const;
  // {outcome} plus the lower set with its top band of weight <= eps removed.
  FamilyMenu trim(int agent, std::size_t outcome, double eps) const;
  FamilyMenu augment(FamilyMenu base, std::size_t extra) const;
  FamilyMenu singleton(std::size_t outcome) const;

 private:
  FamilyMenu normalize(FamilyMenu m) const;

  FiniteProblem fp_;
  // Per ranking agent (index 0, 1): outcomes by ascending utility, positions,
  // prefix masses and prefix argmax for each player.
  std::vector<std::size_t> order_[2];
  std::vector<std::size_t> pos_[2];
  std::vector<double> prefix_mass_[2];
  std::vector<std::size_t> prefix_best_[2][2];
};

// Family menus sorted by mass with a suffix maximum of player 2's payoff from
// player 1's best choice: the best feasible counter for any mass threshold.
class CounterTable {
 public:
  CounterTable(const GridGame& game, const std::vector<FamilyMenu>& family);

  struct Best {
    bool found = false;
    double value = 0.0;
    FamilyMenu menu;
  };
  // Best counter with mass >= threshold (up to `slack`).
  Best best(double threshold) const;
  double slack() const { return slack_; }

 private:
  std::vector<double> mass_;
  std::vector<double> suffix_value_;
  std::vector<FamilyMenu> suffix_menu_;
  double slack_ = 0.0;
};

struct FamilyOptions {
  double eps = 0.0;            // trim budget in measure units
  std::size_t max_menus = 4000000;
};

// Lower sets L1(x), L2(x) at every outcome, trims, singletons and single
// point augmentations L_i(x) + {y}, deduplicated. Augmentations are strided
// when the family would exceed max_menus.
std::vector<FamilyMenu> build_family(const GridGame& game,
                                     const FamilyOptions& options);

struct Response {
  bool accept = true;
  std::size_t outcome = 0;  // accepted outcome
  FamilyMenu counter;       // used when !accept
};

struct StrategyProfile {
  FamilyMenu opening;
  std::function<Response(const FamilyMenu&)> response;
  std::function<std::size_t(const FamilyMenu&)> choice;
};

// Player 2's optimal reply over the family: accept the best element of A1 when
// it is at least as good as the best feasible counter.
Response optimal_response(const GridGame& game, const CounterTable& counters,
                          const FamilyMenu& a1);

// Opening `opening`; player 2 accepts `accept_at_opening` there and plays
// optimal_response elsewhere; player 1 picks best_choice.
StrategyProfile make_profile(const GridGame& game, const CounterTable& counters,
                             FamilyMenu opening, std::size_t accept_at_opening);

// A discretised continuous problem: outcomes are grid cells plus x* (weight
// zero), payoffs are grid lower contour measures.
struct ContinuumGame {
  GridGame game;
  std::vector<FamilyMenu> family;
  CounterTable counters;
  std::size_t x_star = 0;  // outcome index of x*
  double cell_weight = 0.0;
  double eps = 0.0;
  std::size_t resolution = 0;
};

ContinuumGame build_continuum_game(const Problem& problem, const Point& x_star,
                                   std::size_t resolution, double eps_cells = 2.0);

// The equilibrium of the existence proof: open with L2(x*) + {x*}, accept x*
// there. Throws kNonRegular when the grid measures at x* differ by more than
// `tol_cells` cells.
StrategyProfile construct_equilibrium(const ContinuumGame& cg,
                                      double tol_cells = 5.0);

struct DeviationReport {
  std::size_t outcome = 0;  // on-path outcome
  double p1_payoff = 0.0;
  double p2_payoff = 0.0;
  double max_gain_p1 = 0.0;
  double max_gain_p2 = 0.0;
  double gain_p2_opening = 0.0;
  std::size_t nodes = 0;
  bool feasible = true;  // every prescribed action is legal
  double tol = 0.0;
  bool certificate = false;
};

DeviationReport check_deviations(const GridGame& game,
                                 const CounterTable& counters,
                                 const std::vector<FamilyMenu>& family,
                                 const StrategyProfile& profile, double tol);

struct RefineRow {
  std::size_t resolution;
  Point outcome;
  double distance;  // to the nearest solution
};

enum class MechanismMode { kExhaustive, kFamily };

// Lexicographic equilibrium outcome of the grid-weighted finite game at each
// resolution. Exhaustive mode enumerates all menus and needs
// resolution <= cap; family mode restricts both players to the menu family.
std::vector<RefineRow> refine_and_compare(
    const Problem& problem, const std::vector<std::size_t>& resolutions,
    const std::vector<Point>& solutions, MechanismMode mode,
    std::size_t cap = kDefaultExhaustiveCap);

}  // namespace compromise

#endif  // COMPROMISE_CORE_MECHANISM_HPP_
