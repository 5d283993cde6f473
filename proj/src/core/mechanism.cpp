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

#include "core/mechanism.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

#include "core/contour.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"

namespace compromise {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kHardCap = 24;

// True when outcome a beats b for utility u under the lowest-index rule.
bool better(const std::vector<double>& u, std::size_t a, std::size_t b) {
  return u[a] > u[b] || (u[a] == u[b] && a < b);
}

}  // namespace

void validate(const FiniteProblem& fp) {
  const std::size_t n = fp.u1.size();
  require(n >= 2, ErrorCode::kInvalidArgument, "need at least 2 outcomes");
  require(fp.u2.size() == n && fp.weights.size() == n, ErrorCode::kInvalidArgument,
          "utility and weight vectors must have equal length");
  require(fp.outcomes.empty() || fp.outcomes.size() == n,
          ErrorCode::kInvalidArgument, "outcome list length mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    require(std::isfinite(fp.u1[i]) && std::isfinite(fp.u2[i]),
            ErrorCode::kInvalidArgument, "utilities must be finite");
    require(std::isfinite(fp.weights[i]) && fp.weights[i] >= 0.0,
            ErrorCode::kInvalidArgument, "weights must be nonnegative");
  }
}

FiniteProblem counting_problem(std::vector<double> u1, std::vector<double> u2) {
  FiniteProblem fp;
  fp.weights.assign(u1.size(), 1.0);
  for (std::size_t i = 0; i < u1.size(); ++i) {
    fp.outcomes.push_back(Point{static_cast<double>(i)});
  }
  fp.u1 = std::move(u1);
  fp.u2 = std::move(u2);
  validate(fp);
  return fp;
}

Menu make_menu(const FiniteProblem& fp, std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  require(!members.empty(), ErrorCode::kInvalidArgument, "menus are nonempty");
  Menu m;
  for (std::size_t i : members) {
    require(i < fp.size(), ErrorCode::kInvalidArgument, "menu index out of range");
    m.mass += fp.weights[i];
  }
  m.members = std::move(members);
  return m;
}

std::size_t best_choice(std::span<const std::size_t> menu,
                        const std::vector<double>& u) {
  require(!menu.empty(), ErrorCode::kInvalidArgument, "menus are nonempty");
  std::size_t best = menu[0];
  for (std::size_t i : menu) {
    if (better(u, i, best)) best = i;
  }
  return best;
}

SpneResult spne_exhaustive(const FiniteProblem& fp, std::size_t cap) {
  validate(fp);
  const std::size_t n = fp.size();
  require(n <= cap && n <= kHardCap, ErrorCode::kCapacity,
          "exhaustive search over " + std::to_string(n) +
              " outcomes exceeds the cap of " + std::to_string(std::min(cap, kHardCap)));
  const auto& u1 = fp.u1;
  const auto& u2 = fp.u2;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  const std::size_t count = std::size_t{full} + 1;

  // Per menu: mass, player 1's lexicographic choice, and player 2's worst
  // payoff over player 1's tie set.
  std::vector<double> mass(count, 0.0);
  std::vector<std::uint8_t> choice1(count, 0);
  std::vector<double> tie_min2(count, kInf);
  for (std::uint32_t m = 1; m <= full; ++m) {
    const int low = std::countr_zero(m);
    mass[m] = mass[m & (m - 1)] + fp.weights[static_cast<std::size_t>(low)];
    std::size_t best = static_cast<std::size_t>(low);
    for (std::uint32_t r = m; r; r &= r - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(r));
      if (better(u1, i, best)) best = i;
    }
    choice1[m] = static_cast<std::uint8_t>(best);
    for (std::uint32_t r = m; r; r &= r - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(r));
      if (u1[i] == u1[best]) tie_min2[m] = std::min(tie_min2[m], u2[i]);
    }
  }

  std::vector<std::uint32_t> by_mass(full);
  std::iota(by_mass.begin(), by_mass.end(), 1u);
  std::stable_sort(by_mass.begin(), by_mass.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return mass[a] < mass[b]; });
  std::vector<double> sorted_mass(full);
  for (std::size_t k = 0; k < full; ++k) sorted_mass[k] = mass[by_mass[k]];

  // Suffix maxima over menus of at least a given mass.
  std::vector<double> suffix_pess(full + 1, -kInf);
  std::vector<double> suffix_lex(full + 1, -kInf);
  std::vector<std::uint32_t> suffix_lex_mask(full + 1, 0);
  for (std::size_t k = full; k-- > 0;) {
    const std::uint32_t m = by_mass[k];
    suffix_pess[k] = std::max(suffix_pess[k + 1], tie_min2[m]);
    const double v = u2[choice1[m]];
    const bool take = v > suffix_lex[k + 1] ||
                      (v == suffix_lex[k + 1] && m < suffix_lex_mask[k + 1]);
    suffix_lex[k] = take ? v : suffix_lex[k + 1];
    suffix_lex_mask[k] = take ? m : suffix_lex_mask[k + 1];
  }

  // Largest menu from which player 1 picks w is the weak lower set L1(w).
  std::vector<double> lower_mass1(n, 0.0);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t y = 0; y < n; ++y) {
      if (u1[y] <= u1[w]) lower_mass1[w] += fp.weights[y];
    }
  }

  std::vector<std::uint32_t> support(count, 0);  // SPNE outcomes after A1
  std::vector<double> min1(count, kInf);
  SpneResult res;
  double best_lex_u1 = -kInf;
  parallel_for(full, [&](std::size_t k) {
    const std::uint32_t a1 = static_cast<std::uint32_t>(k + 1);
    const std::size_t start = static_cast<std::size_t>(
        std::lower_bound(sorted_mass.begin(), sorted_mass.end(), mass[a1]) -
        sorted_mass.begin());
    double acc = -kInf;
    for (std::uint32_t r = a1; r; r &= r - 1) {
      acc = std::max(acc, u2[static_cast<std::size_t>(std::countr_zero(r))]);
    }
    const double theta2 = std::max(acc, suffix_pess[start]);
    std::uint32_t s = 0;
    for (std::size_t w = 0; w < n; ++w) {
      if (u2[w] < theta2) continue;
      const bool accepted = (a1 >> w) & 1u;
      const bool countered = lower_mass1[w] >= mass[a1];
      if (accepted || countered) s |= std::uint32_t{1} << w;
    }
    support[a1] = s;
    for (std::uint32_t r = s; r; r &= r - 1) {
      min1[a1] = std::min(min1[a1], u1[static_cast<std::size_t>(std::countr_zero(r))]);
    }
  });

  double theta1 = -kInf;
  for (std::uint32_t a1 = 1; a1 <= full; ++a1) theta1 = std::max(theta1, min1[a1]);
  std::uint32_t outcome_bits = 0;
  for (std::uint32_t a1 = 1; a1 <= full; ++a1) {
    for (std::uint32_t r = support[a1]; r; r &= r - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(r));
      if (u1[v] >= theta1) {
        outcome_bits |= std::uint32_t{1} << v;
        ++res.equilibrium_count;
      }
    }

    // Lexicographic play after a1.
    const std::size_t start = static_cast<std::size_t>(
        std::lower_bound(sorted_mass.begin(), sorted_mass.end(), mass[a1]) -
        sorted_mass.begin());
    std::size_t accept = static_cast<std::size_t>(std::countr_zero(a1));
    for (std::uint32_t r = a1; r; r &= r - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(r));
      if (better(u2, i, accept)) accept = i;
    }
    const bool take_accept = u2[accept] >= suffix_lex[start];
    const std::size_t out = take_accept ? accept : choice1[suffix_lex_mask[start]];
    if (u1[out] > best_lex_u1) {
      best_lex_u1 = u1[out];
      res.lex_outcome = out;
      res.lex_opening = a1;
      res.lex_accepted = take_accept;
      res.lex_counter = take_accept ? 0 : suffix_lex_mask[start];
    }
  }
  res.lex_u1 = u1[res.lex_outcome];
  res.lex_u2 = u2[res.lex_outcome];
  res.u1_pessimistic = res.u2_pessimistic = kInf;
  res.u1_optimistic = res.u2_optimistic = -kInf;
  for (std::size_t v = 0; v < n; ++v) {
    if (!((outcome_bits >> v) & 1u)) continue;
    res.outcomes.push_back(v);
    res.u1_pessimistic = std::min(res.u1_pessimistic, u1[v]);
    res.u1_optimistic = std::max(res.u1_optimistic, u1[v]);
    res.u2_pessimistic = std::min(res.u2_pessimistic, u2[v]);
    res.u2_optimistic = std::max(res.u2_optimistic, u2[v]);
  }
  return res;
}

GridGame::GridGame(FiniteProblem fp) : fp_(std::move(fp)) {
  validate(fp_);
  const std::size_t n = fp_.size();
  for (int a = 0; a < 2; ++a) {
    const auto& u = fp_.utility(a + 1);
    auto& order = order_[a];
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return u[x] < u[y]; });
    pos_[a].resize(n);
    prefix_mass_[a].assign(n + 1, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      pos_[a][order[r]] = r;
      prefix_mass_[a][r + 1] = prefix_mass_[a][r] + fp_.weights[order[r]];
    }
    for (int p = 0; p < 2; ++p) {
      const auto& up = fp_.utility(p + 1);
      auto& best = prefix_best_[a][p];
      best.assign(n + 1, 0);
      for (std::size_t r = 0; r < n; ++r) {
        best[r + 1] = (r == 0 || better(up, order[r], best[r])) ? order[r] : best[r];
      }
    }
  }
}

FamilyMenu GridGame::normalize(FamilyMenu m) const {
  require(m.agent == 1 || m.agent == 2, ErrorCode::kInvalidArgument,
          "menu agent must be 1 or 2");
  require(m.length <= size(), ErrorCode::kInvalidArgument, "menu too long");
  if (m.extra != kNoExtra) {
    require(m.extra < size(), ErrorCode::kInvalidArgument, "menu index out of range");
    if (pos_[m.agent - 1][m.extra] < m.length) m.extra = kNoExtra;
  }
  require(m.length > 0 || m.extra != kNoExtra, ErrorCode::kInvalidArgument,
          "menus are nonempty");
  return m;
}

double GridGame::mass(const FamilyMenu& m) const {
  double v = prefix_mass_[m.agent - 1][m.length];
  if (m.extra != kNoExtra && pos_[m.agent - 1][m.extra] >= m.length) {
    v += fp_.weights[m.extra];
  }
  return v;
}

bool GridGame::contains(const FamilyMenu& m, std::size_t outcome) const {
  return outcome < size() &&
         (pos_[m.agent - 1][outcome] < m.length || outcome == m.extra);
}

std::size_t GridGame::best(const FamilyMenu& m, int player) const {
  const auto& u = fp_.utility(player);
  std::size_t b = kNoExtra;
  if (m.length > 0) b = prefix_best_[m.agent - 1][player - 1][m.length];
  if (m.extra != kNoExtra && (b == kNoExtra || better(u, m.extra, b))) b = m.extra;
  return b;
}

Menu GridGame::materialize(const FamilyMenu& m) const {
  std::vector<std::size_t> members(order_[m.agent - 1].begin(),
                                   order_[m.agent - 1].begin() +
                                       static_cast<std::ptrdiff_t>(m.length));
  if (m.extra != kNoExtra) members.push_back(m.extra);
  return make_menu(fp_, std::move(members));
}

FamilyMenu GridGame::lower_set(int agent, std::size_t outcome) const {
  const auto& u = fp_.utility(agent);
  const auto& order = order_[agent - 1];
  std::size_t r = pos_[agent - 1][outcome] + 1;
  while (r < order.size() && u[order[r]] <= u[outcome]) ++r;
  return normalize({agent, r, kNoExtra});
}

FamilyMenu GridGame::trim(int agent, std::size_t outcome, double eps) const {
  require(eps > 0.0, ErrorCode::kInvalidArgument, "trim eps must be positive");
  const auto& u = fp_.utility(agent);
  const auto& order = order_[agent - 1];
  const auto& pm = prefix_mass_[agent - 1];
  std::size_t r = lower_set(agent, outcome).length;
  require(eps <= pm[r], ErrorCode::kInvalidArgument,
          "trim eps exceeds the lower contour measure");
  // Drop whole utility levels from the top while their weight fits in eps.
  const std::size_t full = r;
  while (r > 0) {
    std::size_t s = r - 1;
    while (s > 0 && u[order[s - 1]] == u[order[r - 1]]) --s;
    if (pm[full] - pm[s] > eps) {
      require(u[order[r - 1]] != u[outcome], ErrorCode::kNumeric,
              "indifference set at the apex outweighs the trim budget");
      break;
    }
    r = s;
  }
  require(r > 0, ErrorCode::kInvalidArgument,
          "trim removes the whole lower contour set");
  return normalize({agent, r, outcome});
}

FamilyMenu GridGame::augment(FamilyMenu base, std::size_t extra) const {
  base.extra = extra;
  return normalize(base);
}

FamilyMenu GridGame::singleton(std::size_t outcome) const {
  return normalize({1, 0, outcome});
}

CounterTable::CounterTable(const GridGame& game,
                           const std::vector<FamilyMenu>& family) {
  const auto& u2 = game.problem().u2;
  const std::size_t n = family.size();
  std::vector<double> mass(n), value(n);
  parallel_for(n, [&](std::size_t i) {
    mass[i] = game.mass(family[i]);
    value[i] = u2[game.best(family[i], 1)];
  });
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return mass[a] < mass[b]; });
  mass_.resize(n);
  suffix_value_.assign(n + 1, -kInf);
  suffix_menu_.resize(n + 1);
  std::vector<std::size_t> suffix_index(n + 1, kNoExtra);
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t i = idx[k];
    mass_[k] = mass[i];
    const bool take = value[i] > suffix_value_[k + 1] ||
                      (value[i] == suffix_value_[k + 1] && i < suffix_index[k + 1]);
    suffix_value_[k] = take ? value[i] : suffix_value_[k + 1];
    suffix_index[k] = take ? i : suffix_index[k + 1];
    suffix_menu_[k] = take ? family[i] : suffix_menu_[k + 1];
  }
  double total = 0.0;
  for (double w : game.problem().weights) total += w;
  slack_ = 1e-12 * total;
}

CounterTable::Best CounterTable::best(double threshold) const {
  const auto it =
      std::lower_bound(mass_.begin(), mass_.end(), threshold - slack_);
  const auto k = static_cast<std::size_t>(it - mass_.begin());
  if (k >= mass_.size()) return {};
  return {true, suffix_value_[k], suffix_menu_[k]};
}

std::vector<FamilyMenu> build_family(const GridGame& game,
                                     const FamilyOptions& options) {
  const std::size_t n = game.size();
  std::vector<FamilyMenu> out;
  std::set<std::tuple<int, std::size_t, std::size_t>> seen;
  auto add = [&](const FamilyMenu& m) {
    if (seen.emplace(m.agent, m.length, m.extra).second) out.push_back(m);
  };
  std::set<std::size_t> lengths[2];
  for (int agent = 1; agent <= 2; ++agent) {
    for (std::size_t i = 0; i < n; ++i) {
      const FamilyMenu l = game.lower_set(agent, i);
      lengths[agent - 1].insert(l.length);
      add(l);
    }
  }
  if (options.eps > 0.0) {
    for (int agent = 1; agent <= 2; ++agent) {
      for (std::size_t i = 0; i < n; ++i) {
        try {
          add(game.trim(agent, i, options.eps));
        } catch (const Error&) {
          // No trim exists at the bottom of the ranking.
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) add(game.singleton(i));

  std::size_t augmentations = 0;
  for (int a = 0; a < 2; ++a) {
    for (std::size_t len : lengths[a]) augmentations += n - len;
  }
  const std::size_t budget =
      options.max_menus > out.size() ? options.max_menus - out.size() : 1;
  const std::size_t stride = std::max<std::size_t>(1, (augmentations + budget - 1) / budget);
  for (int agent = 1; agent <= 2; ++agent) {
    for (std::size_t len : lengths[agent - 1]) {
      const FamilyMenu base{agent, len, kNoExtra};
      std::size_t k = 0;
      for (std::size_t y = 0; y < n; ++y) {
        if (game.contains(base, y)) continue;
        if (k++ % stride == 0) add(game.augment(base, y));
      }
    }
  }
  return out;
}

Response optimal_response(const GridGame& game, const CounterTable& counters,
                          const FamilyMenu& a1) {
  const auto& u2 = game.problem().u2;
  const std::size_t acc = game.best(a1, 2);
  const CounterTable::Best c = counters.best(game.mass(a1));
  if (!c.found || u2[acc] >= c.value) return {true, acc, {}};
  return {false, 0, c.menu};
}

StrategyProfile make_profile(const GridGame& game, const CounterTable& counters,
                             FamilyMenu opening, std::size_t accept_at_opening) {
  require(game.contains(opening, accept_at_opening), ErrorCode::kInvalidArgument,
          "accepted outcome must belong to the opening");
  StrategyProfile p;
  p.opening = opening;
  const GridGame* g = &game;
  const CounterTable* c = &counters;
  p.response = [g, c, opening, accept_at_opening](const FamilyMenu& a1) {
    if (a1 == opening) return Response{true, accept_at_opening, {}};
    return optimal_response(*g, *c, a1);
  };
  p.choice = [g](const FamilyMenu& a2) { return g->best(a2, 1); };
  return p;
}

ContinuumGame build_continuum_game(const Problem& problem, const Point& x_star,
                                   std::size_t resolution, double eps_cells) {
  validate(problem);
  require(contains(problem.space, x_star), ErrorCode::kDomain,
          "x* must lie in the policy space");
  const auto cells = grid(problem.space, problem.measure, resolution);
  const auto t1 = ContourTable::from_grid(problem.pref1, cells);
  const auto t2 = ContourTable::from_grid(problem.pref2, cells);
  FiniteProblem fp;
  const std::size_t n = cells.size() + 1;
  fp.outcomes.resize(n);
  fp.u1.resize(n);
  fp.u2.resize(n);
  fp.weights.resize(n);
  parallel_for(cells.size(), [&](std::size_t i) {
    fp.outcomes[i] = cells[i].point;
    fp.u1[i] = t1.lower(problem.pref1.utility(cells[i].point));
    fp.u2[i] = t2.lower(problem.pref2.utility(cells[i].point));
    fp.weights[i] = cells[i].weight;
  });
  fp.outcomes[n - 1] = x_star;
  fp.u1[n - 1] = t1.lower(problem.pref1.utility(x_star));
  fp.u2[n - 1] = t2.lower(problem.pref2.utility(x_star));
  fp.weights[n - 1] = 0.0;

  GridGame game(std::move(fp));
  const double cell = max_cell_weight(cells);
  const double eps = eps_cells * cell;
  auto family = build_family(game, {eps, FamilyOptions{}.max_menus});
  CounterTable counters(game, family);
  return {std::move(game), std::move(family), std::move(counters), n - 1, cell,
          eps, resolution};
}

StrategyProfile construct_equilibrium(const ContinuumGame& cg, double tol_cells) {
  const auto& fp = cg.game.problem();
  const std::size_t x = cg.x_star;
  require(std::abs(fp.u1[x] - fp.u2[x]) <= tol_cells * cg.cell_weight,
          ErrorCode::kNonRegular,
          "contour measures at x* differ; the problem is not regular");
  const FamilyMenu opening = cg.game.augment(cg.game.lower_set(2, x), x);
  return make_profile(cg.game, cg.counters, opening, x);
}

DeviationReport check_deviations(const GridGame& game,
                                 const CounterTable& counters,
                                 const std::vector<FamilyMenu>& family,
                                 const StrategyProfile& profile, double tol) {
  const auto& u1 = game.problem().u1;
  const auto& u2 = game.problem().u2;
  DeviationReport rep;
  rep.tol = tol;

  // Outcome and legality of the prescribed play after opening a1.
  auto play = [&](const FamilyMenu& a1, bool& legal) {
    const Response r = profile.response(a1);
    if (r.accept) {
      legal = game.contains(a1, r.outcome);
      return r.outcome;
    }
    legal = game.mass(r.counter) >= game.mass(a1) - counters.slack();
    const std::size_t y = profile.choice(r.counter);
    legal = legal && game.contains(r.counter, y);
    return y;
  };
  auto p2_gain = [&](const FamilyMenu& a1, std::size_t prescribed) {
    double v = u2[game.best(a1, 2)];
    const CounterTable::Best c = counters.best(game.mass(a1));
    if (c.found) v = std::max(v, c.value);
    return v - u2[prescribed];
  };

  bool legal = true;
  rep.outcome = play(profile.opening, legal);
  rep.feasible = legal;
  rep.p1_payoff = u1[rep.outcome];
  rep.p2_payoff = u2[rep.outcome];
  rep.gain_p2_opening = p2_gain(profile.opening, rep.outcome);

  const std::size_t n = family.size();
  std::vector<double> g1(n), g2(n);
  std::vector<char> ok(n, 1);
  parallel_for(n, [&](std::size_t i) {
    bool l = true;
    const std::size_t y = play(family[i], l);
    ok[i] = l;
    g1[i] = u1[y] - rep.p1_payoff;
    g2[i] = p2_gain(family[i], y);
  });
  rep.max_gain_p1 = 0.0;
  rep.max_gain_p2 = std::max(0.0, rep.gain_p2_opening);
  for (std::size_t i = 0; i < n; ++i) {
    rep.max_gain_p1 = std::max(rep.max_gain_p1, g1[i]);
    rep.max_gain_p2 = std::max(rep.max_gain_p2, g2[i]);
    rep.feasible = rep.feasible && ok[i];
  }
  rep.nodes = n + 1;
  rep.certificate =
      rep.feasible && rep.max_gain_p1 <= tol && rep.max_gain_p2 <= tol;
  return rep;
}

std::vector<RefineRow> refine_and_compare(
    const Problem& problem, const std::vector<std::size_t>& resolutions,
    const std::vector<Point>& solutions, MechanismMode mode, std::size_t cap) {
  validate(problem);
  require(!solutions.empty(), ErrorCode::kInvalidArgument,
          "need at least one reference solution");
  std::vector<RefineRow> rows;
  for (std::size_t res : resolutions) {
    const auto cells = grid(problem.space, problem.measure, res);
    FiniteProblem fp;
    for (const auto& c : cells) {
      fp.outcomes.push_back(c.point);
      fp.u1.push_back(problem.pref1.utility(c.point));
      fp.u2.push_back(problem.pref2.utility(c.point));
      fp.weights.push_back(c.weight);
    }
    std::size_t out = 0;
    if (mode == MechanismMode::kExhaustive) {
      out = spne_exhaustive(fp, cap).lex_outcome;
    } else {
      const GridGame game(fp);
      const auto family = build_family(game, {2.0 * max_cell_weight(cells)});
      const CounterTable counters(game, family);
      double best = -kInf;
      for (const auto& a1 : family) {
        const Response r = optimal_response(game, counters, a1);
        const std::size_t y = r.accept ? r.outcome : game.best(r.counter, 1);
        if (fp.u1[y] > best) {
          best = fp.u1[y];
          out = y;
        }
      }
    }
    double dist = kInf;
    for (const auto& s : solutions) dist = std::min(dist, distance(fp.outcomes[out], s));
    rows.push_back({res, fp.outcomes[out], dist});
  }
  return rows;
}

}  // namespace compromise
