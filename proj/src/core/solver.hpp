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

// The compromise rule: maximise min{m1(x), m2(x)} where mi(x) is the measure
// of agent i's lower contour set at x.

#ifndef COMPROMISE_CORE_SOLVER_HPP_
#define COMPROMISE_CORE_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "core/contour.hpp"
#include "core/geometry.hpp"
#include "core/preferences.hpp"

namespace compromise {

struct ContourSettings {
  std::optional<Backend> backend;  // empty: exact when available, else grid
  std::size_t n = 200000;          // Monte Carlo sample count
  std::size_t resolution = 1000;   // grid backend cells per axis
  std::uint64_t seed = 0;
};

// kParetoLine restricts the search to the efficient frontier: the budget line
// x1 + x2 = 1 on the unit triangle, or g = theta1 + theta2 on the budget
// surface with log public-good preferences.
enum class SearchDomain { kFull, kParetoLine };

struct Problem {
  PolicySpace space;
  MeasureSpec measure;
  Preference pref1;
  Preference pref2;
  ContourSettings contour;
  SearchDomain search = SearchDomain::kFull;
};

// Throws kDomain or kConfig when the problem cannot be evaluated.
void validate(const Problem& problem);

// Lower contour measures for both agents under the problem's backend. Grid
// and Monte Carlo backends build a sorted table once per agent.
class ContourOracle {
 public:
  explicit ContourOracle(const Problem& problem);

  // agent is 1 or 2.
  double measure(int agent, const Point& x) const;
  Backend backend() const { return backend_; }
  double total() const { return total_; }
  // Size of the discretisation error of one evaluation, in measure units.
  double noise() const { return noise_; }

 private:
  const Preference& pref(int agent) const;

  Problem problem_;
  Backend backend_;
  double total_ = 0.0;
  double noise_ = 0.0;
  std::optional<ContourTable> table1_;
  std::optional<ContourTable> table2_;
};

Backend resolve_backend(const Problem& problem);

struct VerifyReport {
  Point x;
  double m1 = 0.0;
  double m2 = 0.0;
  double tol = 0.0;
  bool equal_measures = false;
  bool min_bound = false;
  bool pareto_ok = false;
  bool passed() const { return equal_measures && min_bound && pareto_ok; }
};

// Checks equal measures, min >= total/2 - tol and absence of a sampled
// point that beats x by more than tol in both utilities.
VerifyReport verify_compromise(const Problem& problem,
                               const ContourOracle& oracle, const Point& x,
                               double tol, std::size_t n_check,
                               std::uint64_t seed);
VerifyReport verify_compromise(const Problem& problem, const Point& x,
                               double tol, std::size_t n_check = 20000,
                               std::uint64_t seed = 0);

// Each agent's contour measure varies by at most tol across the solutions.
bool indifferent_across(const ContourOracle& oracle,
                        const std::vector<Point>& solutions, double tol);

struct TraceStep {
  std::size_t resolution;
  double best;
};

struct CompromiseResult {
  std::vector<Point> solutions;
  double value = 0.0;
  std::vector<std::pair<double, double>> measures;  // (m1, m2) per solution
  std::vector<VerifyReport> checks;
  bool pareto_ok = false;
  bool regular_ok = false;
  bool indifferent = false;
  std::vector<TraceStep> trace;
  Backend backend = Backend::kExact;
  double tol = 0.0;            // verification tolerance
  double cluster_radius = 0.0;
};

struct SolveOptions {
  std::size_t resolution = 400;
  std::size_t refine_iters = 3;
  double tol = -1.0;  // negative: 5 / resolution in units of total measure
  std::size_t n_check = 20000;
  std::uint64_t seed = 0;
};

CompromiseResult solve_maxmin_grid(const Problem& problem,
                                   const SolveOptions& options);
CompromiseResult solve_maxmin_grid(const Problem& problem,
                                   std::size_t resolution,
                                   std::size_t refine_iters);

// Root of m1 - m2 on [lo, hi] for increasing m1 and decreasing m2. Throws
// kNotMonotone when a 64-point sweep contradicts monotonicity and kDomain
// when the endpoints do not bracket a crossing.
double solve_equalize_1d(const std::function<double(double)>& m1,
                         const std::function<double(double)>& m2, double tol,
                         double lo = 0.0, double hi = 1.0);

// Equal closed-form Fehr-Schmidt areas along the budget line; returns
// player 1's share.
double solve_equalize_fs(const FehrSchmidt& p1, const FehrSchmidt& p2,
                         double tol = 1e-12);

// Private-good shares (x1, x2) on the line g = theta1 + theta2.
std::pair<double, double> solve_pareto_line(const Problem& problem,
                                            double tol = 1e-12);

}  // namespace compromise

#endif  // COMPROMISE_CORE_SOLVER_HPP_
