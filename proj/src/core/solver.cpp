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

#include "core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace compromise {
namespace {

bool is_fehr_schmidt(const Preference& p) {
  return p.as<FehrSchmidt>() != nullptr;
}

// The space searched by the grid solver and the map from its chart into the
// problem's policy space.
struct SearchChart {
  PolicySpace chart;
  std::function<Point(std::span<const double>)> lift;
};

SearchChart make_search_chart(const Problem& problem) {
  if (problem.search == SearchDomain::kFull) {
    const PolicySpace& space = problem.space;
    return {space, [&space](std::span<const double> c) { return space.embed(c); }};
  }
  if (problem.space.kind() == SpaceKind::kUnitTriangle) {
    return {PolicySpace::interval(0.0, 1.0), [](std::span<const double> c) {
              return Point{c[0], 1.0 - c[0]};
            }};
  }
  const auto* a = problem.pref1.as<PublicGoodLog>();
  const auto* b = problem.pref2.as<PublicGoodLog>();
  require(problem.space.kind() == SpaceKind::kBudgetSurface3 && a && b,
          ErrorCode::kConfig,
          "pareto_line search needs the unit triangle or log public-good "
          "preferences on the budget surface");
  const double K = a->theta + b->theta;
  require(K < 1.0, ErrorCode::kConfig, "theta1 + theta2 must be below 1");
  const double C = 1.0 - K;
  return {PolicySpace::interval(0.0, C), [K, C](std::span<const double> c) {
            const double x1 = std::clamp(c[0], 0.0, C);
            return Point{x1, C - x1, K};
          }};
}

std::vector<double> chart_coords(const SearchChart& sc, const Point& p) {
  return sc.chart.chart_of(p);
}

struct Candidate {
  std::vector<double> chart;
  double f;
};

}  // namespace

void validate(const Problem& problem) {
  check_compatible(problem.pref1, problem.space);
  check_compatible(problem.pref2, problem.space);
  require(problem.measure.scale() > 0.0, ErrorCode::kConfig,
          "measure scale must be positive");
  if (problem.search == SearchDomain::kParetoLine) make_search_chart(problem);
}

Backend resolve_backend(const Problem& problem) {
  const bool exact_ok =
      exact_available(problem.pref1, problem.space, problem.measure) &&
      exact_available(problem.pref2, problem.space, problem.measure);
  const bool fs_off_line =
      (is_fehr_schmidt(problem.pref1) || is_fehr_schmidt(problem.pref2)) &&
      problem.search == SearchDomain::kFull;
  if (problem.contour.backend) {
    if (*problem.contour.backend == Backend::kExact) {
      require(exact_ok, ErrorCode::kConfig,
              "exact contour backend unavailable for this problem");
      require(!fs_off_line, ErrorCode::kConfig,
              "exact Fehr-Schmidt contours need solver.search = pareto_line");
    }
    return *problem.contour.backend;
  }
  if (exact_ok && !fs_off_line) return Backend::kExact;
  return problem.space.dim() <= 3 ? Backend::kGrid : Backend::kMonteCarlo;
}

ContourOracle::ContourOracle(const Problem& problem)
    : problem_(problem), backend_(resolve_backend(problem)) {
  validate(problem_);
  total_ = total_measure(problem_.space, problem_.measure);
  switch (backend_) {
    case Backend::kExact:
      noise_ = 0.0;
      break;
    case Backend::kGrid: {
      const auto cells =
          grid(problem_.space, problem_.measure, problem_.contour.resolution);
      table1_ = ContourTable::from_grid(problem_.pref1, cells);
      table2_ = ContourTable::from_grid(problem_.pref2, cells);
      noise_ = max_cell_weight(cells);
      break;
    }
    case Backend::kMonteCarlo: {
      require(problem_.contour.n >= 100, ErrorCode::kConfig,
              "contour.n must be at least 100");
      const auto pts = sample(problem_.space, problem_.measure,
                              problem_.contour.seed, problem_.contour.n);
      table1_ = ContourTable::from_samples(problem_.pref1, pts, total_);
      table2_ = ContourTable::from_samples(problem_.pref2, pts, total_);
      noise_ = 1.5 * total_ / std::sqrt(static_cast<double>(problem_.contour.n));
      break;
    }
  }
}

const Preference& ContourOracle::pref(int agent) const {
  require(agent == 1 || agent == 2, ErrorCode::kInvalidArgument,
          "agent must be 1 or 2");
  return agent == 1 ? problem_.pref1 : problem_.pref2;
}

double ContourOracle::measure(int agent, const Point& x) const {
  const Preference& p = pref(agent);
  if (backend_ == Backend::kExact) {
    return lower_measure_exact(p, problem_.space, problem_.measure, x);
  }
  const ContourTable& t = agent == 1 ? *table1_ : *table2_;
  return t.lower(p.utility(x));
}

VerifyReport verify_compromise(const Problem& problem,
                               const ContourOracle& oracle, const Point& x,
                               double tol, std::size_t n_check,
                               std::uint64_t seed) {
  require(contains(problem.space, x), ErrorCode::kDomain,
          "point " + to_string(x) + " is outside " + problem.space.describe());
  VerifyReport r;
  r.x = x;
  r.tol = tol;
  r.m1 = oracle.measure(1, x);
  r.m2 = oracle.measure(2, x);
  r.equal_measures = std::abs(r.m1 - r.m2) <= tol;
  r.min_bound = std::min(r.m1, r.m2) >= oracle.total() / 2.0 - tol;
  const double u1 = problem.pref1.utility(x);
  const double u2 = problem.pref2.utility(x);
  r.pareto_ok = true;
  if (n_check > 0) {
    for (const auto& y : sample(problem.space, problem.measure, seed, n_check)) {
      if (problem.pref1.utility(y) > u1 + tol &&
          problem.pref2.utility(y) > u2 + tol) {
        r.pareto_ok = false;
        break;
      }
    }
  }
  return r;
}

VerifyReport verify_compromise(const Problem& problem, const Point& x,
                               double tol, std::size_t n_check,
                               std::uint64_t seed) {
  const ContourOracle oracle(problem);
  return verify_compromise(problem, oracle, x, tol, n_check, seed);
}

bool indifferent_across(const ContourOracle& oracle,
                        const std::vector<Point>& solutions, double tol) {
  for (int agent = 1; agent <= 2; ++agent) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : solutions) {
      const double m = oracle.measure(agent, s);
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    if (!solutions.empty() && hi - lo > tol) return false;
  }
  return true;
}

CompromiseResult solve_maxmin_grid(const Problem& problem,
                                   std::size_t resolution,
                                   std::size_t refine_iters) {
  SolveOptions o;
  o.resolution = resolution;
  o.refine_iters = refine_iters;
  return solve_maxmin_grid(problem, o);
}

CompromiseResult solve_maxmin_grid(const Problem& problem,
                                   const SolveOptions& options) {
  require(options.resolution >= 8, ErrorCode::kInvalidArgument,
          "solver resolution must be at least 8");
  const ContourOracle oracle(problem);
  const SearchChart sc = make_search_chart(problem);
  const std::size_t d = sc.chart.dim();
  const std::size_t R = options.resolution;

  auto f_at = [&](std::span<const double> chart) {
    const Point p = sc.lift(chart);
    return std::min(oracle.measure(1, p), oracle.measure(2, p));
  };

  // Stage 0: the cell-centred candidate lattice.
  const auto cells = grid(sc.chart, MeasureSpec::lebesgue_raw(), R);
  const std::size_t n = cells.size();
  std::vector<std::vector<double>> charts(n);
  std::vector<double> f(n);
  parallel_for(n, [&](std::size_t i) {
    charts[i] = chart_coords(sc, cells[i].point);
    f[i] = f_at(charts[i]);
  });

  std::vector<double> h(d);
  for (std::size_t a = 0; a < d; ++a) {
    h[a] = (sc.chart.chart_hi(a) - sc.chart.chart_lo(a)) / static_cast<double>(R);
  }
  auto lattice_key = [&](const std::vector<double>& c) {
    std::uint64_t key = 0;
    for (std::size_t a = 0; a < d; ++a) {
      auto i = static_cast<std::int64_t>(
          std::floor((c[a] - sc.chart.chart_lo(a)) / h[a]));
      i = std::clamp<std::int64_t>(i, 0, static_cast<std::int64_t>(R) - 1);
      key = key * R + static_cast<std::uint64_t>(i);
    }
    return key;
  };
  std::unordered_map<std::uint64_t, std::size_t> at_key;
  std::vector<std::uint64_t> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys[i] = lattice_key(charts[i]);
    at_key.emplace(keys[i], i);
  }
  std::vector<std::int64_t> stride(d, 1);
  for (std::size_t a = d; a-- > 1;) stride[a - 1] = stride[a] * static_cast<std::int64_t>(R);

  auto decode = [&](std::uint64_t key) {
    std::vector<std::int64_t> idx(d);
    for (std::size_t a = d; a-- > 0;) {
      idx[a] = static_cast<std::int64_t>(key % R);
      key /= R;
    }
    return idx;
  };
  // All 3^d - 1 neighbours, or only the 2d axis neighbours.
  auto neighbours = [&](std::size_t i, bool diagonal) {
    std::vector<std::size_t> out;
    const auto idx = decode(keys[i]);
    const std::size_t combos = diagonal ? static_cast<std::size_t>(std::pow(3, d)) : 2 * d;
    for (std::size_t c = 0; c < combos; ++c) {
      std::vector<std::int64_t> off(d, 0);
      if (diagonal) {
        std::size_t rest = c;
        for (std::size_t a = 0; a < d; ++a) {
          off[a] = static_cast<std::int64_t>(rest % 3) - 1;
          rest /= 3;
        }
      } else {
        off[c / 2] = (c % 2 == 0) ? -1 : 1;
      }
      bool zero = true, inside = true;
      std::uint64_t key = 0;
      for (std::size_t a = 0; a < d; ++a) {
        const std::int64_t j = idx[a] + off[a];
        zero = zero && off[a] == 0;
        inside = inside && j >= 0 && j < static_cast<std::int64_t>(R);
        key = key * R + static_cast<std::uint64_t>(std::max<std::int64_t>(j, 0));
      }
      if (zero || !inside) continue;
      if (auto it = at_key.find(key); it != at_key.end()) out.push_back(it->second);
    }
    return out;
  };

  double fmax = -std::numeric_limits<double>::infinity();
  for (double v : f) fmax = std::max(fmax, v);
  double lip = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : neighbours(i, false)) lip = std::max(lip, std::abs(f[i] - f[j]));
  }
  const double tol_basin = 2.0 * lip;

  // Basins: connected components of the retained near-optimal cells.
  std::vector<int> label(n, -1);
  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i] < fmax - tol_basin || label[i] >= 0) continue;
    const int id = static_cast<int>(seeds.size());
    std::size_t best = i;
    std::deque<std::size_t> queue{i};
    label[i] = id;
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      if (f[k] > f[best]) best = k;
      for (std::size_t j : neighbours(k, true)) {
        if (label[j] < 0 && f[j] >= fmax - tol_basin) {
          label[j] = id;
          queue.push_back(j);
        }
      }
    }
    seeds.push_back(best);
  }
  constexpr std::size_t kMaxBasins = 64;
  std::stable_sort(seeds.begin(), seeds.end(),
                   [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });
  if (seeds.size() > kMaxBasins) seeds.resize(kMaxBasins);

  CompromiseResult result;
  result.backend = oracle.backend();
  result.trace.push_back({R, fmax});

  // Refinement: each round shrinks the step 4x inside a +-2 old-step window.
  const int half = d <= 2 ? 8 : 4;
  const std::size_t per_axis = static_cast<std::size_t>(2 * half + 1);
  std::size_t window = 1;
  for (std::size_t a = 0; a < d; ++a) window *= per_axis;
  std::vector<Candidate> optima;
  for (std::size_t s : seeds) optima.push_back({charts[s], f[s]});
  std::vector<double> step = h;
  for (std::size_t it = 0; it < options.refine_iters; ++it) {
    for (auto& v : step) v /= 4.0;
    double round_best = -std::numeric_limits<double>::infinity();
    for (auto& opt : optima) {
      std::vector<std::vector<double>> pts(window);
      std::vector<double> vals(window);
      parallel_for(window, [&](std::size_t w) {
        std::vector<double> c = opt.chart;
        std::size_t rest = w;
        for (std::size_t a = 0; a < d; ++a) {
          const auto k = static_cast<int>(rest % per_axis) - half;
          rest /= per_axis;
          c[a] += k * step[a];
        }
        pts[w] = sc.chart.clamp_chart(std::move(c));
        vals[w] = f_at(pts[w]);
      });
      for (std::size_t w = 0; w < window; ++w) {
        if (vals[w] > opt.f) opt = {pts[w], vals[w]};
      }
      round_best = std::max(round_best, opt.f);
    }
    result.trace.push_back({R << (2 * (it + 1)), round_best});
  }

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& o : optima) best = std::max(best, o.f);
  const double keep = 2.0 * lip / std::pow(4.0, static_cast<double>(options.refine_iters)) +
                      2.0 * oracle.noise() + 1e-12 * oracle.total();
  double h_final = 0.0;
  for (double v : step) h_final = std::max(h_final, v);
  result.cluster_radius = 2.0 * h_final;

  std::vector<Candidate> reps;
  std::vector<Candidate> ranked = optima;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Candidate& a, const Candidate& b) { return a.f > b.f; });
  for (const auto& c : ranked) {
    if (c.f < best - keep) continue;
    bool merged = false;
    for (const auto& r : reps) {
      double dist2 = 0.0;
      for (std::size_t a = 0; a < d; ++a) dist2 += (c.chart[a] - r.chart[a]) * (c.chart[a] - r.chart[a]);
      if (std::sqrt(dist2) <= result.cluster_radius) {
        merged = true;
        break;
      }
    }
    if (!merged) reps.push_back(c);
  }
  std::sort(reps.begin(), reps.end(),
            [](const Candidate& a, const Candidate& b) { return a.chart < b.chart; });

  result.value = best;
  result.tol = options.tol >= 0.0
                   ? options.tol
                   : 5.0 / static_cast<double>(R) * oracle.total();
  result.pareto_ok = true;
  result.regular_ok = true;
  for (const auto& r : reps) {
    Point p = sc.lift(r.chart);
    const VerifyReport v = verify_compromise(problem, oracle, p, result.tol,
                                             options.n_check, options.seed);
    result.measures.emplace_back(v.m1, v.m2);
    result.pareto_ok = result.pareto_ok && v.pareto_ok;
    result.regular_ok = result.regular_ok && v.equal_measures && v.min_bound;
    result.checks.push_back(v);
    result.solutions.push_back(std::move(p));
  }
  result.indifferent = indifferent_across(oracle, result.solutions, result.tol);
  return result;
}

double solve_equalize_1d(const std::function<double(double)>& m1,
                         const std::function<double(double)>& m2, double tol,
                         double lo, double hi) {
  require(hi > lo && tol > 0.0, ErrorCode::kInvalidArgument,
          "equalize needs lo < hi and tol > 0");
  constexpr int kSweep = 64;
  constexpr double kSlack = 1e-12;
  double prev1 = m1(lo), prev2 = m2(lo);
  for (int i = 1; i < kSweep; ++i) {
    const double x = lo + (hi - lo) * i / (kSweep - 1);
    const double a = m1(x), b = m2(x);
    require(a >= prev1 - kSlack && b <= prev2 + kSlack, ErrorCode::kNotMonotone,
            "contour functions are not monotone on the sweep; use the grid "
            "solver");
    prev1 = a;
    prev2 = b;
  }
  const auto gap = [&](double x) { return m1(x) - m2(x); };
  const double g_lo = gap(lo), g_hi = gap(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  require(g_lo < 0.0 && g_hi > 0.0, ErrorCode::kDomain,
          "contour functions do not cross on the interval");
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if (g == 0.0) return mid;
    (g < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double solve_equalize_fs(const FehrSchmidt& p1, const FehrSchmidt& p2,
                         double tol) {
  require(p1.own == 1 && p2.own == 2, ErrorCode::kInvalidArgument,
          "Fehr-Schmidt pair must be players 1 and 2");
  return solve_equalize_1d([&](double x) { return lower_measure_fs(p1, x); },
                           [&](double x) { return lower_measure_fs(p2, x); },
                           tol);
}

std::pair<double, double> solve_pareto_line(const Problem& problem,
                                            double tol) {
  const auto* a = problem.pref1.as<PublicGoodLog>();
  const auto* b = problem.pref2.as<PublicGoodLog>();
  require(problem.space.kind() == SpaceKind::kBudgetSurface3 && a && b,
          ErrorCode::kInvalidArgument,
          "pareto-line solver needs log public-good preferences on the "
          "budget surface");
  require(a->own == 1 && b->own == 2, ErrorCode::kInvalidArgument,
          "public-good preferences must own goods 1 and 2");
  const double K = a->theta + b->theta;
  require(K < 1.0, ErrorCode::kDomain, "theta1 + theta2 must be below 1");
  const double C = 1.0 - K;
  const auto gap = [&](double t) {
    return phi(t, a->theta, K) - phi(C - t, b->theta, K);
  };
  double lo = 0.0, hi = C;
  const double g_lo = gap(lo), g_hi = gap(hi);
  double x1;
  if (g_lo >= 0.0) {
    x1 = lo;
  } else if (g_hi <= 0.0) {
    x1 = hi;
  } else {
    x1 = -1.0;
    for (int it = 0; it < 400 && hi - lo > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double g = gap(mid);
      if (g == 0.0) {
        x1 = mid;
        break;
      }
      (g < 0.0 ? lo : hi) = mid;
    }
    if (x1 < 0.0) x1 = 0.5 * (lo + hi);
  }
  return {x1, C - x1};
}

}  // namespace compromise
