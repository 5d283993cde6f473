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

#include "core/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace compromise {
namespace {

// Length of {y in [lo, hi] : f(y) <= level} for a piecewise-linear f.
double pwl_lower_length(const PiecewiseLinear1D& f, double level, double lo,
                        double hi) {
  const double slack = 1e-12 * std::max(1.0, std::abs(level));
  double acc = 0.0;
  for (std::size_t i = 1; i < f.knots.size(); ++i) {
    double x0 = f.knots[i - 1].first, u0 = f.knots[i - 1].second;
    double x1 = f.knots[i].first, u1 = f.knots[i].second;
    const double a = std::max(x0, lo);
    const double b = std::min(x1, hi);
    if (b <= a) continue;
    // Restrict the segment to [a, b].
    const double slope = (u1 - u0) / (x1 - x0);
    const double ua = u0 + slope * (a - x0);
    const double ub = u0 + slope * (b - x0);
    const bool a_in = ua <= level + slack;
    const bool b_in = ub <= level + slack;
    if (a_in && b_in) {
      acc += b - a;
    } else if (a_in || b_in) {
      double t = a + (level - ua) / (ub - ua) * (b - a);
      t = std::clamp(t, a, b);
      acc += a_in ? t - a : b - t;
    }
  }
  return acc;
}

PiecewiseLinear1D euclidean_as_pwl(const Euclidean& e, double lo, double hi) {
  const double a = e.ideal[0];
  PiecewiseLinear1D f;
  f.knots.emplace_back(lo, -std::abs(lo - a));
  if (a > lo && a < hi) f.knots.emplace_back(a, 0.0);
  f.knots.emplace_back(hi, -std::abs(hi - a));
  return f;
}

double lebesgue_factor(const PolicySpace& space, const MeasureSpec& m) {
  return m.kind() == MeasureKind::kLebesgueNormalized
             ? m.scale() / space.chart_volume()
             : m.scale();
}

double fs_player_one(double alpha, double beta, double x) {
  const double a2 = 1.0 + 2.0 * alpha;
  if (x < alpha / a2) return a2 / (2.0 * alpha) * x * x;
  if (x <= 0.5) {
    const double u = a2 * x - alpha;
    const double e = 1.0 - 2.0 * x;
    return u * u / (2.0 * (1.0 - beta)) + 0.25 - 0.25 * a2 * e * e;
  }
  const double r = 1.0 - x;
  return 0.5 - (1.0 - 2.0 * beta) / (2.0 * (1.0 - beta)) * r * r;
}

}  // namespace

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::kMonteCarlo: return "mc";
    case Backend::kGrid: return "grid";
    case Backend::kExact: return "exact";
  }
  return "unknown";
}

MeasureEstimate lower_measure_mc(const Preference& pref,
                                 const PolicySpace& space, const MeasureSpec& m,
                                 const Point& x, std::size_t n,
                                 std::uint64_t seed) {
  require(n >= 100, ErrorCode::kInvalidArgument,
          "Monte Carlo contour estimate needs n >= 100");
  require(contains(space, x), ErrorCode::kDomain,
          "point " + to_string(x) + " is outside " + space.describe());
  const double level = pref.utility(x);
  const auto points = sample(space, m, seed, n);
  std::size_t hits = 0;
  for (const auto& y : points) {
    if (pref.utility(y) <= level) ++hits;
  }
  const double total = total_measure(space, m);
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {total * p, total * std::sqrt(p * (1.0 - p) / static_cast<double>(n)),
          Backend::kMonteCarlo};
}

MeasureEstimate lower_measure_grid(const Preference& pref,
                                   const PolicySpace& space,
                                   const MeasureSpec& m, const Point& x,
                                   std::size_t resolution) {
  require(contains(space, x), ErrorCode::kDomain,
          "point " + to_string(x) + " is outside " + space.describe());
  const double level = pref.utility(x);
  double acc = 0.0;
  for (const auto& c : grid(space, m, resolution)) {
    if (pref.utility(c.point) <= level) acc += c.weight;
  }
  return {acc, 0.0, Backend::kGrid};
}

double lower_measure_pwl1d(const Preference& pref, double x) {
  const auto* f = pref.as<PiecewiseLinear1D>();
  require(f != nullptr, ErrorCode::kInvalidArgument,
          "exact 1D contour needs a piecewise-linear utility");
  require(f->knots.size() >= 2, ErrorCode::kInvalidArgument, "malformed knots");
  const double level = pref.utility(Point{x});
  return pwl_lower_length(*f, level, f->knots.front().first,
                          f->knots.back().first);
}

double lower_measure_fs(const FehrSchmidt& params, double x_share) {
  require(params.beta < 0.5, ErrorCode::kDomain,
          "Fehr-Schmidt closed form requires beta < 1/2");
  require(params.alpha > 0.0, ErrorCode::kDomain,
          "Fehr-Schmidt closed form requires alpha > 0");
  require(x_share >= -kContainsSlack && x_share <= 1.0 + kContainsSlack,
          ErrorCode::kDomain, "budget share must lie in [0, 1]");
  const double x = std::clamp(x_share, 0.0, 1.0);
  // Player 2's formulas are player 1's mirrored through x -> 1 - x.
  return params.own == 1 ? fs_player_one(params.alpha, params.beta, x)
                         : fs_player_one(params.alpha, params.beta, 1.0 - x);
}

double phi(double x0, double theta, double K) {
  require(theta > 0.0 && std::isfinite(theta), ErrorCode::kDomain,
          "phi requires theta > 0");
  require(K > 0.0 && K <= 1.0, ErrorCode::kDomain, "phi requires K in (0, 1]");
  require(x0 >= -kContainsSlack && x0 <= 1.0 - K + 1e-9, ErrorCode::kDomain,
          "phi requires x0 in [0, 1 - K]");
  const auto curve = [=](double t) { return K * std::exp((x0 - t) / theta); };
  const auto line = [](double t) { return 1.0 - t; };
  const auto gap = [&](double t) { return line(t) - curve(t); };
  const double tol = 0.25e-9;
  // gap is concave with gap(1) < 0: the exponential branch is active on the
  // interval where gap > 0, and the line elsewhere.
  const double peak = std::clamp(x0 - theta * std::log(theta / K), 0.0, 1.0);
  if (gap(peak) <= 0.0) return 0.5;
  const double a = gap(0.0) >= 0.0 ? 0.0 : bisect_root(gap, 0.0, peak);
  const double b = bisect_root(gap, peak, 1.0);
  double acc = integrate_adaptive(curve, a, b, tol).value;
  if (a > 0.0) acc += integrate_adaptive(line, 0.0, a, tol).value;
  acc += integrate_adaptive(line, b, 1.0, tol).value;
  return acc;
}

bool exact_available(const Preference& pref, const PolicySpace& space,
                     const MeasureSpec& m) {
  if (m.kind() == MeasureKind::kDensity) return false;
  if (pref.as<PiecewiseLinear1D>() || pref.as<Euclidean>()) {
    return space.kind() == SpaceKind::kInterval;
  }
  if (const auto* fs = pref.as<FehrSchmidt>()) {
    return space.kind() == SpaceKind::kUnitTriangle && fs->beta < 0.5;
  }
  if (pref.as<PublicGoodLog>()) {
    return space.kind() == SpaceKind::kBudgetSurface3;
  }
  return false;
}

double lower_measure_exact(const Preference& pref, const PolicySpace& space,
                           const MeasureSpec& m, const Point& x) {
  require(exact_available(pref, space, m), ErrorCode::kInvalidArgument,
          "exact contour backend unavailable for " + pref.kind_name() + " on " +
              space.describe() + " with " + measure_kind_name(m.kind()));
  require(contains(space, x), ErrorCode::kDomain,
          "point " + to_string(x) + " is outside " + space.describe());
  const double factor = lebesgue_factor(space, m);
  if (const auto* f = pref.as<PiecewiseLinear1D>()) {
    return factor * pwl_lower_length(*f, pref.utility(x), space.chart_lo(0),
                                     space.chart_hi(0));
  }
  if (const auto* e = pref.as<Euclidean>()) {
    const double lo = space.chart_lo(0), hi = space.chart_hi(0);
    return factor * pwl_lower_length(euclidean_as_pwl(*e, lo, hi),
                                     pref.utility(x), lo, hi);
  }
  if (const auto* fs = pref.as<FehrSchmidt>()) {
    require(std::abs(x[0] + x[1] - 1.0) <= 1e-9, ErrorCode::kDomain,
            "Fehr-Schmidt closed form holds only on the budget line");
    return factor * lower_measure_fs(*fs, x[0]);
  }
  const auto* pg = pref.as<PublicGoodLog>();
  const double g = x[2];
  if (g < kPublicGoodMinG) return 0.0;
  const double own = pg->own == 1 ? x[0] : x[1];
  return factor * phi(std::max(own, 0.0), pg->theta, std::min(g, 1.0));
}

ContourTable ContourTable::from_grid(const Preference& pref,
                                     std::span<const GridCell> cells) {
  std::vector<std::pair<double, double>> uw;
  uw.reserve(cells.size());
  for (const auto& c : cells) uw.emplace_back(pref.utility(c.point), c.weight);
  std::sort(uw.begin(), uw.end());
  ContourTable t;
  t.utils_.reserve(uw.size());
  t.prefix_.reserve(uw.size());
  double acc = 0.0;
  for (const auto& [u, w] : uw) {
    acc += w;
    t.utils_.push_back(u);
    t.prefix_.push_back(acc);
  }
  require(!t.utils_.empty(), ErrorCode::kInvalidArgument, "empty contour table");
  return t;
}

ContourTable ContourTable::from_samples(const Preference& pref,
                                        std::span<const Point> points,
                                        double total) {
  require(!points.empty(), ErrorCode::kInvalidArgument, "empty contour table");
  ContourTable t;
  t.utils_.reserve(points.size());
  for (const auto& p : points) t.utils_.push_back(pref.utility(p));
  std::sort(t.utils_.begin(), t.utils_.end());
  const double w = total / static_cast<double>(points.size());
  t.prefix_.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    t.prefix_[i] = w * static_cast<double>(i + 1);
  }
  return t;
}

double ContourTable::lower(double level) const {
  const auto it = std::upper_bound(utils_.begin(), utils_.end(), level);
  if (it == utils_.begin()) return 0.0;
  return prefix_[static_cast<std::size_t>(it - utils_.begin()) - 1];
}

double ContourTable::strict_upper(double level) const {
  return total() - lower(level);
}

double ContourTable::band(double level, double delta) const {
  // Weight with level - delta < u < level + delta.
  const auto hi = std::lower_bound(utils_.begin(), utils_.end(), level + delta);
  const auto lo = std::upper_bound(utils_.begin(), utils_.end(), level - delta);
  if (hi <= lo) return 0.0;
  const auto at = [&](auto it) {
    return it == utils_.begin()
               ? 0.0
               : prefix_[static_cast<std::size_t>(it - utils_.begin()) - 1];
  };
  return at(hi) - at(lo);
}

TrimmedContour epsilon_trim(const Preference& pref, const Point& x,
                            std::span<const GridCell> cells, double eps) {
  require(eps > 0.0, ErrorCode::kInvalidArgument, "trim eps must be positive");
  const double level = pref.utility(x);
  std::vector<std::pair<double, std::size_t>> lower;  // (u, index)
  double lower_mass = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double u = pref.utility(cells[i].point);
    if (u <= level) {
      lower.emplace_back(u, i);
      lower_mass += cells[i].weight;
    }
  }
  require(eps <= lower_mass, ErrorCode::kInvalidArgument,
          "trim eps exceeds the lower contour measure");
  // Closest-to-level first; ties share a fate so the cut is a utility level.
  std::sort(lower.begin(), lower.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });

  TrimmedContour out;
  out.apex = x;
  std::size_t cut = 0;
  double removed = 0.0;
  while (cut < lower.size()) {
    std::size_t end = cut;
    double group = 0.0;
    while (end < lower.size() && lower[end].first == lower[cut].first) {
      group += cells[lower[end].second].weight;
      ++end;
    }
    const bool tied_with_apex = lower[cut].first == level;
    if (removed + group > eps) {
      require(!tied_with_apex, ErrorCode::kNumeric,
              "indifference set at the apex outweighs the trim budget");
      break;
    }
    removed += group;
    cut = end;
  }
  require(cut < lower.size(), ErrorCode::kInvalidArgument,
          "trim removes the whole lower contour set");
  out.delta = level - lower[cut].first;
  out.removed = removed;
  for (std::size_t k = cut; k < lower.size(); ++k) {
    out.members.push_back(lower[k].second);
    out.mass += cells[lower[k].second].weight;
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

ThinIndifferenceReport thin_indifference_check(
    const Preference& pref, const PolicySpace& space, const MeasureSpec& m,
    const Point& x, std::size_t n, std::uint64_t seed, double delta_coarse,
    double delta_fine) {
  require(delta_fine > 0.0 && delta_fine < delta_coarse,
          ErrorCode::kInvalidArgument, "need 0 < delta_fine < delta_coarse");
  const auto points = sample(space, m, seed, n);
  const auto table =
      ContourTable::from_samples(pref, points, total_measure(space, m));
  const double spread =
      std::max(table.max_utility() - table.min_utility(), 1e-300);
  const double level = pref.utility(x);
  ThinIndifferenceReport r;
  r.band_coarse = table.band(level, delta_coarse * spread);
  r.band_fine = table.band(level, delta_fine * spread);
  const double expected = delta_fine / delta_coarse;
  if (r.band_coarse > 0.0) {
    r.ratio = r.band_fine / r.band_coarse;
    // Linear decay gives ratio ~ delta_fine / delta_coarse; allow 2.5x slack.
    r.passed = r.ratio <= 2.5 * expected;
  } else {
    r.ratio = 0.0;
    r.passed = r.band_fine == 0.0;
  }
  return r;
}

}  // namespace compromise
