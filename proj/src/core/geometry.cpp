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

#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "core/error.hpp"

namespace compromise {
namespace {

double factorial(std::size_t d) {
  double f = 1.0;
  for (std::size_t k = 2; k <= d; ++k) f *= static_cast<double>(k);
  return f;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

// Volume of {y in [0,1]^d : sum(y) <= s}.
double unit_cube_below(std::size_t d, double s) {
  if (s <= 0.0) return 0.0;
  if (s >= static_cast<double>(d)) return 1.0;
  double acc = 0.0;
  for (std::size_t k = 0; k <= d && static_cast<double>(k) < s; ++k) {
    const double term = binomial(d, k) * std::pow(s - static_cast<double>(k),
                                                  static_cast<double>(d));
    acc += (k % 2 == 0) ? term : -term;
  }
  return acc / factorial(d);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> draw_chart_uniform(const PolicySpace& space,
                                       std::mt19937_64& rng) {
  const std::size_t d = space.dim();
  std::vector<double> chart(d);
  if (space.simplex_cut()) {
    // Normalised exponential spacings are uniform on the corner simplex.
    std::vector<double> e(d + 1);
    double sum = 0.0;
    for (auto& v : e) {
      v = -std::log1p(-uniform01(rng));
      sum += v;
    }
    for (std::size_t a = 0; a < d; ++a) chart[a] = e[a] / sum;
  } else {
    for (std::size_t a = 0; a < d; ++a) {
      chart[a] = space.chart_lo(a) +
                 uniform01(rng) * (space.chart_hi(a) - space.chart_lo(a));
    }
  }
  return chart;
}

std::size_t density_scan_resolution(std::size_t d) {
  switch (d) {
    case 1: return 4096;
    case 2: return 512;
    case 3: return 64;
    default: return 16;
  }
}

// Raw Lebesgue cells, before measure-specific weighting.
std::vector<GridCell> raw_grid(const PolicySpace& space, std::size_t resolution,
                               std::size_t cap) {
  require(resolution >= 2, ErrorCode::kInvalidArgument,
          "grid resolution must be at least 2");
  const std::size_t d = space.dim();
  double total_cells = 1.0;
  for (std::size_t a = 0; a < d; ++a) total_cells *= resolution;
  require(total_cells <= static_cast<double>(cap), ErrorCode::kCapacity,
          "grid of " + std::to_string(resolution) + "^" + std::to_string(d) +
              " cells exceeds the cell cap of " + std::to_string(cap));

  std::vector<double> h(d);
  double cell_volume = 1.0;
  for (std::size_t a = 0; a < d; ++a) {
    h[a] = (space.chart_hi(a) - space.chart_lo(a)) / resolution;
    cell_volume *= h[a];
  }

  std::vector<GridCell> cells;
  cells.reserve(space.simplex_cut()
                    ? static_cast<std::size_t>(total_cells / factorial(d)) + 64
                    : static_cast<std::size_t>(total_cells));
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> chart(d);
  const auto n = static_cast<std::size_t>(total_cells);
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t rem = flat;
    std::size_t index_sum = 0;
    for (std::size_t a = 0; a < d; ++a) {
      idx[a] = rem % resolution;
      rem /= resolution;
      index_sum += idx[a];
    }
    double fraction = 1.0;
    double offset = 0.5;
    if (space.simplex_cut()) {
      const double s = static_cast<double>(resolution) -
                       static_cast<double>(index_sum);
      if (s <= 0.0) continue;
      if (s < static_cast<double>(d)) {
        fraction = unit_cube_below(d, s);
        offset = std::min(0.5, s / static_cast<double>(d + 1));
      }
    }
    for (std::size_t a = 0; a < d; ++a) {
      chart[a] = space.chart_lo(a) + (static_cast<double>(idx[a]) + offset) * h[a];
    }
    cells.push_back({space.embed(chart), cell_volume * fraction});
  }
  return cells;
}

double density_integral(const PolicySpace& space, const DensityFn& w) {
  const auto cells = raw_grid(space, density_scan_resolution(space.dim()),
                              kDefaultGridCap);
  double acc = 0.0;
  for (const auto& c : cells) acc += c.weight * w(c.point);
  return acc;
}

}  // namespace

double distance(const Point& a, const Point& b) {
  require(a.dim() == b.dim(), ErrorCode::kDomain,
          "distance between points of different dimension");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

std::string to_string(const Point& p) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", p[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

const char* space_kind_name(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::kInterval: return "interval";
    case SpaceKind::kBox: return "box";
    case SpaceKind::kUnitTriangle: return "unit_triangle";
    case SpaceKind::kProbabilitySimplex: return "simplex";
    case SpaceKind::kBudgetSurface3: return "budget_surface";
  }
  return "unknown";
}

PolicySpace PolicySpace::interval(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
          ErrorCode::kInvalidArgument, "interval requires finite lo < hi");
  return PolicySpace(SpaceKind::kInterval, {lo}, {hi}, false);
}

PolicySpace PolicySpace::box(std::vector<std::pair<double, double>> bounds) {
  require(!bounds.empty(), ErrorCode::kInvalidArgument, "box needs an axis");
  std::vector<double> lo, hi;
  for (const auto& [l, h] : bounds) {
    require(std::isfinite(l) && std::isfinite(h) && l < h,
            ErrorCode::kInvalidArgument, "box requires finite lo < hi per axis");
    lo.push_back(l);
    hi.push_back(h);
  }
  return PolicySpace(SpaceKind::kBox, std::move(lo), std::move(hi), false);
}

PolicySpace PolicySpace::unit_triangle() {
  return PolicySpace(SpaceKind::kUnitTriangle, {0.0, 0.0}, {1.0, 1.0}, true);
}

PolicySpace PolicySpace::probability_simplex(std::size_t outcomes) {
  require(outcomes >= 2, ErrorCode::kInvalidArgument,
          "probability simplex needs at least 2 outcomes");
  return PolicySpace(SpaceKind::kProbabilitySimplex,
                     std::vector<double>(outcomes - 1, 0.0),
                     std::vector<double>(outcomes - 1, 1.0), true);
}

PolicySpace PolicySpace::budget_surface() {
  return PolicySpace(SpaceKind::kBudgetSurface3, {0.0, 0.0}, {1.0, 1.0}, true);
}

std::size_t PolicySpace::embed_dim() const {
  switch (kind_) {
    case SpaceKind::kProbabilitySimplex: return dim() + 1;
    case SpaceKind::kBudgetSurface3: return 3;
    default: return dim();
  }
}

double PolicySpace::chart_volume() const {
  if (simplex_cut_) return 1.0 / factorial(dim());
  double v = 1.0;
  for (std::size_t a = 0; a < dim(); ++a) v *= hi_[a] - lo_[a];
  return v;
}

Point PolicySpace::embed(std::span<const double> chart) const {
  require(chart.size() == dim(), ErrorCode::kDomain, "chart dimension mismatch");
  std::vector<double> c(chart.begin(), chart.end());
  if (kind_ == SpaceKind::kProbabilitySimplex ||
      kind_ == SpaceKind::kBudgetSurface3) {
    c.push_back(1.0 - std::accumulate(chart.begin(), chart.end(), 0.0));
  }
  return Point(std::move(c));
}

std::vector<double> PolicySpace::chart_of(const Point& p) const {
  require(p.dim() == embed_dim(), ErrorCode::kDomain,
          "point of dimension " + std::to_string(p.dim()) + " in a " +
              space_kind_name(kind_) + " of embedding dimension " +
              std::to_string(embed_dim()));
  return {p.coords.begin(), p.coords.begin() + static_cast<long>(dim())};
}

bool PolicySpace::chart_contains(std::span<const double> chart,
                                 double slack) const {
  if (chart.size() != dim()) return false;
  double sum = 0.0;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (!std::isfinite(chart[a])) return false;
    if (chart[a] < lo_[a] - slack || chart[a] > hi_[a] + slack) return false;
    sum += chart[a];
  }
  return !simplex_cut_ || sum <= 1.0 + slack;
}

std::vector<double> PolicySpace::clamp_chart(std::vector<double> chart) const {
  for (std::size_t a = 0; a < dim(); ++a) {
    chart[a] = std::clamp(chart[a], lo_[a], hi_[a]);
  }
  if (simplex_cut_) {
    const double sum = std::accumulate(chart.begin(), chart.end(), 0.0);
    if (sum > 1.0) {
      for (auto& v : chart) v /= sum;
    }
  }
  return chart;
}

std::string PolicySpace::describe() const {
  std::string out = space_kind_name(kind_);
  if (kind_ == SpaceKind::kInterval || kind_ == SpaceKind::kBox) {
    char buf[64];
    out += "[";
    for (std::size_t a = 0; a < dim(); ++a) {
      std::snprintf(buf, sizeof buf, "%s%g,%g", a ? "; " : "", lo_[a], hi_[a]);
      out += buf;
    }
    out += "]";
  } else if (kind_ == SpaceKind::kProbabilitySimplex) {
    out += "(" + std::to_string(embed_dim()) + ")";
  }
  return out;
}

bool contains(const PolicySpace& space, const Point& p) {
  require(p.dim() == space.embed_dim(), ErrorCode::kDomain,
          "point dimension " + std::to_string(p.dim()) +
              " does not match space dimension " +
              std::to_string(space.embed_dim()));
  for (double v : p.coords) {
    if (!std::isfinite(v)) return false;
  }
  switch (space.kind()) {
    case SpaceKind::kProbabilitySimplex:
    case SpaceKind::kBudgetSurface3: {
      double sum = 0.0;
      for (double v : p.coords) {
        if (v < -kContainsSlack) return false;
        sum += v;
      }
      return std::abs(sum - 1.0) <= kContainsSlack;
    }
    default:
      return space.chart_contains(p.coords);
  }
}

const char* measure_kind_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kLebesgueRaw: return "lebesgue_raw";
    case MeasureKind::kLebesgueNormalized: return "lebesgue_normalized";
    case MeasureKind::kDensity: return "density";
  }
  return "unknown";
}

MeasureSpec MeasureSpec::lebesgue_raw() { return MeasureSpec(); }

MeasureSpec MeasureSpec::lebesgue_normalized() {
  MeasureSpec m;
  m.kind_ = MeasureKind::kLebesgueNormalized;
  return m;
}

MeasureSpec MeasureSpec::density(DensityFn weight, double bound) {
  require(static_cast<bool>(weight), ErrorCode::kInvalidArgument,
          "density measure needs a weight function");
  MeasureSpec m;
  m.kind_ = MeasureKind::kDensity;
  m.weight_ = std::move(weight);
  m.bound_ = bound;
  return m;
}

MeasureSpec MeasureSpec::scaled(double factor) const {
  require(std::isfinite(factor) && factor > 0.0, ErrorCode::kInvalidArgument,
          "measure scale must be positive");
  MeasureSpec m = *this;
  m.scale_ *= factor;
  return m;
}

double total_measure(const PolicySpace& space, const MeasureSpec& m) {
  switch (m.kind()) {
    case MeasureKind::kLebesgueRaw:
      return space.chart_volume() * m.scale();
    case MeasureKind::kLebesgueNormalized:
      return m.scale();
    case MeasureKind::kDensity: {
      const double total = density_integral(space, m.weight());
      require(total > 0.0 && std::isfinite(total), ErrorCode::kDomain,
              "density integrates to a non-positive total");
      return total * m.scale();
    }
  }
  return 0.0;
}

std::vector<Point> sample(const PolicySpace& space, const MeasureSpec& m,
                          std::uint64_t seed, std::size_t n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "sample size must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(n);
  if (m.kind() != MeasureKind::kDensity) {
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(space.embed(draw_chart_uniform(space, rng)));
    }
    return out;
  }

  double bound = m.bound();
  if (bound <= 0.0) {
    const std::size_t res = std::max<std::size_t>(
        2, density_scan_resolution(space.dim()) / 4);
    for (const auto& c : raw_grid(space, res, kDefaultGridCap)) {
      bound = std::max(bound, m.weight()(c.point));
    }
    bound *= 1.25;
  }
  require(bound > 0.0, ErrorCode::kDomain, "density is not positive");

  std::uint64_t proposals = 0;
  while (out.size() < n) {
    Point p = space.embed(draw_chart_uniform(space, rng));
    ++proposals;
    if (uniform01(rng) * bound <= m.weight()(p)) out.push_back(std::move(p));
    if (proposals >= 1'000'000 &&
        static_cast<double>(out.size()) < 1e-6 * static_cast<double>(proposals)) {
      fail(ErrorCode::kNumeric, "density rejection acceptance fell below 1e-6");
    }
  }
  return out;
}

std::vector<GridCell> grid(const PolicySpace& space, const MeasureSpec& m,
                           std::size_t resolution, std::size_t cap) {
  auto cells = raw_grid(space, resolution, cap);
  switch (m.kind()) {
    case MeasureKind::kLebesgueRaw:
      if (m.scale() != 1.0) {
        for (auto& c : cells) c.weight *= m.scale();
      }
      break;
    case MeasureKind::kLebesgueNormalized: {
      const double f = m.scale() / space.chart_volume();
      for (auto& c : cells) c.weight *= f;
      break;
    }
    case MeasureKind::kDensity: {
      double acc = 0.0;
      for (auto& c : cells) {
        const double w = m.weight()(c.point);
        require(w > 0.0 && std::isfinite(w), ErrorCode::kDomain,
                "density must be strictly positive and finite");
        c.weight *= w;
        acc += c.weight;
      }
      const double f = total_measure(space, m) / acc;
      for (auto& c : cells) c.weight *= f;
      break;
    }
  }
  return cells;
}

double max_cell_weight(const std::vector<GridCell>& cells) {
  double w = 0.0;
  for (const auto& c : cells) w = std::max(w, c.weight);
  return w;
}

}  // namespace compromise
