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

// Policy spaces, measures on them, sampling and midpoint grids.
//
// Every space is handled through a chart: a box in R^d, optionally cut by the
// corner-simplex constraint sum(chart) <= 1. Points are reported in embedding
// coordinates (barycentric for the probability simplex, (x1, x2, g) for the
// budget surface), while grids, sampling and measures live in the chart.

#ifndef COMPROMISE_CORE_GEOMETRY_HPP_
#define COMPROMISE_CORE_GEOMETRY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace compromise {

inline constexpr double kContainsSlack = 1e-12;

struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}
  Point(std::initializer_list<double> c) : coords(c) {}

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }
  bool operator==(const Point&) const = default;
};

double distance(const Point& a, const Point& b);
std::string to_string(const Point& p);

enum class SpaceKind {
  kInterval,
  kBox,
  kUnitTriangle,
  kProbabilitySimplex,
  kBudgetSurface3,
};

const char* space_kind_name(SpaceKind kind);

class PolicySpace {
 public:
  static PolicySpace interval(double lo, double hi);
  static PolicySpace box(std::vector<std::pair<double, double>> bounds);
  static PolicySpace unit_triangle();
  static PolicySpace probability_simplex(std::size_t outcomes);
  static PolicySpace budget_surface();

  SpaceKind kind() const { return kind_; }
  // Intrinsic dimension, equal to the chart dimension.
  std::size_t dim() const { return lo_.size(); }
  // Number of coordinates of a Point in this space.
  std::size_t embed_dim() const;
  bool simplex_cut() const { return simplex_cut_; }
  double chart_lo(std::size_t axis) const { return lo_[axis]; }
  double chart_hi(std::size_t axis) const { return hi_[axis]; }
  // Lebesgue volume of the chart region.
  double chart_volume() const;

  Point embed(std::span<const double> chart) const;
  std::vector<double> chart_of(const Point& p) const;
  bool chart_contains(std::span<const double> chart,
                      double slack = kContainsSlack) const;
  // Projects a chart vector into the region: clamps to the box, then scales
  // toward the origin if the simplex cut is violated.
  std::vector<double> clamp_chart(std::vector<double> chart) const;

  std::string describe() const;

 private:
  PolicySpace(SpaceKind kind, std::vector<double> lo, std::vector<double> hi,
              bool simplex_cut)
      : kind_(kind), lo_(std::move(lo)), hi_(std::move(hi)),
        simplex_cut_(simplex_cut) {}

  SpaceKind kind_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  bool simplex_cut_;
};

// Throws kDomain on dimension mismatch.
bool contains(const PolicySpace& space, const Point& p);

enum class MeasureKind { kLebesgueRaw, kLebesgueNormalized, kDensity };

const char* measure_kind_name(MeasureKind kind);

using DensityFn = std::function<double(const Point&)>;

// A non-atomic, full-support measure. Density weights are taken relative to
// raw Lebesgue measure in the chart and must be strictly positive.
class MeasureSpec {
 public:
  static MeasureSpec lebesgue_raw();
  static MeasureSpec lebesgue_normalized();
  // `bound`, when positive, is an upper bound on the density used by
  // rejection sampling; otherwise it is estimated from a grid scan.
  static MeasureSpec density(DensityFn weight, double bound = 0.0);

  // Positive rescaling; the compromise argmax is invariant under it.
  MeasureSpec scaled(double factor) const;

  MeasureKind kind() const { return kind_; }
  double scale() const { return scale_; }
  const DensityFn& weight() const { return weight_; }
  double bound() const { return bound_; }

 private:
  MeasureKind kind_ = MeasureKind::kLebesgueRaw;
  double scale_ = 1.0;
  DensityFn weight_;
  double bound_ = 0.0;
};

double total_measure(const PolicySpace& space, const MeasureSpec& m);

// i.i.d. draws from m restricted to the space, reproducible for a seed.
std::vector<Point> sample(const PolicySpace& space, const MeasureSpec& m,
                          std::uint64_t seed, std::size_t n);

struct GridCell {
  Point point;
  double weight;
};

inline constexpr std::size_t kDefaultGridCap = std::size_t{1} << 24;

// Cell-centred lattice with `resolution` cells per chart axis. Cells cut by
// the simplex constraint keep their exact clipped volume and a representative
// point inside the clipped region. Weights sum to total_measure.
std::vector<GridCell> grid(const PolicySpace& space, const MeasureSpec& m,
                           std::size_t resolution,
                           std::size_t cap = kDefaultGridCap);

// Largest cell weight of a grid; the natural unit for grid bias.
double max_cell_weight(const std::vector<GridCell>& cells);

}  // namespace compromise

#endif  // COMPROMISE_CORE_GEOMETRY_HPP_
