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

// Measures of lower contour sets L(x) = {y : u(y) <= u(x)}.
//
// Backends: Monte Carlo, midpoint grid, and exact (root finding on
// piecewise-linear 1D utilities, the Fehr-Schmidt closed forms on the budget
// line, and quadrature of the public-good integral).

#ifndef COMPROMISE_CORE_CONTOUR_HPP_
#define COMPROMISE_CORE_CONTOUR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "core/geometry.hpp"
#include "core/preferences.hpp"

namespace compromise {

enum class Backend { kMonteCarlo, kGrid, kExact };

const char* backend_name(Backend backend);

struct MeasureEstimate {
  double value = 0.0;
  double std_err = 0.0;  // zero for deterministic backends
  Backend backend = Backend::kExact;
};

MeasureEstimate lower_measure_mc(const Preference& pref,
                                 const PolicySpace& space, const MeasureSpec& m,
                                 const Point& x, std::size_t n,
                                 std::uint64_t seed);

// Deterministic Riemann sum; carries an O(1/resolution) bias.
MeasureEstimate lower_measure_grid(const Preference& pref,
                                   const PolicySpace& space,
                                   const MeasureSpec& m, const Point& x,
                                   std::size_t resolution);

// Length of {y in [first knot, last knot] : u(y) <= u(x)}.
double lower_measure_pwl1d(const Preference& pref, double x);

// Closed-form area of the lower contour set of (x_share, 1 - x_share) on the
// unit triangle, for the player named by `params.own`. Requires beta < 1/2.
double lower_measure_fs(const FehrSchmidt& params, double x_share);

// Integral over t in [0, 1] of min{1 - t, K exp((x0 - t) / theta)}: the area
// of the public-good lower contour set at own private good x0 and public
// good K.
double phi(double x0, double theta, double K);

// True when lower_measure_exact can evaluate this family on this space.
// Fehr-Schmidt is exact only on the budget line, checked per point.
bool exact_available(const Preference& pref, const PolicySpace& space,
                     const MeasureSpec& m);

double lower_measure_exact(const Preference& pref, const PolicySpace& space,
                           const MeasureSpec& m, const Point& x);

// Utilities of a weighted point cloud sorted once, so that lower contour
// measures at any level cost a binary search.
class ContourTable {
 public:
  static ContourTable from_grid(const Preference& pref,
                                std::span<const GridCell> cells);
  static ContourTable from_samples(const Preference& pref,
                                   std::span<const Point> points, double total);

  double lower(double level) const;         // weight with u <= level
  double strict_upper(double level) const;  // weight with u > level
  double band(double level, double delta) const;  // |u - level| < delta
  double total() const { return prefix_.empty() ? 0.0 : prefix_.back(); }
  std::size_t size() const { return utils_.size(); }
  double min_utility() const { return utils_.front(); }
  double max_utility() const { return utils_.back(); }

 private:
  std::vector<double> utils_;
  std::vector<double> prefix_;
};

// The epsilon-trimmed lower contour set: `apex` plus every grid cell with
// u(y) <= u(apex) - delta. Delta is the largest margin whose removed band
// weighs at most eps, so the apex is strictly best in the result.
struct TrimmedContour {
  Point apex;
  std::vector<std::size_t> members;  // indices into the grid
  double delta = 0.0;
  double mass = 0.0;         // weight of the retained cells
  double removed = 0.0;      // weight of the removed band
};

TrimmedContour epsilon_trim(const Preference& pref, const Point& x,
                            std::span<const GridCell> cells, double eps);

struct ThinIndifferenceReport {
  double band_coarse = 0.0;
  double band_fine = 0.0;
  double ratio = 0.0;
  bool passed = false;
};

// Monte Carlo measure of the indifference band {y : |u(y) - u(x)| < delta}
// at two widths, with delta expressed as a fraction of the sampled utility
// spread. Thin indifference makes the band vanish linearly.
ThinIndifferenceReport thin_indifference_check(
    const Preference& pref, const PolicySpace& space, const MeasureSpec& m,
    const Point& x, std::size_t n, std::uint64_t seed,
    double delta_coarse = 1e-2, double delta_fine = 1e-3);

}  // namespace compromise

#endif  // COMPROMISE_CORE_CONTOUR_HPP_
