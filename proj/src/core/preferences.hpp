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

#ifndef COMPROMISE_CORE_PREFERENCES_HPP_
#define COMPROMISE_CORE_PREFERENCES_HPP_

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "core/geometry.hpp"

namespace compromise {

// Utility assigned to the public-good family when g falls below the clamp.
// Sits below every attainable utility so g = 0 behaves like log(0).
inline constexpr double kPublicGoodFloor = -1e6;
inline constexpr double kPublicGoodMinG = 1e-12;

struct PiecewiseLinear1D {
  std::vector<std::pair<double, double>> knots;  // (x, u), x strictly increasing
};

struct Euclidean {
  Point ideal;
};

struct LinearVNM {
  std::vector<double> v;  // utility of each pure outcome
};

struct FehrSchmidt {
  double alpha;
  double beta;
  int own;  // 1 or 2
};

struct PublicGoodLog {
  double theta;
  int own;  // 1 or 2
};

struct Custom {
  std::function<double(const Point&)> fn;
  std::string label;
};

enum class Ordering { kFirstBetter, kSecondBetter, kIndifferent };

class Preference {
 public:
  using Family = std::variant<PiecewiseLinear1D, Euclidean, LinearVNM,
                              FehrSchmidt, PublicGoodLog, Custom>;

  // Factories validate parameters and throw kInvalidArgument.
  static Preference piecewise_linear(std::vector<std::pair<double, double>> knots);
  static Preference euclidean(Point ideal);
  static Preference linear_vnm(std::vector<double> v);
  static Preference fehr_schmidt(double alpha, double beta, int own);
  static Preference public_good_log(double theta, int own);
  static Preference custom(std::function<double(const Point&)> fn,
                           std::string label = "custom");

  const Family& family() const { return family_; }
  std::string kind_name() const;
  std::string describe() const;

  template <typename T>
  const T* as() const { return std::get_if<T>(&family_); }

  double utility(const Point& p) const;

 private:
  explicit Preference(Family f) : family_(std::move(f)) {}
  Family family_;
};

// Strict ordering by utility, indifference on exact equality.
Ordering prefers(const Preference& pref, const Point& a, const Point& b);

// Throws kDomain when the preference cannot be evaluated on the space.
void check_compatible(const Preference& pref, const PolicySpace& space);

}  // namespace compromise

#endif  // COMPROMISE_CORE_PREFERENCES_HPP_
