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

#ifndef COMPROMISE_CORE_QUADRATURE_HPP_
#define COMPROMISE_CORE_QUADRATURE_HPP_

#include <cstddef>
#include <functional>

namespace compromise {

struct QuadratureResult {
  double value;
  double abs_error;
  std::size_t intervals;
};

// Globally adaptive Gauss-Kronrod (7/15) integration of a smooth integrand.
// Throws kNumeric when `abs_tol` is not met within `max_intervals`.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    std::size_t max_intervals = 500);

// Root of a continuous f on [a, b] with f(a), f(b) of opposite sign.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double tol = 1e-15, int max_iter = 200);

}  // namespace compromise

#endif  // COMPROMISE_CORE_QUADRATURE_HPP_
