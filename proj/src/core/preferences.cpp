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

#include "core/preferences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/error.hpp"

namespace compromise {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double pwl_value(const PiecewiseLinear1D& f, double x) {
  const auto& k = f.knots;
  const double lo = k.front().first;
  const double hi = k.back().first;
  require(x >= lo - kContainsSlack && x <= hi + kContainsSlack,
          ErrorCode::kDomain,
          "x = " + fmt(x) + " outside the knot range [" + fmt(lo) + ", " +
              fmt(hi) + "]");
  if (x <= lo) return k.front().second;
  if (x >= hi) return k.back().second;
  auto it = std::upper_bound(
      k.begin(), k.end(), x,
      [](double v, const std::pair<double, double>& kn) { return v < kn.first; });
  const auto& [x1, u1] = *it;
  const auto& [x0, u0] = *(it - 1);
  if (x == x0) return u0;
  const double t = (x - x0) / (x1 - x0);
  return u0 + t * (u1 - u0);
}

void require_dim(const Point& p, std::size_t d, const char* family) {
  require(p.dim() == d, ErrorCode::kDomain,
          std::string(family) + " utility expects a point of dimension " +
              std::to_string(d) + ", got " + std::to_string(p.dim()));
}

}  // namespace

Preference Preference::piecewise_linear(
    std::vector<std::pair<double, double>> knots) {
  require(knots.size() >= 2, ErrorCode::kInvalidArgument,
          "piecewise-linear utility needs at least two knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    require(std::isfinite(knots[i].first) && std::isfinite(knots[i].second),
            ErrorCode::kInvalidArgument, "knots must be finite");
    if (i > 0) {
      require(knots[i].first > knots[i - 1].first, ErrorCode::kInvalidArgument,
              "knot abscissae must be strictly increasing");
    }
  }
  return Preference(PiecewiseLinear1D{std::move(knots)});
}

Preference Preference::euclidean(Point ideal) {
  require(ideal.dim() >= 1, ErrorCode::kInvalidArgument,
          "Euclidean ideal point is empty");
  for (double v : ideal.coords) {
    require(std::isfinite(v), ErrorCode::kInvalidArgument,
            "Euclidean ideal point must be finite");
  }
  return Preference(Euclidean{std::move(ideal)});
}

Preference Preference::linear_vnm(std::vector<double> v) {
  require(v.size() >= 2, ErrorCode::kInvalidArgument,
          "vN-M utility needs at least two outcomes");
  for (double x : v) {
    require(std::isfinite(x), ErrorCode::kInvalidArgument,
            "vN-M utilities must be finite");
  }
  return Preference(LinearVNM{std::move(v)});
}

Preference Preference::fehr_schmidt(double alpha, double beta, int own) {
  require(own == 1 || own == 2, ErrorCode::kInvalidArgument,
          "Fehr-Schmidt own index must be 1 or 2");
  require(std::isfinite(alpha) && std::isfinite(beta),
          ErrorCode::kInvalidArgument, "Fehr-Schmidt parameters must be finite");
  require(beta > 0.0 && beta < 1.0, ErrorCode::kInvalidArgument,
          "Fehr-Schmidt requires 0 < beta < 1");
  require(beta <= alpha, ErrorCode::kInvalidArgument,
          "Fehr-Schmidt: beta <= alpha violated (beta = " + fmt(beta) +
              ", alpha = " + fmt(alpha) + ")");
  return Preference(FehrSchmidt{alpha, beta, own});
}

Preference Preference::public_good_log(double theta, int own) {
  require(own == 1 || own == 2, ErrorCode::kInvalidArgument,
          "public-good own index must be 1 or 2");
  require(std::isfinite(theta) && theta > 0.0, ErrorCode::kInvalidArgument,
          "public-good theta must be positive");
  return Preference(PublicGoodLog{theta, own});
}

Preference Preference::custom(std::function<double(const Point&)> fn,
                              std::string label) {
  require(static_cast<bool>(fn), ErrorCode::kInvalidArgument,
          "custom preference needs a callback");
  return Preference(Custom{std::move(fn), std::move(label)});
}

std::string Preference::kind_name() const {
  return std::visit(
      Overloaded{
          [](const PiecewiseLinear1D&) { return std::string("piecewise_linear"); },
          [](const Euclidean&) { return std::string("euclidean"); },
          [](const LinearVNM&) { return std::string("linear_vnm"); },
          [](const FehrSchmidt&) { return std::string("fehr_schmidt"); },
          [](const PublicGoodLog&) { return std::string("public_good_log"); },
          [](const Custom&) { return std::string("custom"); },
      },
      family_);
}

std::string Preference::describe() const {
  return std::visit(
      Overloaded{
          [](const PiecewiseLinear1D& f) {
            std::string s = "piecewise_linear{";
            for (std::size_t i = 0; i < f.knots.size(); ++i) {
              if (i) s += ", ";
              s += fmt(f.knots[i].first) + ":" + fmt(f.knots[i].second);
            }
            return s + "}";
          },
          [](const Euclidean& f) { return "euclidean{ideal=" + to_string(f.ideal) + "}"; },
          [](const LinearVNM& f) {
            std::string s = "linear_vnm{";
            for (std::size_t i = 0; i < f.v.size(); ++i) s += (i ? ", " : "") + fmt(f.v[i]);
            return s + "}";
          },
          [](const FehrSchmidt& f) {
            return "fehr_schmidt{alpha=" + fmt(f.alpha) + ", beta=" + fmt(f.beta) +
                   ", own=" + std::to_string(f.own) + "}";
          },
          [](const PublicGoodLog& f) {
            return "public_good_log{theta=" + fmt(f.theta) +
                   ", own=" + std::to_string(f.own) + "}";
          },
          [](const Custom& f) { return "custom{" + f.label + "}"; },
      },
      family_);
}

double Preference::utility(const Point& p) const {
  return std::visit(
      Overloaded{
          [&](const PiecewiseLinear1D& f) {
            require_dim(p, 1, "piecewise-linear");
            return pwl_value(f, p[0]);
          },
          [&](const Euclidean& f) {
            require_dim(p, f.ideal.dim(), "Euclidean");
            return -distance(p, f.ideal);
          },
          [&](const LinearVNM& f) {
            require_dim(p, f.v.size(), "vN-M");
            double acc = 0.0;
            for (std::size_t i = 0; i < f.v.size(); ++i) acc += f.v[i] * p[i];
            return acc;
          },
          [&](const FehrSchmidt& f) {
            require_dim(p, 2, "Fehr-Schmidt");
            const double mine = f.own == 1 ? p[0] : p[1];
            const double theirs = f.own == 1 ? p[1] : p[0];
            return mine - f.alpha * std::max(theirs - mine, 0.0) -
                   f.beta * std::max(mine - theirs, 0.0);
          },
          [&](const PublicGoodLog& f) {
            require_dim(p, 3, "public-good");
            const double g = p[2];
            if (g < kPublicGoodMinG) return kPublicGoodFloor;
            return (f.own == 1 ? p[0] : p[1]) + f.theta * std::log(g);
          },
          [&](const Custom& f) {
            const double u = f.fn(p);
            require(std::isfinite(u), ErrorCode::kDomain,
                    "custom utility returned a non-finite value at " + to_string(p));
            return u;
          },
      },
      family_);
}

Ordering prefers(const Preference& pref, const Point& a, const Point& b) {
  const double ua = pref.utility(a);
  const double ub = pref.utility(b);
  if (ua > ub) return Ordering::kFirstBetter;
  if (ub > ua) return Ordering::kSecondBetter;
  return Ordering::kIndifferent;
}

void check_compatible(const Preference& pref, const PolicySpace& space) {
  const auto bad = [&](const std::string& why) {
    fail(ErrorCode::kDomain, pref.kind_name() + " preference on " +
                                 space.describe() + ": " + why);
  };
  std::visit(
      Overloaded{
          [&](const PiecewiseLinear1D& f) {
            if (space.kind() != SpaceKind::kInterval) bad("needs an interval");
            if (f.knots.front().first > space.chart_lo(0) + kContainsSlack ||
                f.knots.back().first < space.chart_hi(0) - kContainsSlack) {
              bad("knots do not cover the interval");
            }
          },
          [&](const Euclidean& f) {
            if (f.ideal.dim() != space.embed_dim()) bad("ideal point dimension mismatch");
          },
          [&](const LinearVNM& f) {
            if (space.kind() != SpaceKind::kProbabilitySimplex) bad("needs a probability simplex");
            if (f.v.size() != space.embed_dim()) bad("utility vector length mismatch");
          },
          [&](const FehrSchmidt&) {
            if (space.kind() != SpaceKind::kUnitTriangle) bad("needs the unit triangle");
          },
          [&](const PublicGoodLog&) {
            if (space.kind() != SpaceKind::kBudgetSurface3) bad("needs the budget surface");
          },
          [&](const Custom&) {},
      },
      pref.family());
}

}  // namespace compromise
