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

#include "core/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace compromise {
namespace {

const std::set<std::string> kTopKeys = {
    "space.kind",      "space.params",          "measure.kind",
    "measure.scale",   "contour.backend",       "contour.n",
    "contour.resolution", "contour.seed",       "solver.resolution",
    "solver.refine_iters", "solver.tol",        "solver.search",
    "solver.n_check",  "mechanism.mode",        "mechanism.cap",
    "mechanism.eps_cells", "mechanism.tol_cells", "mechanism.resolution",
    "sample.n",        "seed",                  "output"};

const std::set<std::string> kPrefFields = {"kind", "knots", "ideal", "v",
                                           "alpha", "beta", "theta", "own"};

bool known_key(const std::string& key) {
  if (kTopKeys.count(key)) return true;
  for (const char* p : {"pref1.", "pref2."}) {
    if (key.rfind(p, 0) == 0 && kPrefFields.count(key.substr(6))) return true;
  }
  return false;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const std::string t = trim(s);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  require(ec == std::errc() && ptr == t.data() + t.size() && !t.empty(),
          ErrorCode::kConfig, what + ": expected a number, got '" + s + "'");
  return v;
}

std::uint64_t to_uint(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  const std::string t = trim(s);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  require(ec == std::errc() && ptr == t.data() + t.size() && !t.empty(),
          ErrorCode::kConfig,
          what + ": expected a nonnegative integer, got '" + s + "'");
  return v;
}

}  // namespace

std::vector<double> parse_doubles(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& tok : split(text, ',')) out.push_back(to_double(tok, what));
  return out;
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorCode::kConfig,
            where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(known_key(key), ErrorCode::kConfig,
            where + ": unknown key '" + key + "'");
    require(!value.empty(), ErrorCode::kConfig,
            where + ": empty value for '" + key + "'");
    require(!cfg.entries_.count(key), ErrorCode::kConfig,
            where + ": duplicate key '" + key + "'");
    cfg.entries_[key] = {value, line_no};
  }
  cfg.build();
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  require(known_key(key), ErrorCode::kConfig, "unknown key '" + key + "'");
  auto saved = entries_;
  entries_[key] = {trim(value), 0};
  try {
    build();
  } catch (...) {
    entries_ = std::move(saved);
    throw;
  }
}

void RunConfig::set_custom(int agent, Preference pref) {
  require(agent == 1 || agent == 2, ErrorCode::kInvalidArgument,
          "agent must be 1 or 2");
  auto saved = custom_[agent - 1];
  custom_[agent - 1] = std::move(pref);
  try {
    build();
  } catch (...) {
    custom_[agent - 1] = std::move(saved);
    throw;
  }
}

void RunConfig::build() {
  // Location prefix for messages about `key`.
  auto at = [&](const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end() || it->second.line == 0) return key;
    return "line " + std::to_string(it->second.line) + ": " + key;
  };
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second.value;
  };
  auto need = [&](const std::string& key) -> const std::string& {
    const std::string* v = get(key);
    require(v != nullptr, ErrorCode::kConfig, "missing required key '" + key + "'");
    return *v;
  };
  auto num = [&](const std::string& key, double def) {
    const std::string* v = get(key);
    return v ? to_double(*v, at(key)) : def;
  };
  auto count = [&](const std::string& key, std::uint64_t def) {
    const std::string* v = get(key);
    return v ? to_uint(*v, at(key)) : def;
  };
  // Runs a factory and rewrites its error as a config error at `key`.
  auto guarded = [&](const std::string& key, auto&& make) {
    try {
      return make();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kConfig) throw;
      fail(ErrorCode::kConfig, at(key) + ": " + e.what());
    }
  };

  seed_ = count("seed", 0);

  const std::string& kind = need("space.kind");
  const std::string* params = get("space.params");
  const PolicySpace space = guarded("space.kind", [&] {
    if (kind == "interval") {
      std::vector<double> b = params ? parse_doubles(*params, at("space.params"))
                                     : std::vector<double>{0.0, 1.0};
      require(b.size() == 2, ErrorCode::kConfig,
              at("space.params") + ": interval needs 'lo, hi'");
      return PolicySpace::interval(b[0], b[1]);
    }
    if (kind == "box") {
      require(params != nullptr, ErrorCode::kConfig,
              "missing required key 'space.params' for a box");
      std::vector<std::pair<double, double>> bounds;
      for (const auto& tok : split(*params, ',')) {
        const auto parts = split(tok, ':');
        require(parts.size() == 2, ErrorCode::kConfig,
                at("space.params") + ": box bounds are 'lo:hi, lo:hi, ...'");
        bounds.emplace_back(to_double(parts[0], at("space.params")),
                            to_double(parts[1], at("space.params")));
      }
      return PolicySpace::box(bounds);
    }
    if (kind == "unit_triangle") return PolicySpace::unit_triangle();
    if (kind == "simplex") {
      const std::uint64_t k = params ? to_uint(*params, at("space.params")) : 3;
      return PolicySpace::probability_simplex(k);
    }
    if (kind == "budget_surface") return PolicySpace::budget_surface();
    fail(ErrorCode::kConfig, at("space.kind") + ": unknown space kind '" + kind + "'");
  });

  MeasureSpec measure = MeasureSpec::lebesgue_normalized();
  if (const std::string* mk = get("measure.kind")) {
    if (*mk == "lebesgue_raw") {
      measure = MeasureSpec::lebesgue_raw();
    } else {
      require(*mk == "lebesgue_normalized", ErrorCode::kConfig,
              at("measure.kind") + ": unknown measure kind '" + *mk + "'");
    }
  }
  const double scale = num("measure.scale", 1.0);
  require(scale > 0.0, ErrorCode::kConfig, at("measure.scale") + ": must be positive");
  if (scale != 1.0) measure = measure.scaled(scale);

  auto make_pref = [&](int agent) -> Preference {
    const std::string p = "pref" + std::to_string(agent) + ".";
    if (custom_[agent - 1]) return *custom_[agent - 1];
    const std::string& k = need(p + "kind");
    return guarded(p + "kind", [&]() -> Preference {
      const int own = static_cast<int>(count(p + "own", static_cast<std::uint64_t>(agent)));
      if (k == "piecewise_linear") {
        std::vector<std::pair<double, double>> knots;
        for (const auto& tok : split(need(p + "knots"), ',')) {
          const auto xu = split(tok, ':');
          require(xu.size() == 2, ErrorCode::kConfig,
                  at(p + "knots") + ": knots are 'x:u, x:u, ...'");
          knots.emplace_back(to_double(xu[0], at(p + "knots")),
                             to_double(xu[1], at(p + "knots")));
        }
        return guarded(p + "knots", [&] { return Preference::piecewise_linear(knots); });
      }
      if (k == "euclidean") {
        return guarded(p + "ideal", [&] {
          return Preference::euclidean(Point(parse_doubles(need(p + "ideal"), at(p + "ideal"))));
        });
      }
      if (k == "linear_vnm") {
        return guarded(p + "v", [&] {
          return Preference::linear_vnm(parse_doubles(need(p + "v"), at(p + "v")));
        });
      }
      if (k == "fehr_schmidt") {
        const double alpha = to_double(need(p + "alpha"), at(p + "alpha"));
        const double beta = to_double(need(p + "beta"), at(p + "beta"));
        return guarded(p + "beta",
                       [&] { return Preference::fehr_schmidt(alpha, beta, own); });
      }
      if (k == "public_good_log") {
        const double theta = to_double(need(p + "theta"), at(p + "theta"));
        return guarded(p + "theta",
                       [&] { return Preference::public_good_log(theta, own); });
      }
      require(k != "custom", ErrorCode::kConfig,
              at(p + "kind") + ": custom preference needs a registered callback");
      fail(ErrorCode::kConfig, at(p + "kind") + ": unknown preference kind '" + k + "'");
    });
  };
  Preference pref1 = make_pref(1);
  Preference pref2 = make_pref(2);

  ContourSettings contour;
  if (const std::string* b = get("contour.backend")) {
    if (*b == "mc") contour.backend = Backend::kMonteCarlo;
    else if (*b == "grid") contour.backend = Backend::kGrid;
    else if (*b == "exact") contour.backend = Backend::kExact;
    else require(*b == "auto", ErrorCode::kConfig,
                 at("contour.backend") + ": expected auto, mc, grid or exact");
  }
  contour.n = count("contour.n", contour.n);
  contour.resolution = count("contour.resolution", contour.resolution);
  contour.seed = count("contour.seed", seed_);
  require(contour.n >= 100, ErrorCode::kConfig, at("contour.n") + ": must be >= 100");
  require(contour.resolution >= 1, ErrorCode::kConfig,
          at("contour.resolution") + ": must be positive");

  SearchDomain search = SearchDomain::kFull;
  if (const std::string* s = get("solver.search")) {
    if (*s == "pareto_line") search = SearchDomain::kParetoLine;
    else require(*s == "full", ErrorCode::kConfig,
                 at("solver.search") + ": expected full or pareto_line");
  }

  SolveOptions solver;
  solver.resolution = count("solver.resolution", solver.resolution);
  solver.refine_iters = count("solver.refine_iters", solver.refine_iters);
  solver.tol = num("solver.tol", solver.tol);
  solver.n_check = count("solver.n_check", solver.n_check);
  solver.seed = seed_;
  require(solver.resolution >= 8, ErrorCode::kConfig,
          at("solver.resolution") + ": must be >= 8");
  require(solver.refine_iters <= 12, ErrorCode::kConfig,
          at("solver.refine_iters") + ": must be <= 12");

  MechanismSettings mech;
  if (const std::string* m = get("mechanism.mode")) {
    if (*m == "exhaustive") mech.mode = MechanismMode::kExhaustive;
    else require(*m == "family", ErrorCode::kConfig,
                 at("mechanism.mode") + ": expected exhaustive or family");
  }
  mech.cap = count("mechanism.cap", mech.cap);
  mech.eps_cells = num("mechanism.eps_cells", mech.eps_cells);
  mech.tol_cells = num("mechanism.tol_cells", mech.tol_cells);
  mech.resolution = count("mechanism.resolution", mech.resolution);
  require(mech.cap >= 2 && mech.cap <= 20, ErrorCode::kConfig,
          at("mechanism.cap") + ": must lie in [2, 20]");
  require(mech.eps_cells > 0.0, ErrorCode::kConfig,
          at("mechanism.eps_cells") + ": must be positive");
  require(mech.tol_cells >= 0.0, ErrorCode::kConfig,
          at("mechanism.tol_cells") + ": must be nonnegative");

  const std::size_t sample_n = count("sample.n", sample_n_);
  require(sample_n >= 1, ErrorCode::kConfig, at("sample.n") + ": must be positive");

  Problem problem{space, measure, std::move(pref1), std::move(pref2), contour, search};
  guarded("space.kind", [&] {
    validate(problem);
    resolve_backend(problem);
    return 0;
  });

  problem_ = std::move(problem);
  solver_ = solver;
  mechanism_ = mech;
  sample_n_ = sample_n;
  const std::string* out = get("output");
  output_ = out ? *out : "";
}

}  // namespace compromise
