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

#include "core/runner.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>

#include "core/error.hpp"

namespace compromise {
namespace {

std::vector<std::string> point_header(std::size_t dim) {
  std::vector<std::string> h;
  for (std::size_t i = 1; i <= dim; ++i) h.push_back("x" + std::to_string(i));
  for (const char* c : {"m1", "m2", "value", "pass"}) h.emplace_back(c);
  return h;
}

std::vector<std::string> point_row(const Point& x, double m1, double m2,
                                   double value, bool pass) {
  std::vector<std::string> row;
  for (double c : x.coords) row.push_back(format_number(c));
  row.push_back(format_number(m1));
  row.push_back(format_number(m2));
  row.push_back(format_number(value));
  row.push_back(pass ? "1" : "0");
  return row;
}

std::string line(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string line(const char* fmt, ...) {
  char buf[1024];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return std::string(buf) + "\n";
}

std::string coords(const Point& p) { return to_string(p); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string RunReport::csv() const {
  std::string out;
  auto join = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  join(header);
  for (const auto& r : rows) join(r);
  return out;
}

RunReport run_solve(const RunConfig& cfg) {
  const Problem& p = cfg.problem();
  const auto r = solve_maxmin_grid(p, cfg.solver());
  const char* tag = backend_name(r.backend);
  RunReport rep;
  rep.header = point_header(p.space.embed_dim());
  rep.text += line("solve: %s, backend %s, resolution %zu, refine %zu, tol %.3g",
                   p.space.describe().c_str(), tag, cfg.solver().resolution,
                   cfg.solver().refine_iters, r.tol);
  for (std::size_t i = 0; i < r.solutions.size(); ++i) {
    const auto& c = r.checks[i];
    const bool pass = c.min_bound && c.pareto_ok && (!r.regular_ok || c.equal_measures);
    rep.text += line("  solution %zu: x = %s  m1 = %.9g  m2 = %.9g  value = %.9g "
                     "[%s, tol %.3g] %s",
                     i + 1, coords(r.solutions[i]).c_str(), c.m1, c.m2,
                     std::min(c.m1, c.m2), tag, r.tol, pass ? "pass" : "FAIL");
    rep.rows.push_back(point_row(r.solutions[i], c.m1, c.m2, std::min(c.m1, c.m2), pass));
    rep.passed = rep.passed && pass;
  }
  rep.text += line("  regular: %s  pareto: %s  indifferent across solutions: %s",
                   yes_no(r.regular_ok).c_str(), yes_no(r.pareto_ok).c_str(),
                   yes_no(r.indifferent).c_str());
  if (!r.regular_ok) {
    rep.text += "  measures differ at the optimum: the problem is not regular\n";
  }
  std::string trace = "  trace:";
  for (const auto& t : r.trace) {
    trace += " " + std::to_string(t.resolution) + ":" + format_number(t.best);
  }
  rep.text += trace + "\n";
  return rep;
}

RunReport run_verify(const RunConfig& cfg, const Point& at) {
  const Problem& p = cfg.problem();
  require(at.dim() == p.space.embed_dim(), ErrorCode::kConfig,
          "verify point needs " + std::to_string(p.space.embed_dim()) + " coordinates");
  const auto best = solve_maxmin_grid(p, cfg.solver());
  const ContourOracle oracle(p);
  const auto c = verify_compromise(p, oracle, at, best.tol, cfg.solver().n_check,
                                   cfg.solver().seed);
  const double value = std::min(c.m1, c.m2);
  const bool optimal = value >= best.value - best.tol;
  const bool structure = best.regular_ok ? c.passed() : (c.min_bound && c.pareto_ok);
  const bool pass = structure && optimal;
  const char* tag = backend_name(oracle.backend());
  RunReport rep;
  rep.header = point_header(p.space.embed_dim());
  rep.rows.push_back(point_row(at, c.m1, c.m2, value, pass));
  rep.passed = pass;
  rep.text += line("verify: x = %s [%s, tol %.3g]", coords(at).c_str(), tag, c.tol);
  rep.text += line("  m1 = %.9g  m2 = %.9g  equal measures: %s", c.m1, c.m2,
                   yes_no(c.equal_measures).c_str());
  rep.text += line("  min >= total/2 - tol (%.9g): %s", oracle.total() / 2.0,
                   yes_no(c.min_bound).c_str());
  rep.text += line("  no sampled Pareto improvement: %s", yes_no(c.pareto_ok).c_str());
  rep.text += line("  value %.9g vs solver optimum %.9g: %s", value, best.value,
                   optimal ? "optimal" : "below optimum");
  rep.text += line("  verdict: %s", pass ? "compromise" : "not a compromise");
  return rep;
}

RunReport run_mechanism(const RunConfig& cfg) {
  const Problem& p = cfg.problem();
  const MechanismSettings& ms = cfg.mechanism();
  const auto sol = solve_maxmin_grid(p, cfg.solver());
  RunReport rep;
  rep.header = point_header(p.space.embed_dim());
  if (ms.mode == MechanismMode::kExhaustive) {
    std::vector<std::size_t> sizes;
    for (std::size_t n : {ms.cap - 4, ms.cap - 2, ms.cap}) {
      if (n >= 2 && n <= ms.cap) sizes.push_back(n);
    }
    const auto rows = refine_and_compare(p, sizes, sol.solutions,
                                         MechanismMode::kExhaustive, ms.cap);
    const ContourOracle oracle(p);
    rep.text += line("mechanism (exhaustive): lexicographic equilibrium of the "
                     "grid game, value = distance to nearest compromise");
    for (const auto& r : rows) {
      const double m1 = oracle.measure(1, r.outcome), m2 = oracle.measure(2, r.outcome);
      rep.text += line("  n = %zu: outcome %s  distance %.6g [%s]", r.resolution,
                       coords(r.outcome).c_str(), r.distance,
                       backend_name(oracle.backend()));
      rep.rows.push_back(point_row(r.outcome, m1, m2, r.distance, true));
    }
    return rep;
  }
  const Point& x = sol.solutions.front();
  rep.text += line("mechanism (family): x* = %s, eps %.3g cells, tol %.3g cells",
                   coords(x).c_str(), ms.eps_cells, ms.tol_cells);
  for (std::size_t res : {ms.resolution, 2 * ms.resolution}) {
    const ContinuumGame cg = build_continuum_game(p, x, res, ms.eps_cells);
    const auto& fp = cg.game.problem();
    const double tol = ms.tol_cells * cg.cell_weight;
    try {
      const StrategyProfile prof = construct_equilibrium(cg, ms.tol_cells);
      const auto d = check_deviations(cg.game, cg.counters, cg.family, prof, tol);
      rep.text += line("  grid %zu: %zu menus, opening mass %.6g, gain p1 %.3g, "
                       "gain p2 %.3g, tol %.3g [grid]: %s",
                       res, cg.family.size(), cg.game.mass(prof.opening),
                       d.max_gain_p1, d.max_gain_p2, tol,
                       d.certificate ? "certified" : "FAILED");
      rep.rows.push_back(point_row(x, fp.u1[cg.x_star], fp.u2[cg.x_star],
                                   std::max(d.max_gain_p1, d.max_gain_p2),
                                   d.certificate));
      rep.passed = rep.passed && d.certificate;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonRegular) throw;
      rep.text += line("  grid %zu: %s", res, e.what());
      rep.rows.push_back(point_row(x, fp.u1[cg.x_star], fp.u2[cg.x_star], 0.0, false));
      rep.passed = false;
    }
  }
  return rep;
}

RunReport run_sample(const RunConfig& cfg, std::size_t n) {
  const Problem& p = cfg.problem();
  const ContourOracle oracle(p);
  const auto pts = sample(p.space, p.measure, cfg.seed(), n);
  RunReport rep;
  rep.header = point_header(p.space.embed_dim());
  rep.text += line("sample: %zu points from %s [%s]", n, p.space.describe().c_str(),
                   backend_name(oracle.backend()));
  for (const auto& x : pts) {
    const double m1 = oracle.measure(1, x), m2 = oracle.measure(2, x);
    rep.rows.push_back(point_row(x, m1, m2, std::min(m1, m2), true));
  }
  return rep;
}

RunReport run_reproduce(const std::optional<std::string>& name,
                        const ScenarioOverrides& overrides) {
  std::vector<std::string> names =
      name ? std::vector<std::string>{*name} : list_scenarios();
  RunReport rep;
  rep.header = {"scenario", "quantity", "measured", "expected", "tol", "provenance", "pass"};
  for (const auto& n : names) {
    const ScenarioReport s = run_scenario(n, overrides);
    rep.text += line("%s: %s", s.name.c_str(), s.passed ? "pass" : "FAIL");
    for (const auto& q : s.rows) {
      rep.text += line("  %-26s measured %-16.12g expected %-16.12g tol %-8.3g %s%s",
                       q.quantity.c_str(), q.measured, q.expected, q.tol,
                       q.provenance.c_str(), q.passed ? "" : "  <-- violated");
      rep.rows.push_back({s.name, q.quantity, format_number(q.measured),
                          format_number(q.expected), format_number(q.tol),
                          q.provenance, q.passed ? "1" : "0"});
    }
    rep.passed = rep.passed && s.passed;
  }
  return rep;
}

}  // namespace compromise
