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

#include "compromise/compromise.h"

#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/contour.hpp"
#include "core/error.hpp"
#include "core/mechanism.hpp"
#include "core/runner.hpp"
#include "core/scenarios.hpp"

struct cmp_config {
  compromise::RunConfig cfg;
};

struct cmp_report {
  compromise::RunReport rep;
  std::string table;
};

namespace {

thread_local std::string g_last_error;

cmp_status to_status(compromise::ErrorCode code) {
  using compromise::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return CMP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDomain: return CMP_ERR_DOMAIN;
    case ErrorCode::kConfig: return CMP_ERR_CONFIG;
    case ErrorCode::kNotFound: return CMP_ERR_NOT_FOUND;
    case ErrorCode::kCapacity: return CMP_ERR_CAPACITY;
    case ErrorCode::kNumeric: return CMP_ERR_NUMERIC;
    case ErrorCode::kNotMonotone: return CMP_ERR_NOT_MONOTONE;
    case ErrorCode::kNonRegular: return CMP_ERR_NON_REGULAR;
  }
  return CMP_ERR_INTERNAL;
}

cmp_status fail_with(cmp_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs body, converting exceptions into status codes.
template <typename F>
cmp_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return CMP_OK;
  } catch (const compromise::Error& e) {
    return fail_with(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(CMP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(CMP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail_with(CMP_ERR_INTERNAL, "unknown failure");
  }
}

cmp_status emit(compromise::RunReport rep, cmp_report** out) {
  auto r = std::make_unique<cmp_report>();
  r->table = rep.csv();
  r->rep = std::move(rep);
  *out = r.release();
  return CMP_OK;
}

#define CMP_REQUIRE_ARG(cond)                                            \
  do {                                                                   \
    if (!(cond)) {                                                       \
      return fail_with(CMP_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
    }                                                                    \
  } while (0)

}  // namespace

extern "C" {

const char* cmp_version(void) { return "1.0.0"; }

const char* cmp_status_name(cmp_status status) {
  switch (status) {
    case CMP_OK: return "ok";
    case CMP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CMP_ERR_CONFIG: return "config";
    case CMP_ERR_DOMAIN: return "domain";
    case CMP_ERR_NOT_FOUND: return "not_found";
    case CMP_ERR_CAPACITY: return "capacity";
    case CMP_ERR_NUMERIC: return "numeric";
    case CMP_ERR_NOT_MONOTONE: return "not_monotone";
    case CMP_ERR_NON_REGULAR: return "non_regular";
    case CMP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* cmp_last_error(void) { return g_last_error.c_str(); }

cmp_status cmp_config_parse(const char* text, cmp_config** out) {
  CMP_REQUIRE_ARG(text != nullptr && out != nullptr);
  *out = nullptr;
  return guard([&] {
    *out = new cmp_config{compromise::RunConfig::parse(text)};
  });
}

cmp_status cmp_config_set(cmp_config* cfg, const char* key, const char* value) {
  CMP_REQUIRE_ARG(cfg != nullptr && key != nullptr && value != nullptr);
  return guard([&] { cfg->cfg.set(key, value); });
}

cmp_status cmp_config_set_custom_preference(cmp_config* cfg, int agent,
                                            cmp_utility_fn fn, void* user) {
  CMP_REQUIRE_ARG(cfg != nullptr && fn != nullptr);
  return guard([&] {
    cfg->cfg.set_custom(agent, compromise::Preference::custom(
                                   [fn, user](const compromise::Point& p) {
                                     return fn(p.coords.data(), p.dim(), user);
                                   },
                                   "callback"));
  });
}

const char* cmp_config_output(const cmp_config* cfg) {
  return cfg ? cfg->cfg.output().c_str() : "";
}

void cmp_config_free(cmp_config* cfg) { delete cfg; }

cmp_status cmp_solve(const cmp_config* cfg, cmp_report** out) {
  CMP_REQUIRE_ARG(cfg != nullptr && out != nullptr);
  return guard([&] { emit(compromise::run_solve(cfg->cfg), out); });
}

cmp_status cmp_verify(const cmp_config* cfg, const double* x, size_t dim,
                      cmp_report** out) {
  CMP_REQUIRE_ARG(cfg != nullptr && x != nullptr && out != nullptr);
  return guard([&] {
    compromise::Point p(std::vector<double>(x, x + dim));
    emit(compromise::run_verify(cfg->cfg, p), out);
  });
}

cmp_status cmp_mechanism(const cmp_config* cfg, cmp_report** out) {
  CMP_REQUIRE_ARG(cfg != nullptr && out != nullptr);
  return guard([&] { emit(compromise::run_mechanism(cfg->cfg), out); });
}

cmp_status cmp_sample(const cmp_config* cfg, size_t n, cmp_report** out) {
  CMP_REQUIRE_ARG(cfg != nullptr && out != nullptr);
  return guard([&] {
    emit(compromise::run_sample(cfg->cfg, n ? n : cfg->cfg.sample_n()), out);
  });
}

cmp_status cmp_reproduce(const char* name, size_t resolution, cmp_report** out) {
  CMP_REQUIRE_ARG(out != nullptr);
  return guard([&] {
    compromise::ScenarioOverrides o;
    if (resolution > 0) o.resolution = resolution;
    std::optional<std::string> n;
    if (name) n = name;
    emit(compromise::run_reproduce(n, o), out);
  });
}

size_t cmp_scenario_count(void) { return compromise::scenario_registry().size(); }

const char* cmp_scenario_name(size_t index) {
  const auto& reg = compromise::scenario_registry();
  return index < reg.size() ? reg[index].name.c_str() : nullptr;
}

const char* cmp_report_text(const cmp_report* rep) {
  return rep ? rep->rep.text.c_str() : "";
}

const char* cmp_report_table(const cmp_report* rep) {
  return rep ? rep->table.c_str() : "";
}

int cmp_report_passed(const cmp_report* rep) {
  return rep && rep->rep.passed ? 1 : 0;
}

size_t cmp_report_row_count(const cmp_report* rep) {
  return rep ? rep->rep.rows.size() : 0;
}

void cmp_report_free(cmp_report* rep) { delete rep; }

cmp_status cmp_lower_measure(const cmp_config* cfg, int agent, const double* x,
                             size_t dim, double* value, double* std_err) {
  CMP_REQUIRE_ARG(cfg != nullptr && x != nullptr && value != nullptr);
  CMP_REQUIRE_ARG(agent == 1 || agent == 2);
  return guard([&] {
    using namespace compromise;
    const Problem& p = cfg->cfg.problem();
    const Preference& pref = agent == 1 ? p.pref1 : p.pref2;
    const Point pt(std::vector<double>(x, x + dim));
    MeasureEstimate est;
    switch (resolve_backend(p)) {
      case Backend::kExact:
        est = {lower_measure_exact(pref, p.space, p.measure, pt), 0.0, Backend::kExact};
        break;
      case Backend::kGrid:
        est = lower_measure_grid(pref, p.space, p.measure, pt, p.contour.resolution);
        break;
      case Backend::kMonteCarlo:
        est = lower_measure_mc(pref, p.space, p.measure, pt, p.contour.n, p.contour.seed);
        break;
    }
    *value = est.value;
    if (std_err) *std_err = est.std_err;
  });
}

cmp_status cmp_finite_spne(size_t n, const double* u1, const double* u2,
                           const double* weights, size_t* lex_outcome,
                           uint32_t* outcome_mask) {
  CMP_REQUIRE_ARG(u1 != nullptr && u2 != nullptr && lex_outcome != nullptr);
  return guard([&] {
    using namespace compromise;
    FiniteProblem fp;
    fp.u1.assign(u1, u1 + n);
    fp.u2.assign(u2, u2 + n);
    fp.weights = weights ? std::vector<double>(weights, weights + n)
                         : std::vector<double>(n, 1.0);
    const SpneResult r = spne_exhaustive(fp, 20);
    *lex_outcome = r.lex_outcome;
    if (outcome_mask) {
      uint32_t m = 0;
      for (std::size_t v : r.outcomes) m |= uint32_t{1} << v;
      *outcome_mask = m;
    }
  });
}

}  // extern "C"
