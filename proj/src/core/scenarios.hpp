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

// Registry of worked problems with expected values and tolerances.

#ifndef COMPROMISE_CORE_SCENARIOS_HPP_
#define COMPROMISE_CORE_SCENARIOS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/solver.hpp"

namespace compromise {

// How an expected value was obtained: "analytic" for a closed-form value of
// the model, "derived" for an independent computation, "identity" for a value
// forced by symmetry or bookkeeping.
struct Expected {
  std::string quantity;
  double value;
  double tol;
  std::string provenance;
};

struct ScenarioOverrides {
  std::optional<std::size_t> resolution;
  std::optional<std::uint64_t> seed;
};

using Measured = std::map<std::string, double>;

struct Scenario {
  std::string name;
  std::string description;
  bool regular = true;
  std::function<Problem()> problem;
  std::vector<Expected> expected;
  std::function<Measured(const ScenarioOverrides&)> measure;
};

struct QuantityRow {
  std::string quantity;
  double measured;
  double expected;
  double tol;
  std::string provenance;
  bool passed;
};

struct ScenarioReport {
  std::string name;
  std::vector<QuantityRow> rows;
  bool passed = false;
  double seconds = 0.0;
};

const std::vector<Scenario>& scenario_registry();
std::vector<std::string> list_scenarios();
// Throws kNotFound for an unknown name.
const Scenario& find_scenario(const std::string& name);
ScenarioReport run_scenario(const std::string& name,
                            const ScenarioOverrides& overrides = {});

}  // namespace compromise

#endif  // COMPROMISE_CORE_SCENARIOS_HPP_
