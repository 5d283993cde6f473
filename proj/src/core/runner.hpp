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

// Subcommand drivers shared by the C API and the command-line tool. Each one
// returns a human-readable report and a table with a fixed header.

#ifndef COMPROMISE_CORE_RUNNER_HPP_
#define COMPROMISE_CORE_RUNNER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/scenarios.hpp"

namespace compromise {

struct RunReport {
  std::string text;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool passed = true;

  // Comma-separated, header line first, one line per row.
  std::string csv() const;
};

// Floats at 12 significant digits.
std::string format_number(double v);

RunReport run_solve(const RunConfig& cfg);
RunReport run_verify(const RunConfig& cfg, const Point& at);
RunReport run_mechanism(const RunConfig& cfg);
RunReport run_sample(const RunConfig& cfg, std::size_t n);
// One scenario, or all of them when `name` is empty.
RunReport run_reproduce(const std::optional<std::string>& name,
                        const ScenarioOverrides& overrides = {});

}  // namespace compromise

#endif  // COMPROMISE_CORE_RUNNER_HPP_
