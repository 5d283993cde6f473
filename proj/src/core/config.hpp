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

// Run configuration: flat `key = value` lines, `#` starts a comment.
//
//   space.kind = interval            # interval|box|unit_triangle|simplex|budget_surface
//   space.params = 0, 1              # interval bounds; box "lo:hi, lo:hi"; simplex k
//   measure.kind = lebesgue_normalized
//   pref1.kind = piecewise_linear
//   pref1.knots = 0:0.9, 0.1:1, 1:0.1
//   pref2.kind = euclidean
//   pref2.ideal = 1
//
// Every error names the offending line or key.

#ifndef COMPROMISE_CORE_CONFIG_HPP_
#define COMPROMISE_CORE_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/mechanism.hpp"
#include "core/solver.hpp"

namespace compromise {

struct ConfigEntry {
  std::string value;
  int line = 0;  // 0 for values set programmatically
};

struct MechanismSettings {
  MechanismMode mode = MechanismMode::kFamily;
  std::size_t cap = kDefaultExhaustiveCap;
  double eps_cells = 2.0;
  double tol_cells = 5.0;
  std::size_t resolution = 400;
};

class RunConfig {
 public:
  // Throws kConfig with the first error.
  static RunConfig parse(const std::string& text);

  // Sets or replaces one key and revalidates.
  void set(const std::string& key, const std::string& value);
  // Replaces agent's preference with a callback (agent is 1 or 2).
  void set_custom(int agent, Preference pref);

  const Problem& problem() const { return *problem_; }
  const SolveOptions& solver() const { return solver_; }
  const MechanismSettings& mechanism() const { return mechanism_; }
  std::uint64_t seed() const { return seed_; }
  const std::string& output() const { return output_; }
  std::size_t sample_n() const { return sample_n_; }
  const std::map<std::string, ConfigEntry>& entries() const { return entries_; }

 private:
  void build();

  std::map<std::string, ConfigEntry> entries_;
  std::optional<Preference> custom_[2];
  std::optional<Problem> problem_;
  SolveOptions solver_;
  MechanismSettings mechanism_;
  std::uint64_t seed_ = 0;
  std::string output_;
  std::size_t sample_n_ = 1000;
};

// Parses "a, b, c" into doubles; throws kConfig naming `what`.
std::vector<double> parse_doubles(const std::string& text, const std::string& what);

}  // namespace compromise

#endif  // COMPROMISE_CORE_CONFIG_HPP_
