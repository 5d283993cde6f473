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

// Command-line front end over the C interface.
//
//   compromise solve --config ex1.cfg
//   compromise verify --config ex1.cfg --at 0.5
//   compromise reproduce --all
//
// Exit codes: 0 success, 1 a check failed, 2 bad input or runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compromise/compromise.h"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitError = 2;

struct Flags {
  std::string config;
  std::string out;
  long long seed = -1;
  int resolution = 0;
  std::string scenario;
  bool all = false;
  std::string at;
  int n = 0;
};

int report_error(cmp_status s) {
  std::fprintf(stderr, "error (%s): %s\n", cmp_status_name(s), cmp_last_error());
  return kExitError;
}

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

std::vector<double> parse_point(const std::string& s) {
  std::vector<double> v;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) v.push_back(std::stod(tok));
  return v;
}

// Writes the report and maps its verdict to an exit code.
int finish(cmp_report* rep, const std::string& out_path) {
  std::fputs(cmp_report_text(rep), stdout);
  int code = cmp_report_passed(rep) ? 0 : kExitFailed;
  if (out_path.empty()) {
    std::fputs("\n", stdout);
    std::fputs(cmp_report_table(rep), stdout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << cmp_report_table(rep);
    if (!f) {
      std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
      code = kExitError;
    }
  }
  cmp_report_free(rep);
  return code;
}

int with_config(const Flags& flags, const std::string& command) {
  if (flags.config.empty()) {
    std::fprintf(stderr, "error: %s needs --config <path>\n", command.c_str());
    return kExitError;
  }
  std::string text;
  if (!read_file(flags.config, text)) {
    std::fprintf(stderr, "error: cannot read %s\n", flags.config.c_str());
    return kExitError;
  }
  cmp_config* cfg = nullptr;
  cmp_status s = cmp_config_parse(text.c_str(), &cfg);
  if (s != CMP_OK) return report_error(s);
  if (flags.seed >= 0) {
    s = cmp_config_set(cfg, "seed", std::to_string(flags.seed).c_str());
  }
  if (s == CMP_OK && flags.resolution > 0) {
    const std::string r = std::to_string(flags.resolution);
    s = cmp_config_set(cfg, command == "mechanism" ? "mechanism.resolution"
                                                   : "solver.resolution",
                       r.c_str());
  }
  if (s != CMP_OK) {
    cmp_config_free(cfg);
    return report_error(s);
  }
  const std::string out = flags.out.empty() ? cmp_config_output(cfg) : flags.out;

  cmp_report* rep = nullptr;
  if (command == "solve") {
    s = cmp_solve(cfg, &rep);
  } else if (command == "verify") {
    if (flags.at.empty()) {
      cmp_config_free(cfg);
      std::fprintf(stderr, "error: verify needs --at <coords>\n");
      return kExitError;
    }
    std::vector<double> x;
    try {
      x = parse_point(flags.at);
    } catch (const std::exception&) {
      cmp_config_free(cfg);
      std::fprintf(stderr, "error: --at expects comma-separated numbers\n");
      return kExitError;
    }
    s = cmp_verify(cfg, x.data(), x.size(), &rep);
  } else if (command == "mechanism") {
    s = cmp_mechanism(cfg, &rep);
  } else {
    s = cmp_sample(cfg, static_cast<size_t>(flags.n), &rep);
  }
  cmp_config_free(cfg);
  if (s != CMP_OK) return report_error(s);
  return finish(rep, out);
}

int reproduce(const Flags& flags) {
  if (flags.all == !flags.scenario.empty()) {
    std::fprintf(stderr, "error: reproduce needs exactly one of --scenario or --all\n");
    return kExitError;
  }
  cmp_report* rep = nullptr;
  const cmp_status s =
      cmp_reproduce(flags.all ? nullptr : flags.scenario.c_str(),
                    static_cast<size_t>(flags.resolution), &rep);
  if (s != CMP_OK) return report_error(s);
  return finish(rep, flags.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-min compromise solver and multimatum checker"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", flags.out, "Write the table to this path");
    sub->add_option("--resolution", flags.resolution, "Grid resolution override")
        ->check(CLI::PositiveNumber);
  };
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "Run configuration file")->required();
    sub->add_option("--seed", flags.seed, "Random seed override")
        ->check(CLI::NonNegativeNumber);
    add_common(sub);
  };

  CLI::App* solve = app.add_subcommand("solve", "Find every compromise solution");
  add_config(solve);
  CLI::App* verify = app.add_subcommand("verify", "Check whether a point is a compromise");
  add_config(verify);
  verify->add_option("--at", flags.at, "Point as comma-separated coordinates")->required();
  CLI::App* mechanism =
      app.add_subcommand("mechanism", "Certify the multimatum equilibrium on a grid");
  add_config(mechanism);
  CLI::App* sample = app.add_subcommand("sample", "Contour measures at sampled points");
  add_config(sample);
  sample->add_option("--n", flags.n, "Number of points (default: sample.n)")
      ->check(CLI::PositiveNumber);
  CLI::App* repro = app.add_subcommand("reproduce", "Run registered scenarios");
  add_common(repro);
  repro->add_option("--scenario", flags.scenario, "Scenario name");
  repro->add_flag("--all", flags.all, "Run every scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  if (repro->parsed()) return reproduce(flags);
  for (CLI::App* sub : {solve, verify, mechanism, sample}) {
    if (sub->parsed()) return with_config(flags, sub->get_name());
  }
  return kExitError;
}
