// Copyright 2026 The fracstep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracstep/harness.hpp"

namespace fracstep::cli {

enum class Command { solve, sweep, verify };
enum class OutputFormat { csv, json };

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kDomainError = 3,
  kPropertyFailure = 4,
};

struct RunConfig {
  Command command = Command::solve;
  std::string experiment = "manufactured";
  std::string axis = "space";
  std::optional<double> alpha;
  std::optional<double> r;
  std::optional<double> c;
  std::optional<double> sigma;
  std::optional<std::size_t> nx;  ///< n_cells
  std::optional<std::size_t> nt;  ///< J
  int mode = 1;
  std::optional<int> first_level;
  std::optional<int> last_level;
  std::optional<std::size_t> ref_nx;
  std::optional<std::size_t> ref_nt;
  std::string output = "-";
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 20180417;
  std::size_t instances = 100;
  double max_work = 2e11;
  bool parallel = false;
  bool check_energy = false;
  double tamper_gamma = 0.0;  ///< test hook: relative perturbation of Gamma

  /// ConfigError on any violated invariant.
  void validate() const;
};

/// Parses `fracstep <command> [--flag value]...`, reading --config first
/// so that flags override it. Throws ConfigError; returns nullopt after
/// printing help.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& out);

int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);

/// Full entry point: parse, dispatch and map exceptions to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

SweepPlan plan_from_config(const RunConfig& config);

void write_table_csv(const ConvergenceTable& table, std::ostream& out);
std::string table_json(const ConvergenceTable& table);

}  // namespace fracstep::cli
