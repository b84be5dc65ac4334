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


#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fracstep/assembly.hpp"
#include "fracstep/solver.hpp"

namespace fracstep::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(FRACSTEP_GOLDEN_DIR) + "/" + name);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

const std::vector<std::string> kSmallSweep = {
    "sweep", "--experiment", "exp1", "--axis", "space", "--first-level", "2",
    "--last-level", "3", "--nt", "16", "--ref-nx", "16"};

TEST(Cli, HelpExitsCleanly) {
  const Outcome o = invoke({"--help"});
  EXPECT_EQ(o.code, kSuccess);
  EXPECT_NE(o.out.find("solve"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(invoke({}).code, kConfigError);
  EXPECT_EQ(invoke({"launch"}).code, kConfigError);
  EXPECT_EQ(invoke({"solve", "--alpha", "1.2"}).code, kConfigError);
  EXPECT_EQ(invoke({"solve", "--alpha", "0"}).code, kConfigError);
  EXPECT_EQ(invoke({"solve", "--bogus", "1"}).code, kConfigError);
  EXPECT_EQ(invoke({"solve", "--format", "xml"}).code, kConfigError);
  EXPECT_EQ(invoke({"sweep", "--nt", "100"}).code, kConfigError);
  EXPECT_EQ(invoke({"solve", "--experiment", "manufactured", "--r", "-0.5"}).code,
            kConfigError);
  EXPECT_EQ(invoke({"solve", "--output", "/nonexistent-dir/x.csv"}).code, kConfigError);
  const Outcome o = invoke({"solve", "--alpha", "1.2"});
  EXPECT_NE(o.err.find("alpha"), std::string::npos);
}

TEST(Cli, DomainErrorsExitThree) {
  EXPECT_EQ(invoke({"solve", "--experiment", "exp1", "--r", "-1.5", "--nx", "4", "--nt", "4"})
                .code,
            kDomainError);
  EXPECT_EQ(invoke({"solve", "--experiment", "spectral", "--mode", "8", "--nx", "8"}).code,
            kDomainError);
  std::vector<std::string> nested = kSmallSweep;
  nested.back() = "4";
  EXPECT_EQ(invoke(nested).code, kDomainError);
  std::vector<std::string> budget = kSmallSweep;
  budget.insert(budget.end(), {"--max-work", "100"});
  EXPECT_EQ(invoke(budget).code, kDomainError);
}

TEST(Cli, ManufacturedSolveReportsExactErrors) {
  const Outcome o =
      invoke({"solve", "--experiment", "manufactured", "--alpha", "0.8", "--nx", "64", "--nt", "256"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  std::string keys;
  double e1 = -1, e2 = -1;
  for (const std::string& line : lines(o.out)) {
    if (line.rfind("# ", 0) != 0) continue;
    const auto eq = line.find('=');
    const std::string key = line.substr(2, eq - 2);
    keys += key + "\n";
    if (key == "E1") e1 = std::stod(line.substr(eq + 1));
    if (key == "E2") e2 = std::stod(line.substr(eq + 1));
  }
  EXPECT_EQ(keys, golden("solve_manufactured_keys.txt"));

  const ManufacturedProblem mp = manufactured_problem(0.8);
  const SolveResult r = solve(mp.spec, TemporalGrid::uniform(1.0, 256), Mesh1D(64));
  const SpaceTimeErrors err = mp.exact.errors(r.field);
  EXPECT_EQ(e1, err.e1);
  EXPECT_EQ(e2, err.e2);
  EXPECT_LT(e2, 2e-3);
}

TEST(Cli, SolveRowsRoundTripExactly) {
  const Outcome o = invoke({"solve", "--experiment", "exp1", "--alpha", "0.2", "--r", "-0.8",
                            "--nx", "8", "--nt", "4096"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  std::vector<std::string> rows;
  for (const std::string& line : lines(o.out)) {
    if (line.rfind("#", 0) != 0) rows.push_back(line);
  }
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0], "x,U");
  EXPECT_EQ(rows[1], "0,0");
  EXPECT_EQ(rows[9], "1,0");

  const SolveResult r =
      solve(experiment1(0.2, -0.8), TemporalGrid::uniform(1.0, 4096), Mesh1D(8));
  const auto last = r.field.step(4095);
  for (std::size_t i = 0; i < last.size(); ++i) {
    const std::vector<std::string> f = split(rows[i + 2]);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(std::stod(f[0]), (i + 1) / 8.0);
    EXPECT_EQ(std::stod(f[1]), last[i]);
    EXPECT_GT(last[i], 0.0);
  }
}

TEST(Cli, SolveJsonCarriesArrays) {
  const Outcome o = invoke({"solve", "--experiment", "exp3", "--nx", "8", "--nt", "8",
                            "--format", "json"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  EXPECT_EQ(doc["meta"]["experiment"], "exp3");
  EXPECT_EQ(doc["x"].size(), 9u);
  EXPECT_EQ(doc["U"].size(), 9u);
}

TEST(Cli, SweepCsvSchema) {
  const Outcome o = invoke(kSmallSweep);
  ASSERT_EQ(o.code, kSuccess) << o.err;
  const std::vector<std::string> l = lines(o.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0] + "\n", golden("sweep_header.csv"));
  const std::vector<std::string> first = split(l[1]);
  ASSERT_EQ(first.size(), 6u);
  EXPECT_TRUE(first[3].empty());
  EXPECT_TRUE(first[5].empty());
  const std::vector<std::string> second = split(l[2]);
  ASSERT_EQ(second.size(), 6u);
  EXPECT_FALSE(second[3].empty());
}

TEST(Cli, SweepSingleLevelHasNoOrders) {
  std::vector<std::string> args = kSmallSweep;
  args[8] = "2";
  const Outcome o = invoke(args);
  ASSERT_EQ(o.code, kSuccess) << o.err;
  const std::vector<std::string> l = lines(o.out);
  ASSERT_EQ(l.size(), 2u);
  const std::vector<std::string> f = split(l[1]);
  EXPECT_TRUE(f[3].empty());
  EXPECT_TRUE(f[5].empty());
}

TEST(Cli, SweepIsByteIdenticalAcrossRuns) {
  const Outcome a = invoke(kSmallSweep);
  std::vector<std::string> parallel = kSmallSweep;
  parallel.push_back("--parallel");
  const Outcome b = invoke(kSmallSweep);
  const Outcome c = invoke(parallel);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, SweepJsonSchema) {
  std::vector<std::string> args = kSmallSweep;
  args.insert(args.end(), {"--format", "json"});
  const Outcome o = invoke(args);
  ASSERT_EQ(o.code, kSuccess) << o.err;
  const auto doc = nlohmann::ordered_json::parse(o.out);
  std::string keys;
  for (const auto& [k, v] : doc["meta"].items()) keys += k + "\n";
  EXPECT_EQ(keys, golden("sweep_meta_keys.txt"));
  EXPECT_EQ(doc["meta"]["experiment"], "exp1-space");
  EXPECT_DOUBLE_EQ(doc["meta"]["h_ref"].get<double>(), 1.0 / 16);
  ASSERT_EQ(doc["rows"].size(), 2u);
  EXPECT_TRUE(doc["rows"][0]["order1"].is_null());
  EXPECT_TRUE(doc["rows"][1]["order2"].is_number());

  // JSON and CSV carry the same numbers.
  const std::vector<std::string> csv = lines(invoke(kSmallSweep).out);
  const std::vector<std::string> f = split(csv[2]);
  EXPECT_EQ(doc["rows"][1]["E1"].get<double>(), std::stod(f[2]));
  EXPECT_EQ(doc["rows"][1]["order2"].get<double>(), std::stod(f[5]));
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto path = std::filesystem::temp_directory_path() / "fracstep-cli-test.cfg";
  {
    std::ofstream cfg(path);
    cfg << "# small sweep\nexperiment=exp1\naxis=space\nfirst-level=2\nlast-level=3\n"
        << "nt=16\nref-nx=16\nalpha=0.3\n";
  }
  std::vector<std::string> flags = kSmallSweep;
  const Outcome from_flags = invoke(flags);
  const Outcome from_file = invoke({"sweep", "--config", path.string(), "--alpha", "0.2"});
  EXPECT_EQ(from_file.code, kSuccess) << from_file.err;
  EXPECT_EQ(from_file.out, from_flags.out);
  {
    std::ofstream cfg(path);
    cfg << "nonsense=1\n";
  }
  EXPECT_EQ(invoke({"sweep", "--config", path.string()}).code, kConfigError);
  std::filesystem::remove(path);
}

TEST(Cli, OutputFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "fracstep-cli-test.csv";
  std::vector<std::string> args = kSmallSweep;
  args.insert(args.end(), {"--output", path.string()});
  const Outcome o = invoke(args);
  ASSERT_EQ(o.code, kSuccess) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(in), {}), invoke(kSmallSweep).out);
  std::filesystem::remove(path);
}

TEST(Cli, VerifyIsDeterministicAndPasses) {
  const Outcome a = invoke({"verify", "--seed", "7", "--instances", "20"});
  const Outcome b = invoke({"verify", "--seed", "7", "--instances", "20"});
  EXPECT_EQ(a.code, kSuccess) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("12/12 properties passed"), std::string::npos);
}

TEST(Cli, VerifyDetectsTamperedGamma) {
  const Outcome o = invoke({"verify", "--instances", "20", "--tamper-gamma", "1e-6"});
  EXPECT_EQ(o.code, kPropertyFailure);
  EXPECT_NE(o.out.find("FAIL coercivity"), std::string::npos);
  // The hook is scoped to the command.
  EXPECT_EQ(invoke({"verify", "--instances", "20"}).code, kSuccess);
}

TEST(Cli, VerifyJson) {
  const Outcome o = invoke({"verify", "--instances", "10", "--format", "json"});
  ASSERT_EQ(o.code, kSuccess);
  const auto doc = nlohmann::json::parse(o.out);
  EXPECT_TRUE(doc["passed"].get<bool>());
  EXPECT_EQ(doc["properties"].size(), 12u);
}

}  // namespace
}  // namespace fracstep::cli
