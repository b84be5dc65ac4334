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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fracstep/assembly.hpp"
#include "fracstep/harness.hpp"
#include "fracstep/properties.hpp"
#include "fracstep/solver.hpp"

namespace {

using namespace fracstep;

constexpr std::size_t kInstances = 100;
constexpr double kIdentitiesBudgetS = 30.0;
constexpr double kBlockBudgetS = 5.0;
constexpr double kSpectralBudgetS = 5.0;
constexpr double kManufacturedBudgetS = 120.0;
constexpr double kExperimentBudgetS = 600.0;
constexpr double kEnergyTol = 1e-10;

struct Band {
  double lo;
  double hi;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// Manufactured solution: E2 2 +- 0.1 and E1 1 +- 0.1 in h, E2 1 +- 0.1 in tau.
constexpr Band kManufacturedSpaceE2{1.9, 2.1};
constexpr Band kManufacturedSpaceE1{0.9, 1.1};
constexpr Band kManufacturedTimeE2{0.9, 1.1};
// First experiment, spatial: 0.66..0.69 and 1.66..1.69, each widened by 0.15.
constexpr Band kExp1SpaceE1{0.51, 0.84};
constexpr Band kExp1SpaceE2{1.51, 1.84};
// Third experiment: spatial 0.9 and 1.9 +- 0.15; temporal 0.62..0.65 and
// 0.69..0.87, each widened by 0.15.
constexpr Band kExp3SpaceE1{0.75, 1.05};
constexpr Band kExp3SpaceE2{1.75, 2.05};
constexpr Band kExp3TimeE1{0.47, 0.80};
constexpr Band kExp3TimeE2{0.54, 1.02};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) {
      passed = false;
      detail += " [out of bounds]";
    }
  }
};

std::vector<Verdict> g_verdicts;
double g_max_defect = 0.0;
std::size_t g_defect_runs = 0;

void note_defect(const std::optional<double>& d) {
  if (!d) return;
  g_max_defect = std::max(g_max_defect, *d);
  ++g_defect_runs;
}

void report(int id, const char* title, const std::function<Verdict()>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    v = body();
  } catch (const std::exception& e) {
    v.passed = false;
    v.detail = std::string("exception: ") + e.what();
  }
  std::printf("%s criterion %d (%s): %s [%.1f s]\n", v.passed ? "PASS" : "FAIL", id, title,
              v.detail.c_str(), seconds_since(start));
  std::fflush(stdout);
  g_verdicts.push_back(v);
}

void require_runtime(Verdict& v, std::chrono::steady_clock::time_point start, double budget) {
  const double s = seconds_since(start);
  v.require(s < budget, "runtime " + fmt("%.1f", s) + " s < " + fmt("%.0f", budget) + " s");
}

void require_property(Verdict& v, const PropertyResult& r) {
  v.require(r.passed, r.name + " " + r.detail);
}

ConvergenceTable sweep(const std::string& name) {
  SweepPlan plan = experiment_plan(name);
  plan.check_energy_identity = true;
  ConvergenceTable t = run_sweep(plan);
  note_defect(t.meta.max_energy_defect);
  return t;
}

void require_order(Verdict& v, const ConvergenceTable& t, bool e1, const Band& band,
                   const char* label) {
  const std::optional<double>& o = e1 ? t.rows.back().order1 : t.rows.back().order2;
  const double value = o.value_or(-1.0);
  v.require(band.contains(value), std::string(label) + " " + fmt("%.3f", value) + " in [" +
                                      fmt("%.2f", band.lo) + ", " + fmt("%.2f", band.hi) + "]");
}

}  // namespace

int main() {
  PropertyOptions options;
  options.instances = kInstances;

  report(1, "operator identities", [&] {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    require_property(v, check_semigroup(options));
    require_property(v, check_duality(options));
    require_property(v, check_coercivity(options));
    require_property(v, check_integral_pairing_bounds(options));
    require_property(v, check_closed_forms_vs_quadrature(options));
    require_runtime(v, start, kIdentitiesBudgetS);
    return v;
  });

  report(2, "block-system equivalence", [&] {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    require_property(v, check_block_system_equivalence(options));
    require_runtime(v, start, kBlockBudgetS);
    return v;
  });

  report(3, "spectral decoupling", [&] {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    require_property(v, check_spectral_decoupling(options));
    require_runtime(v, start, kSpectralBudgetS);
    return v;
  });

  report(4, "manufactured convergence", [&] {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    const ConvergenceTable space = sweep("manufactured-space");
    const ConvergenceTable time = sweep("manufactured-time");
    require_order(v, space, false, kManufacturedSpaceE2, "space E2");
    require_order(v, space, true, kManufacturedSpaceE1, "space E1");
    require_order(v, time, false, kManufacturedTimeE2, "time E2");
    require_runtime(v, start, kManufacturedBudgetS);
    return v;
  });

  report(5, "first experiment, spatial", [&] {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    const ConvergenceTable t = sweep("exp1-space");
    v.require(t.rows.size() == 4, std::to_string(t.rows.size()) + " rows");
    require_order(v, t, true, kExp1SpaceE1, "E1");
    require_order(v, t, false, kExp1SpaceE2, "E2");
    require_runtime(v, start, kExperimentBudgetS);
    return v;
  });

  report(6, "third experiment", [&] {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    const ConvergenceTable space = sweep("exp3-space");
    const ConvergenceTable time = sweep("exp3-time");
    require_order(v, space, true, kExp3SpaceE1, "space E1");
    require_order(v, space, false, kExp3SpaceE2, "space E2");
    require_order(v, time, true, kExp3TimeE1, "time E1");
    require_order(v, time, false, kExp3TimeE2, "time E2");
    require_runtime(v, start, kExperimentBudgetS);
    return v;
  });

  report(7, "determinism", [&] {
    Verdict v;
    const std::vector<std::string> args = {"sweep", "--experiment", "exp1", "--axis", "space"};
    std::vector<std::string> outputs;
    for (bool parallel : {false, false, true}) {
      std::vector<std::string> a = args;
      if (parallel) a.push_back("--parallel");
      std::ostringstream out, err;
      const int code = cli::run(a, out, err);
      v.require(code == 0, "exit " + std::to_string(code));
      outputs.push_back(out.str());
    }
    v.require(!outputs[0].empty() && outputs[0] == outputs[1], "repeat byte-identical");
    v.require(outputs[0] == outputs[2], "parallel byte-identical");
    return v;
  });

  report(8, "energy identity", [&] {
    Verdict v;
    SolveOptions opts;
    opts.check_energy_identity = true;
    const Mesh1D mesh(64);
    const TemporalGrid grid = TemporalGrid::uniform(1.0, 256);
    const std::vector<ProblemSpec> problems = {
        experiment1(0.2, -0.8),        experiment1(0.4, -0.49), experiment1(0.4, -0.99),
        experiment2(0.7, 0.0),         experiment2(0.8, 1.0),   experiment3(0.8),
        manufactured_problem(0.8).spec, spectral_test_problem(3, mesh, 0.6).spec,
    };
    for (const ProblemSpec& p : problems) note_defect(solve(p, grid, mesh, opts).report.energy_defect);
    v.require(g_max_defect <= kEnergyTol, "max relative defect " + fmt("%.2e", g_max_defect) +
                                              " over " + std::to_string(g_defect_runs) +
                                              " sweeps and solves (tol " + fmt("%.0e", kEnergyTol) + ")");
    return v;
  });

  std::size_t passed = 0;
  for (const Verdict& v : g_verdicts) passed += v.passed ? 1 : 0;
  std::printf("%zu/%zu criteria passed\n", passed, g_verdicts.size());
  return passed == g_verdicts.size() ? 0 : 1;
}
