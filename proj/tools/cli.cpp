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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fracstep/assembly.hpp"
#include "fracstep/errors.hpp"
#include "fracstep/gamma.hpp"
#include "fracstep/properties.hpp"
#include "fracstep/solver.hpp"

namespace fracstep::cli {
namespace {

using nlohmann::ordered_json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Writes to stdout for "-", otherwise to a file opened up front.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void finish(const std::string& path) {
    out_->flush();
    if (!*out_) throw ConfigError("failed writing output '" + path + "'");
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void reject_unused(const RunConfig& c, bool r, bool cc, bool sigma) {
  const auto complain = [&](const char* flag) {
    throw ConfigError(std::string("--") + flag + " does not apply to experiment '" +
                      c.experiment + "'");
  };
  if (c.r && !r) complain("r");
  if (c.c && !cc) complain("c");
  if (c.sigma && !sigma) complain("sigma");
}

}  // namespace

void RunConfig::validate() const {
  if (alpha && !(*alpha > 0.0 && *alpha < 1.0)) {
    throw ConfigError("--alpha must lie in (0, 1), got " + num(*alpha));
  }
  if (instances == 0) throw ConfigError("--instances must be positive");
  if (!(max_work > 0.0)) throw ConfigError("--max-work must be positive");
  if (command == Command::sweep) {
    for (const auto& [flag, value] :
         {std::pair{"nx", nx}, {"nt", nt}, {"ref-nx", ref_nx}, {"ref-nt", ref_nt}}) {
      if (value && (!power_of_two(*value) || *value < 4)) {
        throw ConfigError(std::string("--") + flag +
                          " must be a power of two >= 4 for sweeps");
      }
    }
    if (axis != "space" && axis != "time") {
      throw ConfigError("--axis must be 'space' or 'time'");
    }
  }
  if (command == Command::solve) {
    if (nx && *nx < 2) throw ConfigError("--nx must be at least 2");
    if (nt && *nt < 1) throw ConfigError("--nt must be at least 1");
  }
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Space-time Galerkin solver for time-fractional diffusion", "fracstep"};
  app.allow_config_extras(false);
  app.set_config("--config", "", "Flat key=value file; flags override it");

  std::string command;
  app.add_option("command", command, "solve | sweep | verify")
      ->required()
      ->check(CLI::IsMember({"solve", "sweep", "verify"}));

  double alpha = 0, r = 0, c = 0, sigma = 0;
  std::size_t nx = 0, nt = 0, ref_nx = 0, ref_nt = 0;
  int first = 0, last = 0;
  std::string format = "csv";
  auto* o_alpha = app.add_option("--alpha", alpha, "Fractional order in (0, 1)");
  auto* o_r = app.add_option("--r", r, "Spatial power exponent (exp1)");
  auto* o_c = app.add_option("--c", c, "Initial-data scale (exp2)");
  auto* o_sigma = app.add_option("--sigma", sigma, "Source time singularity t^-sigma");
  auto* o_nx = app.add_option("--nx", nx, "Number of cells");
  auto* o_nt = app.add_option("--nt", nt, "Number of time steps");
  auto* o_first = app.add_option("--first-level", first, "Sweep starts at 2^-first");
  auto* o_last = app.add_option("--last-level", last, "Sweep ends at 2^-last");
  auto* o_ref_nx = app.add_option("--ref-nx", ref_nx, "Reference cells");
  auto* o_ref_nt = app.add_option("--ref-nt", ref_nt, "Reference time steps");
  app.add_option("--experiment", cfg.experiment,
                 "exp1 | exp2 | exp3 | manufactured | spectral (solve only)")
      ->check(CLI::IsMember({"exp1", "exp2", "exp3", "manufactured", "spectral"}));
  app.add_option("--axis", cfg.axis, "Sweep axis: space | time")
      ->check(CLI::IsMember({"space", "time"}));
  app.add_option("--mode", cfg.mode, "Sine mode of the spectral test problem");
  app.add_option("--output,-o", cfg.output, "Output path, '-' for stdout");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", cfg.seed, "Seed of the randomized properties");
  app.add_option("--instances", cfg.instances, "Random draws per property");
  app.add_option("--max-work", cfg.max_work, "Budget in estimated multiply-adds");
  app.add_flag("--parallel", cfg.parallel, "Solve sweep levels concurrently");
  app.add_flag("--check-energy", cfg.check_energy,
               "Record the energy-identity defect of every sweep solve");
  app.add_option("--tamper-gamma", cfg.tamper_gamma)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  cfg.command = command == "solve"   ? Command::solve
                : command == "sweep" ? Command::sweep
                                     : Command::verify;
  cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (o_alpha->count()) cfg.alpha = alpha;
  if (o_r->count()) cfg.r = r;
  if (o_c->count()) cfg.c = c;
  if (o_sigma->count()) cfg.sigma = sigma;
  if (o_nx->count()) cfg.nx = nx;
  if (o_nt->count()) cfg.nt = nt;
  if (o_first->count()) cfg.first_level = first;
  if (o_last->count()) cfg.last_level = last;
  if (o_ref_nx->count()) cfg.ref_nx = ref_nx;
  if (o_ref_nt->count()) cfg.ref_nt = ref_nt;
  cfg.validate();
  return cfg;
}

SweepPlan plan_from_config(const RunConfig& cfg) {
  const bool space = cfg.axis == "space";
  if (cfg.experiment == "spectral") {
    throw ConfigError("the spectral test problem has no sweep plan");
  }
  reject_unused(cfg, cfg.experiment == "exp1", cfg.experiment == "exp2",
                cfg.experiment != "manufactured");
  if (space && cfg.nx) {
    throw ConfigError("--nx is the swept resolution on the space axis; "
                      "use --first-level/--last-level");
  }
  if (!space && cfg.nt) {
    throw ConfigError("--nt is the swept resolution on the time axis; "
                      "use --first-level/--last-level");
  }
  PlanParameters p;
  p.alpha = cfg.alpha;
  p.r = cfg.r;
  p.c = cfg.c;
  p.sigma = cfg.sigma;
  p.first_level = cfg.first_level;
  p.last_level = cfg.last_level;
  p.fixed = space ? cfg.nt : cfg.nx;
  p.reference_cells = cfg.ref_nx;
  p.reference_steps = cfg.ref_nt;
  SweepPlan plan = experiment_plan(cfg.experiment + "-" + cfg.axis, p);
  plan.max_work = cfg.max_work;
  plan.parallel_levels = cfg.parallel;
  plan.check_energy_identity = cfg.check_energy;
  if (const char* dir = std::getenv("FRACSTEP_CACHE_DIR")) plan.cache_dir = dir;
  return plan;
}

void write_table_csv(const ConvergenceTable& table, std::ostream& out) {
  out << "h,tau,E1,order1,E2,order2\n";
  for (const ConvergenceRow& row : table.rows) {
    out << num(row.h) << ',' << num(row.tau) << ',' << num(row.e1) << ','
        << (row.order1 ? num(*row.order1) : "") << ',' << num(row.e2) << ','
        << (row.order2 ? num(*row.order2) : "") << '\n';
  }
}

std::string table_json(const ConvergenceTable& table) {
  ordered_json meta;
  meta["alpha"] = table.meta.alpha;
  meta["experiment"] = table.meta.experiment;
  meta["params"] = ordered_json::object();
  for (const auto& [key, value] : table.meta.parameters) meta["params"][key] = value;
  meta["h_ref"] = table.meta.h_ref;
  meta["tau_ref"] = table.meta.tau_ref;
  meta["runtime_s"] = table.meta.runtime_s;
  if (table.meta.max_energy_defect) {
    meta["max_energy_defect"] = *table.meta.max_energy_defect;
  }
  ordered_json rows = ordered_json::array();
  for (const ConvergenceRow& row : table.rows) {
    ordered_json j;
    j["h"] = row.h;
    j["tau"] = row.tau;
    j["E1"] = row.e1;
    j["order1"] = row.order1 ? ordered_json(*row.order1) : ordered_json(nullptr);
    j["E2"] = row.e2;
    j["order2"] = row.order2 ? ordered_json(*row.order2) : ordered_json(nullptr);
    rows.push_back(std::move(j));
  }
  ordered_json doc;
  doc["meta"] = std::move(meta);
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const SweepPlan plan = plan_from_config(cfg);
  Sink sink(cfg.output, out);
  const ConvergenceTable table = run_sweep(plan);
  if (cfg.format == OutputFormat::json) {
    sink.stream() << table_json(table);
  } else {
    write_table_csv(table, sink.stream());
  }
  sink.finish(cfg.output);
  return kSuccess;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Mesh1D mesh(cfg.nx.value_or(64));
  const TemporalGrid grid = TemporalGrid::uniform(1.0, cfg.nt.value_or(256));
  const std::string& e = cfg.experiment;
  reject_unused(cfg, e == "exp1", e == "exp2", e == "exp1" || e == "exp2" || e == "exp3");

  ProblemSpec spec;
  std::optional<SeparableExactSolution> exact;
  std::optional<SpectralTestProblem> spectral;
  std::map<std::string, double> params;
  if (e == "exp1") {
    spec = experiment1(cfg.alpha.value_or(0.2), cfg.r.value_or(-0.8), cfg.sigma.value_or(0.49));
    params = {{"r", cfg.r.value_or(-0.8)}, {"sigma", cfg.sigma.value_or(0.49)}};
  } else if (e == "exp2") {
    spec = experiment2(cfg.alpha.value_or(0.7), cfg.c.value_or(0.0), cfg.sigma.value_or(0.49));
    params = {{"c", cfg.c.value_or(0.0)}, {"sigma", cfg.sigma.value_or(0.49)}};
  } else if (e == "exp3") {
    spec = experiment3(cfg.alpha.value_or(0.8), cfg.sigma.value_or(0.29));
    params = {{"sigma", cfg.sigma.value_or(0.29)}};
  } else if (e == "manufactured") {
    ManufacturedProblem mp = manufactured_problem(cfg.alpha.value_or(0.8));
    spec = std::move(mp.spec);
    exact = mp.exact;
  } else {
    spectral = spectral_test_problem(cfg.mode, mesh, cfg.alpha.value_or(0.6));
    spec = spectral->spec;
    params = {{"mode", static_cast<double>(cfg.mode)}};
  }

  const double work = estimate_work({mesh.cells(), grid.steps()});
  if (work > cfg.max_work) {
    throw BudgetExceededError("solve needs about " + num(work) +
                              " multiply-adds, budget is " + num(cfg.max_work));
  }
  Sink sink(cfg.output, out);
  const SolveResult result = solve(spec, grid, mesh);
  const SolveReport& report = result.report;

  std::vector<std::pair<std::string, double>> diagnostics = {
      {"alpha", spec.alpha},
      {"nx", static_cast<double>(mesh.cells())},
      {"nt", static_cast<double>(grid.steps())},
      {"max_residual", *std::max_element(report.residuals.begin(), report.residuals.end())},
  };
  for (const auto& [k, v] : params) diagnostics.emplace_back(k, v);
  if (exact) {
    const SpaceTimeErrors err = exact->errors(result.field);
    diagnostics.emplace_back("E1", err.e1);
    diagnostics.emplace_back("E2", err.e2);
  }
  if (spectral) {
    const std::vector<double> zero(grid.steps(), 0.0);
    const std::vector<double> y =
        scalar_solve(spec.alpha, spectral->lambda_h, grid, 1.0, zero);
    double dev = 0.0;
    for (std::size_t k = 0; k < grid.steps(); ++k) {
      const auto u = result.field.step(k);
      for (std::size_t i = 0; i < u.size(); ++i) {
        dev = std::max(dev, std::abs(u[i] - y[k] * spectral->sine_vector[i]));
      }
    }
    diagnostics.emplace_back("scalar_deviation", dev);
  }

  // Final-time nodal values including the two boundary nodes.
  const auto last = result.field.step(grid.steps() - 1);
  std::vector<double> xs{0.0}, us{0.0};
  for (std::size_t i = 0; i < last.size(); ++i) {
    xs.push_back(mesh.node(i));
    us.push_back(last[i]);
  }
  xs.push_back(1.0);
  us.push_back(0.0);

  std::ostream& os = sink.stream();
  if (cfg.format == OutputFormat::json) {
    ordered_json meta;
    meta["experiment"] = e;
    for (const auto& [k, v] : diagnostics) meta[k] = v;
    meta["runtime_s"] = report.wall_seconds;
    ordered_json doc;
    doc["meta"] = std::move(meta);
    doc["x"] = xs;
    doc["U"] = us;
    os << doc.dump(2) << '\n';
  } else {
    os << "# experiment=" << e << '\n';
    for (const auto& [k, v] : diagnostics) os << "# " << k << '=' << num(v) << '\n';
    os << "x,U\n";
    for (std::size_t i = 0; i < xs.size(); ++i) os << num(xs[i]) << ',' << num(us[i]) << '\n';
  }
  sink.finish(cfg.output);
  return kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::optional<testing::ScopedGammaTamper> tamper;
  if (cfg.tamper_gamma != 0.0) tamper.emplace(cfg.tamper_gamma);
  PropertyOptions options;
  options.seed = cfg.seed;
  options.instances = cfg.instances;
  Sink sink(cfg.output, out);
  const std::vector<PropertyResult> results = run_property_suite(options);
  const auto passed = static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; }));
  std::ostream& os = sink.stream();
  if (cfg.format == OutputFormat::json) {
    ordered_json doc;
    doc["seed"] = cfg.seed;
    doc["instances"] = cfg.instances;
    doc["properties"] = ordered_json::array();
    for (const PropertyResult& r : results) {
      doc["properties"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    doc["passed"] = passed == results.size();
    os << doc.dump(2) << '\n';
  } else {
    os << "seed " << cfg.seed << ", " << cfg.instances << " instances per property\n";
    for (const PropertyResult& r : results) {
      os << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    }
    os << passed << '/' << results.size() << " properties passed\n";
  }
  sink.finish(cfg.output);
  return passed == results.size() ? kSuccess : kPropertyFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const std::optional<RunConfig> cfg = parse_args(args, out);
    if (!cfg) return kSuccess;
    switch (cfg->command) {
      case Command::solve:
        return cmd_solve(*cfg, out);
      case Command::sweep:
        return cmd_sweep(*cfg, out);
      case Command::verify:
        return cmd_verify(*cfg, out);
    }
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "fracstep: configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "fracstep: " << e.what() << '\n';
    return kDomainError;
  } catch (const NestingError& e) {
    err << "fracstep: " << e.what() << '\n';
    return kDomainError;
  } catch (const BudgetExceededError& e) {
    err << "fracstep: " << e.what() << '\n';
    return kDomainError;
  } catch (const SingularSystemError& e) {
    err << "fracstep: " << e.what() << '\n';
    return kDomainError;
  } catch (const ConvergenceError& e) {
    err << "fracstep: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace fracstep::cli
