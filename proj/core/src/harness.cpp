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

#include "fracstep/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "fracstep/errors.hpp"
#include "fracstep/reference_cache.hpp"
#include "fracstep/solver.hpp"

namespace fracstep {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Exhaustive textual fingerprint of the problem data.
std::string problem_fingerprint(const ProblemSpec& spec) {
  std::ostringstream out;
  auto shape = [&](const SpatialShape& s) {
    std::visit(
        [&](const auto& v) {
          using S = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<S, SpatialPower>) {
            out << "x^" << format_double(v.exponent);
          } else if constexpr (std::is_same_v<S, SpatialSine>) {
            out << "sin" << v.mode;
          } else {
            out << "nodalsin" << v.mode;
          }
        },
        s);
  };
  out << to_string(spec.tag) << ";T=" << format_double(spec.final_time)
      << ";u0=" << format_double(spec.initial.scale) << '*';
  shape(spec.initial.shape);
  for (const SourceTerm& term : spec.sources) {
    out << ";f+=" << format_double(term.scale) << '*';
    shape(term.space);
    out << "*t^" << format_double(term.time.exponent);
  }
  return out.str();
}

CacheKey reference_key(const SweepPlan& plan, const Resolution& ref) {
  CacheKey key;
  key.entries["experiment"] = plan.experiment;
  key.entries["alpha"] = format_double(plan.problem.alpha);
  key.entries["problem"] = problem_fingerprint(plan.problem);
  for (const auto& [name, value] : plan.parameters) {
    key.entries["param." + name] = format_double(value);
  }
  key.entries["h_ref"] = format_double(1.0 / static_cast<double>(ref.cells));
  key.entries["tau_ref"] =
      format_double(plan.problem.final_time / static_cast<double>(ref.steps));
  return key;
}

SpaceTimeField reference_solution(const SweepPlan& plan, const Resolution& ref,
                                  const SolveOptions& options,
                                  std::optional<double>& energy_defect) {
  const TemporalGrid grid = TemporalGrid::uniform(plan.problem.final_time, ref.steps);
  const Mesh1D mesh(ref.cells);
  std::optional<ReferenceCache> cache;
  if (!plan.cache_dir.empty()) cache.emplace(plan.cache_dir);
  const CacheKey key = reference_key(plan, ref);
  if (cache) {
    if (auto hit = cache->load(key, grid, mesh)) return std::move(*hit);
  }
  SolveResult solved = solve(plan.problem, grid, mesh, options);
  energy_defect = solved.report.energy_defect;
  if (cache) cache->store(key, solved.field);
  return std::move(solved.field);
}

}  // namespace

std::string_view to_string(RefinementAxis axis) {
  return axis == RefinementAxis::space ? "space" : "time";
}

double estimate_work(const Resolution& r) {
  const double j = static_cast<double>(r.steps);
  const double n = static_cast<double>(r.cells);
  return 0.5 * j * j * n + 10.0 * j * n;
}

void SweepPlan::validate() const {
  problem.validate();
  if (levels.empty()) throw NestingError("sweep plan has no levels");
  if (!reference && !exact) {
    throw NestingError("sweep plan needs a reference resolution or an exact solution");
  }
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const Resolution& level = levels[l];
    if (!is_power_of_two(level.cells) || level.cells < 2 ||
        !is_power_of_two(level.steps)) {
      throw NestingError("sweep levels must be dyadic (powers of two)");
    }
    if (l > 0) {
      const Resolution& prev = levels[l - 1];
      const bool ok = axis == RefinementAxis::space
                          ? level.steps == prev.steps && level.cells > prev.cells
                          : level.cells == prev.cells && level.steps > prev.steps;
      if (!ok) {
        throw NestingError(
            "sweep levels must refine only the swept axis, coarse to fine");
      }
    }
    if (reference) {
      if (reference->cells % level.cells != 0 || reference->steps % level.steps != 0) {
        throw NestingError("sweep level is not nested in the reference");
      }
    }
  }
  if (reference && (!is_power_of_two(reference->cells) ||
                    !is_power_of_two(reference->steps))) {
    throw NestingError("reference resolution must be dyadic");
  }
}

ConvergenceTable run_sweep(const SweepPlan& plan) {
  const auto start = std::chrono::steady_clock::now();
  plan.validate();

  double work = 0.0;
  for (const Resolution& level : plan.levels) work += estimate_work(level);
  if (plan.reference) work += estimate_work(*plan.reference);
  if (plan.check_energy_identity) work *= 2.0;
  if (work > plan.max_work) {
    std::ostringstream msg;
    msg << "sweep '" << plan.experiment << "' needs about " << work
        << " multiply-adds, budget is " << plan.max_work;
    throw BudgetExceededError(msg.str());
  }

  SolveOptions options;
  options.check_energy_identity = plan.check_energy_identity;

  ConvergenceTable table;
  table.meta.experiment = plan.experiment;
  table.meta.alpha = plan.problem.alpha;
  table.meta.parameters = plan.parameters;

  std::optional<double> max_defect;
  auto note_defect = [&](const std::optional<double>& d) {
    if (d) max_defect = std::max(max_defect.value_or(0.0), *d);
  };

  std::optional<SpaceTimeField> reference;
  if (plan.reference) {
    std::optional<double> defect;
    reference = reference_solution(plan, *plan.reference, options, defect);
    note_defect(defect);
    table.meta.h_ref = 1.0 / static_cast<double>(plan.reference->cells);
    table.meta.tau_ref =
        plan.problem.final_time / static_cast<double>(plan.reference->steps);
  }

  struct LevelOutcome {
    SpaceTimeErrors errors;
    std::optional<double> defect;
  };
  auto run_level = [&](const Resolution& level) {
    const TemporalGrid grid =
        TemporalGrid::uniform(plan.problem.final_time, level.steps);
    const Mesh1D mesh(level.cells);
    SolveResult solved = solve(plan.problem, grid, mesh, options);
    LevelOutcome out;
    out.defect = solved.report.energy_defect;
    out.errors = reference ? space_time_errors(solved.field, *reference)
                           : plan.exact->errors(solved.field);
    return out;
  };

  std::vector<LevelOutcome> outcomes;
  if (plan.parallel_levels) {
    std::vector<std::future<LevelOutcome>> pending;
    for (const Resolution& level : plan.levels) {
      pending.push_back(std::async(std::launch::async, run_level, level));
    }
    for (auto& f : pending) outcomes.push_back(f.get());
  } else {
    for (const Resolution& level : plan.levels) outcomes.push_back(run_level(level));
  }

  for (std::size_t l = 0; l < plan.levels.size(); ++l) {
    ConvergenceRow row;
    row.h = 1.0 / static_cast<double>(plan.levels[l].cells);
    row.tau = plan.problem.final_time / static_cast<double>(plan.levels[l].steps);
    row.e1 = outcomes[l].errors.e1;
    row.e2 = outcomes[l].errors.e2;
    table.rows.push_back(row);
    note_defect(outcomes[l].defect);
  }
  if (table.rows.size() >= 2) fill_orders(table);
  table.meta.max_energy_defect = max_defect;
  table.meta.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return table;
}

std::vector<double> order_fit(std::span<const double> errors) {
  if (errors.size() < 2) detail::domain_fail("order_fit: need at least two levels");
  for (double e : errors) {
    if (!std::isfinite(e) || !(e > 0.0)) {
      detail::domain_fail("order_fit: errors must be positive and finite");
    }
  }
  std::vector<double> orders(errors.size() - 1);
  for (std::size_t l = 0; l + 1 < errors.size(); ++l) {
    orders[l] = std::log2(errors[l] / errors[l + 1]);
  }
  return orders;
}

void fill_orders(ConvergenceTable& table) {
  std::vector<double> e1, e2;
  for (const ConvergenceRow& row : table.rows) {
    e1.push_back(row.e1);
    e2.push_back(row.e2);
  }
  const std::vector<double> o1 = order_fit(e1);
  const std::vector<double> o2 = order_fit(e2);
  table.rows[0].order1.reset();
  table.rows[0].order2.reset();
  for (std::size_t l = 1; l < table.rows.size(); ++l) {
    table.rows[l].order1 = o1[l - 1];
    table.rows[l].order2 = o2[l - 1];
  }
}

ExpectedOrders expected_orders(double alpha, double beta, RateCase rate_case) {
  auto nonsmooth = [&] {
    return ExpectedOrders{1.0 - beta, alpha * (1.0 - beta) / 2.0, 2.0 - beta,
                          alpha * (1.0 - beta / 2.0)};
  };
  auto uncovered = [&](const char* why) {
    std::ostringstream msg;
    msg << "expected_orders: alpha = " << alpha << ", beta = " << beta
        << " not covered: " << why;
    detail::domain_fail(msg.str());
  };
  switch (rate_case) {
    case RateCase::nonsmooth_small_alpha:
      if (!(alpha > 0.0 && alpha < 0.5)) uncovered("needs 0 < alpha < 1/2");
      if (!(beta >= 0.0 && beta < 1.0)) uncovered("needs 0 <= beta < 1");
      return nonsmooth();
    case RateCase::nonsmooth_large_alpha:
      if (!(alpha >= 0.5 && alpha < 1.0)) uncovered("needs 1/2 <= alpha < 1");
      if (!(beta > 2.0 - 1.0 / alpha && beta <= 1.0)) {
        uncovered("needs 2 - 1/alpha < beta <= 1 for nonzero initial data");
      }
      return nonsmooth();
    case RateCase::nonsmooth_zero_initial:
      if (!(alpha >= 0.5 && alpha < 1.0)) uncovered("needs 1/2 <= alpha < 1");
      if (!(beta >= 0.0 && beta < 1.0)) uncovered("needs 0 <= beta < 1");
      return nonsmooth();
    case RateCase::smooth_source:
      if (!(alpha > 0.5 && alpha < 1.0)) uncovered("needs 1/2 < alpha < 1");
      return ExpectedOrders{1.0, 1.0 - alpha / 2.0, 2.0, 1.0};
  }
  detail::domain_fail("expected_orders: unknown rate case");
}

double critical_beta_for_power(double r) {
  if (!(r > -1.0)) detail::domain_fail("critical_beta_for_power: r must exceed -1");
  return std::max(0.0, -r - 0.5);
}

namespace {

struct PlanTemplate {
  const char* name;
  RefinementAxis axis;
  int first_level;
  int last_level;
  std::size_t fixed;  // off-axis resolution
  std::size_t reference_cells;
  std::size_t reference_steps;
  bool exact_reference;
};

// Desk-scale defaults. Spatial sweeps: reference h = 2^-9 at the sweep's tau.
// Temporal sweeps: reference tau = 2^-14 at h = 2^-7.
constexpr PlanTemplate kPlans[] = {
    {"exp1-space", RefinementAxis::space, 3, 6, 4096, 512, 4096, false},
    {"exp1-time", RefinementAxis::time, 5, 8, 128, 128, 16384, false},
    {"exp2-space", RefinementAxis::space, 2, 6, 4096, 512, 4096, false},
    {"exp2-time", RefinementAxis::time, 4, 9, 128, 128, 16384, false},
    {"exp3-space", RefinementAxis::space, 3, 7, 4096, 512, 4096, false},
    {"exp3-time", RefinementAxis::time, 6, 10, 128, 128, 16384, false},
    {"manufactured-space", RefinementAxis::space, 3, 7, 1024, 1024, 1024, false},
    {"manufactured-time", RefinementAxis::time, 4, 9, 256, 0, 0, true},
};

std::size_t dyadic(int exponent) {
  if (exponent < 1 || exponent > 24) {
    detail::domain_fail("dyadic level exponent out of range: " +
                        std::to_string(exponent));
  }
  return std::size_t{1} << exponent;
}

}  // namespace

std::vector<std::string> registered_plans() {
  std::vector<std::string> names;
  for (const PlanTemplate& t : kPlans) names.emplace_back(t.name);
  return names;
}

SweepPlan experiment_plan(std::string_view name, const PlanParameters& p) {
  const PlanTemplate* tmpl = nullptr;
  for (const PlanTemplate& t : kPlans) {
    if (name == t.name) tmpl = &t;
  }
  if (!tmpl) throw ConfigError("unknown sweep plan '" + std::string(name) + "'");

  SweepPlan plan;
  plan.experiment = tmpl->name;
  plan.axis = tmpl->axis;
  const std::string_view family = name.substr(0, name.find('-'));
  if (family == "exp1") {
    const double alpha = p.alpha.value_or(tmpl->axis == RefinementAxis::space ? 0.2 : 0.4);
    const double r = p.r.value_or(tmpl->axis == RefinementAxis::space ? -0.8 : -0.49);
    const double sigma = p.sigma.value_or(0.49);
    plan.problem = experiment1(alpha, r, sigma);
    plan.parameters = {{"r", r}, {"sigma", sigma}};
  } else if (family == "exp2") {
    const double alpha = p.alpha.value_or(tmpl->axis == RefinementAxis::space ? 0.7 : 0.8);
    const double c = p.c.value_or(0.0);
    const double sigma = p.sigma.value_or(0.49);
    plan.problem = experiment2(alpha, c, sigma);
    plan.parameters = {{"c", c}, {"sigma", sigma}};
  } else if (family == "exp3") {
    const double alpha = p.alpha.value_or(0.8);
    const double sigma = p.sigma.value_or(0.29);
    plan.problem = experiment3(alpha, sigma);
    plan.parameters = {{"sigma", sigma}};
  } else {
    ManufacturedProblem mp = manufactured_problem(p.alpha.value_or(0.8));
    plan.problem = std::move(mp.spec);
    plan.exact = mp.exact;
  }

  const int first = p.first_level.value_or(tmpl->first_level);
  const int last = p.last_level.value_or(tmpl->last_level);
  if (last < first) detail::domain_fail("sweep plan: last level precedes first level");
  const std::size_t fixed = p.fixed.value_or(tmpl->fixed);
  for (int l = first; l <= last; ++l) {
    plan.levels.push_back(tmpl->axis == RefinementAxis::space
                              ? Resolution{dyadic(l), fixed}
                              : Resolution{fixed, dyadic(l)});
  }
  const bool numeric_reference = !tmpl->exact_reference || p.reference_cells ||
                                 p.reference_steps;
  if (numeric_reference) {
    Resolution ref{tmpl->reference_cells, tmpl->reference_steps};
    if (tmpl->exact_reference) ref = plan.levels.back();
    if (tmpl->axis == RefinementAxis::time && !tmpl->exact_reference) ref.cells = fixed;
    if (tmpl->axis == RefinementAxis::space && !tmpl->exact_reference) ref.steps = fixed;
    if (p.reference_cells) ref.cells = *p.reference_cells;
    if (p.reference_steps) ref.steps = *p.reference_steps;
    plan.reference = ref;
  }
  return plan;
}

}  // namespace fracstep
