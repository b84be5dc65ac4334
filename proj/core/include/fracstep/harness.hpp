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

// Convergence-study engine: refinement sweeps against a nested reference
// solution (or an exact solution), exact space-time error norms and
// observed orders log2(E_prev / E_cur) between dyadic levels.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracstep/assembly.hpp"
#include "fracstep/space_time.hpp"

namespace fracstep {

enum class RefinementAxis { space, time };

std::string_view to_string(RefinementAxis axis);

/// One discretization level: n_cells in space, J steps in time.
struct Resolution {
  std::size_t cells = 0;
  std::size_t steps = 0;

  friend bool operator==(const Resolution&, const Resolution&) = default;
};

struct SweepPlan {
  std::string experiment;  ///< registry name, e.g. "exp1-space"
  ProblemSpec problem;
  std::map<std::string, double> parameters;  ///< data parameters for metadata
  RefinementAxis axis = RefinementAxis::space;
  std::vector<Resolution> levels;
  /// Numerical reference. When empty, `exact` must be set.
  std::optional<Resolution> reference;
  std::optional<SeparableExactSolution> exact;
  /// Upper bound on the estimated multiply-adds of all solves.
  double max_work = 2e11;
  /// Directory of the on-disk reference cache; empty disables caching.
  std::string cache_dir;
  bool check_energy_identity = false;
  /// Solve the sweep levels on separate threads once the reference exists.
  bool parallel_levels = false;

  /// NestingError unless every level is dyadic, nested in the reference and
  /// no finer than it, with the off-axis resolution held fixed.
  void validate() const;
};

struct ConvergenceRow {
  double h = 0.0;
  double tau = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  std::optional<double> order1;
  std::optional<double> order2;
};

struct ConvergenceTable {
  struct Meta {
    std::string experiment;
    double alpha = 0.0;
    std::map<std::string, double> parameters;
    double h_ref = 0.0;    ///< 0 for exact references
    double tau_ref = 0.0;  ///< 0 for exact references
    double runtime_s = 0.0;
    std::optional<double> max_energy_defect;
  };
  Meta meta;
  std::vector<ConvergenceRow> rows;
};

/// Estimated multiply-adds of one solve (dominated by the history sums).
double estimate_work(const Resolution& resolution);

ConvergenceTable run_sweep(const SweepPlan& plan);

/// log2(E[l] / E[l+1]) for consecutive entries. DomainError on zero or
/// non-finite errors and on fewer than two entries.
std::vector<double> order_fit(std::span<const double> errors);

/// Fills order1/order2 of every row after the first.
void fill_orders(ConvergenceTable& table);

/// Which a-priori estimate applies.
enum class RateCase {
  nonsmooth_small_alpha,   ///< 0 < alpha < 1/2, u0 in H^{-beta}, 0 <= beta < 1
  nonsmooth_large_alpha,   ///< 1/2 <= alpha < 1, u0 in L2, 2 - 1/alpha < beta <= 1
  nonsmooth_zero_initial,  ///< 1/2 <= alpha < 1, u0 = 0, 0 <= beta < 1
  smooth_source,           ///< 1/2 < alpha < 1, u0 = 0, f in H^{1-alpha}(L2)
};

/// Predicted orders of E1 (H1) and E2 (L2) in h and tau.
struct ExpectedOrders {
  double e1_space = 0.0;
  double e1_time = 0.0;
  double e2_space = 0.0;
  double e2_time = 0.0;
};

/// Rates h^{1-beta} + tau^{alpha(1-beta)/2} for E1 and
/// h^{2-beta} + tau^{alpha(1-beta/2)} for E2 in the nonsmooth cases;
/// h + tau^{1-alpha/2} and h^2 + tau for a smooth source. DomainError when
/// (alpha, beta) lies outside the case's hypotheses.
ExpectedOrders expected_orders(double alpha, double beta, RateCase rate_case);

/// Smallest beta >= 0 with x^r in H^{-beta'}(0,1) for every beta' > beta,
/// i.e. max(0, -r - 1/2).
double critical_beta_for_power(double r);

/// Optional overrides applied on top of a registered plan.
struct PlanParameters {
  std::optional<double> alpha;
  std::optional<double> r;
  std::optional<double> c;
  std::optional<double> sigma;
  /// Dyadic exponents of the swept axis: 2^-first .. 2^-last.
  std::optional<int> first_level;
  std::optional<int> last_level;
  /// Off-axis resolution (n_cells for time sweeps, J for space sweeps).
  std::optional<std::size_t> fixed;
  std::optional<std::size_t> reference_cells;
  std::optional<std::size_t> reference_steps;
};

/// Registered desk-scale plans: exp1-space, exp1-time, exp2-space,
/// exp2-time, exp3-space, exp3-time, manufactured-space, manufactured-time.
std::vector<std::string> registered_plans();

/// ConfigError for unknown names; DomainError for invalid parameters.
SweepPlan experiment_plan(std::string_view name,
                          const PlanParameters& overrides = {});

}  // namespace fracstep
