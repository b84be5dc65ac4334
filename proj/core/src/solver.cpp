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

#include "fracstep/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>

#include "fracstep/errors.hpp"

namespace fracstep {
namespace {

// acc = sum_{j<k} G[k][j] U_j, summed in increasing j.
void accumulate_history(const TemporalWeightMatrix& weights,
                        const SpaceTimeArray& u, std::size_t k,
                        std::span<double> acc) {
  std::fill(acc.begin(), acc.end(), 0.0);
  const std::size_t n = acc.size();
  const auto generator = weights.toeplitz_generator();
  for (std::size_t j = 0; j < k; ++j) {
    const double g = generator.empty() ? weights(k, j) : generator[k - j];
    const double* row = u.data().data() + j * n;
    for (std::size_t i = 0; i < n; ++i) acc[i] += g * row[i];
  }
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_row_sum(const TridiagonalMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = std::abs(a.diag()[i]);
    if (i > 0) s += std::abs(a.lower()[i - 1]);
    if (i + 1 < a.size()) s += std::abs(a.upper()[i]);
    m = std::max(m, s);
  }
  return m;
}

}  // namespace

std::vector<double> history_sum(const TemporalWeightMatrix& weights,
                                const TridiagonalMatrix& mass,
                                const SpaceTimeArray& u, std::size_t k) {
  if (u.rows() != weights.size() || u.cols() != mass.size() || k >= u.rows()) {
    detail::domain_fail("history_sum: inconsistent dimensions");
  }
  std::vector<double> acc(u.cols());
  accumulate_history(weights, u, k, acc);
  return mass * acc;
}

SolveResult solve_with_load(const TemporalWeightMatrix& weights,
                            const Mesh1D& mesh, const LoadArray& load,
                            const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const TemporalGrid& grid = weights.grid();
  const std::size_t steps = grid.steps();
  const std::size_t n = mesh.unknowns();
  if (load.rows() != steps || load.cols() != n) {
    detail::domain_fail("solve: load array does not match grid and mesh");
  }

  const TridiagonalMatrix mass = assemble_mass(mesh);
  const TridiagonalMatrix stiffness = assemble_stiffness(mesh);

  SolveResult result{SpaceTimeField(grid, mesh), {}};
  SpaceTimeArray& u = result.field.coefficients;
  SolveReport& report = result.report;
  report.steps = steps;
  report.residuals.reserve(steps);

  std::vector<double> acc(n), rhs(n), check(n);
  std::optional<TridiagonalMatrix> system;
  std::optional<TridiagonalFactorization> factors;
  double factored_diag = 0.0;
  double factored_tau = 0.0;

  for (std::size_t k = 0; k < steps; ++k) {
    const double diag = weights.diagonal(k);
    const double tau = grid.step(k);
    if (!(diag > 0.0) || !(tau > 0.0)) {
      throw SingularSystemError("solve: non-positive diagonal weight at step " +
                                std::to_string(k));
    }
    if (!factors || diag != factored_diag || tau != factored_tau) {
      system = linear_combination(diag, mass, tau, stiffness);
      factors.emplace(*system);
      factored_diag = diag;
      factored_tau = tau;
    }

    accumulate_history(weights, u, k, acc);
    report.history_flops += 2ull * k * n;
    mass.multiply(acc, rhs);
    const auto f = load.row(k);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = f[i] - rhs[i];

    auto x = u.row(k);
    factors->solve(rhs, x);

    system->multiply(x, check);
    for (std::size_t i = 0; i < n; ++i) check[i] -= rhs[i];
    const double scale = max_row_sum(*system) * max_abs(x) + max_abs(rhs);
    const double residual = scale > 0.0 ? max_abs(check) / scale : 0.0;
    report.residuals.push_back(residual);
    if (!(residual <= options.residual_tolerance)) {
      std::ostringstream msg;
      msg << "solve: step " << k << " residual " << residual
          << " exceeds tolerance " << options.residual_tolerance;
      throw SingularSystemError(msg.str());
    }
  }

  if (options.check_energy_identity) {
    report.energy_defect = energy_identity_defect(weights, mesh, u, load);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SolveResult solve(const ProblemSpec& spec, const TemporalGrid& grid,
                  const Mesh1D& mesh, const SolveOptions& options) {
  spec.validate();
  if (std::abs(grid.final_time() - spec.final_time) > 1e-12 * spec.final_time) {
    detail::domain_fail("solve: grid final time does not match the problem");
  }
  const LoadArray load = assemble_load(spec, grid, mesh);
  return solve_with_load(temporal_weights(grid, spec.alpha), mesh, load, options);
}

std::vector<double> scalar_solve(double alpha, double lambda,
                                 const TemporalGrid& grid, double y0,
                                 std::span<const double> source_factors) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    detail::domain_fail("scalar_solve: lambda must be non-negative");
  }
  if (source_factors.size() != grid.steps()) {
    detail::domain_fail("scalar_solve: one source factor per interval required");
  }
  const TemporalWeightMatrix weights = temporal_weights(grid, alpha);
  const std::vector<double> initial = initial_data_time_factors(grid, alpha);
  std::vector<double> y(grid.steps());
  for (std::size_t k = 0; k < y.size(); ++k) {
    double history = 0.0;
    for (std::size_t j = 0; j < k; ++j) history += weights(k, j) * y[j];
    y[k] = (y0 * initial[k] + source_factors[k] - history) /
           (weights.diagonal(k) + grid.step(k) * lambda);
  }
  return y;
}

LoadArray apply_operator(const TemporalWeightMatrix& weights,
                         const Mesh1D& mesh, const SpaceTimeArray& u) {
  const std::size_t n = mesh.unknowns();
  if (u.rows() != weights.size() || u.cols() != n) {
    detail::domain_fail("apply_operator: inconsistent dimensions");
  }
  const TridiagonalMatrix mass = assemble_mass(mesh);
  const TridiagonalMatrix stiffness = assemble_stiffness(mesh);
  LoadArray out(u.rows(), n);
  std::vector<double> acc(n), tmp(n);
  for (std::size_t k = 0; k < u.rows(); ++k) {
    accumulate_history(weights, u, k, acc);
    const double diag = weights.diagonal(k);
    const auto uk = u.row(k);
    for (std::size_t i = 0; i < n; ++i) acc[i] += diag * uk[i];
    auto row = out.row(k);
    mass.multiply(acc, row);
    stiffness.multiply(uk, tmp);
    const double tau = weights.grid().step(k);
    for (std::size_t i = 0; i < n; ++i) row[i] += tau * tmp[i];
  }
  return out;
}

double energy_identity_defect(const TemporalWeightMatrix& weights,
                              const Mesh1D& mesh, const SpaceTimeArray& u,
                              const LoadArray& load) {
  const LoadArray action = apply_operator(weights, mesh, u);
  double lhs = 0.0;
  double rhs = 0.0;
  const auto ud = u.data();
  const auto ad = action.data();
  const auto fd = load.data();
  for (std::size_t n = 0; n < ud.size(); ++n) {
    lhs += ud[n] * ad[n];
    rhs += ud[n] * fd[n];
  }
  const double defect = std::abs(lhs - rhs);
  return rhs != 0.0 ? defect / std::abs(rhs) : defect;
}

}  // namespace fracstep
