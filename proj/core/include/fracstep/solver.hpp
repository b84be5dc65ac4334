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

// Causal time stepping for the space-time Galerkin scheme with piecewise
// constants in time and P1 elements in space. Testing with chi_k phi_i gives
// a block lower-triangular system; step k solves
//
//   (G[k][k] M + tau_k K) U_k = F_k - M sum_{j<k} G[k][j] U_j
//
// by direct tridiagonal elimination.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fracstep/assembly.hpp"
#include "fracstep/fem1d.hpp"
#include "fracstep/fracops.hpp"
#include "fracstep/space_time.hpp"

namespace fracstep {

struct SolveOptions {
  /// Upper bound on each step's relative linear-solve residual. A step
  /// above it raises SingularSystemError.
  double residual_tolerance = 1e-12;
  /// Recompute the full left-hand-side action after the march and record
  /// the relative defect of the discrete energy identity. Doubles the cost.
  bool check_energy_identity = false;
};

struct SolveReport {
  std::size_t steps = 0;
  std::vector<double> residuals;  ///< relative residual of each step
  double wall_seconds = 0.0;
  std::uint64_t history_flops = 0;
  std::optional<double> energy_defect;
};

struct SolveResult {
  SpaceTimeField field;
  SolveReport report;
};

/// Solves the scheme for the given problem data.
SolveResult solve(const ProblemSpec& spec, const TemporalGrid& grid,
                  const Mesh1D& mesh, const SolveOptions& options = {});

/// Same march for an already assembled load array (J x N).
SolveResult solve_with_load(const TemporalWeightMatrix& weights,
                            const Mesh1D& mesh, const LoadArray& load,
                            const SolveOptions& options = {});

/// M sum_{j<k} G[k][j] U_j; zero for k = 0. Summation runs in increasing j,
/// so the result is deterministic.
std::vector<double> history_sum(const TemporalWeightMatrix& weights,
                                const TridiagonalMatrix& mass,
                                const SpaceTimeArray& u, std::size_t k);

/// Scalar analogue (G[k][k] + tau_k lambda) y_k = y0 a_k + g_k
/// - sum_{j<k} G[k][j] y_j with a_k the initial-data time factors and g_k the
/// interval integrals of the source. lambda >= 0.
std::vector<double> scalar_solve(double alpha, double lambda,
                                 const TemporalGrid& grid, double y0,
                                 std::span<const double> source_factors);

/// Row k: M sum_{j<=k} G[k][j] U_j + tau_k K U_k.
LoadArray apply_operator(const TemporalWeightMatrix& weights,
                         const Mesh1D& mesh, const SpaceTimeArray& u);

/// |sum_k U_k . (A U)_k - sum_k U_k . F_k| / |sum_k U_k . F_k|, or the
/// absolute defect when the load pairing vanishes.
double energy_identity_defect(const TemporalWeightMatrix& weights,
                              const Mesh1D& mesh, const SpaceTimeArray& u,
                              const LoadArray& load);

}  // namespace fracstep
