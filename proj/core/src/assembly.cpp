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

#include "fracstep/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracstep/errors.hpp"
#include "fracstep/gamma.hpp"

namespace fracstep {
namespace {

void validate_shape(const SpatialShape& shape, const char* what) {
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SpatialPower>) {
          if (!(s.exponent > -1.0) || !std::isfinite(s.exponent)) {
            detail::domain_fail(std::string(what) +
                                ": spatial exponent r must exceed -1");
          }
        } else {
          if (s.mode < 1) {
            detail::domain_fail(std::string(what) + ": sine mode must be >= 1");
          }
        }
      },
      shape);
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    detail::domain_fail("alpha must lie in (0, 1)");
  }
}

}  // namespace

std::string_view to_string(ProblemTag tag) {
  switch (tag) {
    case ProblemTag::experiment1: return "experiment1";
    case ProblemTag::experiment2: return "experiment2";
    case ProblemTag::experiment3: return "experiment3";
    case ProblemTag::manufactured: return "manufactured";
    case ProblemTag::spectral_test: return "spectral_test";
    case ProblemTag::custom: return "custom";
  }
  return "custom";
}

ProblemTag parse_problem_tag(std::string_view name) {
  if (name == "experiment1" || name == "exp1") return ProblemTag::experiment1;
  if (name == "experiment2" || name == "exp2") return ProblemTag::experiment2;
  if (name == "experiment3" || name == "exp3") return ProblemTag::experiment3;
  if (name == "manufactured") return ProblemTag::manufactured;
  if (name == "spectral_test" || name == "spectral") return ProblemTag::spectral_test;
  if (name == "custom") return ProblemTag::custom;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

void ProblemSpec::validate() const {
  require_alpha(alpha);
  if (!(final_time > 0.0) || !std::isfinite(final_time)) {
    detail::domain_fail("final time must be positive");
  }
  if (!std::isfinite(initial.scale)) detail::domain_fail("non-finite initial scale");
  validate_shape(initial.shape, "initial data");
  for (const SourceTerm& term : sources) {
    if (!std::isfinite(term.scale)) detail::domain_fail("non-finite source scale");
    validate_shape(term.space, "source");
    if (!(term.time.exponent > -1.0) || !std::isfinite(term.time.exponent)) {
      detail::domain_fail("source: temporal power t^{-sigma} needs sigma < 1");
    }
  }
}

ProblemSpec experiment1(double alpha, double r, double sigma) {
  ProblemSpec spec;
  spec.tag = ProblemTag::experiment1;
  spec.alpha = alpha;
  spec.initial = {1.0, SpatialPower{r}};
  spec.sources = {{1.0, SpatialPower{r}, TemporalPower{-sigma}}};
  spec.validate();
  return spec;
}

ProblemSpec experiment2(double alpha, double c, double sigma) {
  ProblemSpec spec;
  spec.tag = ProblemTag::experiment2;
  spec.alpha = alpha;
  spec.initial = {c, SpatialPower{-0.49}};
  spec.sources = {{1.0, SpatialPower{-0.8}, TemporalPower{-sigma}}};
  spec.validate();
  return spec;
}

ProblemSpec experiment3(double alpha, double sigma) {
  ProblemSpec spec;
  spec.tag = ProblemTag::experiment3;
  spec.alpha = alpha;
  spec.initial = {0.0, SpatialPower{0.0}};
  spec.sources = {{1.0, SpatialPower{-0.49}, TemporalPower{-sigma}}};
  spec.validate();
  return spec;
}

std::vector<double> spatial_load(const Mesh1D& mesh, const SpatialShape& shape) {
  return std::visit(
      [&](const auto& s) -> std::vector<double> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SpatialPower>) {
          return power_load_vector(mesh, s.exponent);
        } else if constexpr (std::is_same_v<S, SpatialSine>) {
          return sine_load_vector(mesh, s.mode);
        } else {
          return assemble_mass(mesh) * sine_nodal_vector(mesh, s.mode);
        }
      },
      shape);
}

std::vector<double> initial_data_time_factors(const TemporalGrid& grid,
                                              double alpha) {
  require_alpha(alpha);
  const double e = 1.0 - alpha;
  const double norm = 1.0 / gamma_fn(2.0 - alpha);
  std::vector<double> factors(grid.steps());
  double previous = 0.0;  // t_0^{1-alpha} = 0
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const double next = std::pow(grid.node(k + 1), e);
    factors[k] = (next - previous) * norm;
    previous = next;
  }
  return factors;
}

std::vector<double> power_time_factors(const TemporalGrid& grid,
                                       double exponent) {
  if (!(exponent > -1.0) || !std::isfinite(exponent)) {
    detail::domain_fail("power_time_factors: t^{-sigma} needs sigma < 1");
  }
  const double e = exponent + 1.0;
  std::vector<double> factors(grid.steps());
  double previous = 0.0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const double next = std::pow(grid.node(k + 1), e);
    factors[k] = (next - previous) / e;
    previous = next;
  }
  return factors;
}

LoadArray initial_data_load(const ProblemSpec& spec, const TemporalGrid& grid,
                            const Mesh1D& mesh) {
  spec.validate();
  LoadArray load(grid.steps(), mesh.unknowns());
  if (spec.initial.scale == 0.0) return load;
  std::vector<double> time = initial_data_time_factors(grid, spec.alpha);
  for (double& t : time) t *= spec.initial.scale;
  load.add_outer(time, spatial_load(mesh, spec.initial.shape));
  return load;
}

LoadArray source_load(const ProblemSpec& spec, const TemporalGrid& grid,
                      const Mesh1D& mesh) {
  spec.validate();
  LoadArray load(grid.steps(), mesh.unknowns());
  for (const SourceTerm& term : spec.sources) {
    if (term.scale == 0.0) continue;
    std::vector<double> time = power_time_factors(grid, term.time.exponent);
    for (double& t : time) t *= term.scale;
    load.add_outer(time, spatial_load(mesh, term.space));
  }
  return load;
}

LoadArray assemble_load(const ProblemSpec& spec, const TemporalGrid& grid,
                        const Mesh1D& mesh) {
  LoadArray load = initial_data_load(spec, grid, mesh);
  load += source_load(spec, grid, mesh);
  return load;
}

double SeparableExactSolution::value(double x, double t) const {
  return std::pow(t, time_exponent_) * std::sin(mode_ * std::numbers::pi * x);
}

SpaceTimeErrors SeparableExactSolution::errors(const SpaceTimeField& u) const {
  // Per interval, with c the interval mean of t^p and s = sin(m pi x):
  //   int |t^p s - U|^2 = |s|^2 (int t^{2p} - tau c^2) + tau |c s - U|^2,
  // and |c s - U|^2 expands with |s|^2_{L2} = 1/2, |s'|^2 = (m pi)^2 / 2,
  // (s', U') = (m pi)^2 (s, U).
  const double p = time_exponent_;
  const double k2 = std::pow(mode_ * std::numbers::pi, 2);
  const std::vector<double> moments = sine_load_vector(u.mesh, mode_);
  double e1 = 0.0;
  double e2 = 0.0;
  for (std::size_t k = 0; k < u.grid.steps(); ++k) {
    const double a = u.grid.node(k);
    const double b = u.grid.node(k + 1);
    const double tau = b - a;
    const double mean = (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / ((p + 1.0) * tau);
    const double second =
        (std::pow(b, 2.0 * p + 1.0) - std::pow(a, 2.0 * p + 1.0)) / (2.0 * p + 1.0);
    const double variance = std::max(0.0, second - tau * mean * mean);

    const auto row = u.step(k);
    double cross = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) cross += moments[i] * row[i];
    const FieldNorms sq = squared_norms(u.mesh, row);

    const double l2 = std::max(0.0, 0.5 * mean * mean - 2.0 * mean * cross + sq.l2);
    const double h1 =
        std::max(0.0, 0.5 * k2 * mean * mean - 2.0 * mean * k2 * cross + sq.h1);
    e2 += 0.5 * variance + tau * l2;
    e1 += 0.5 * k2 * variance + tau * h1;
  }
  return {std::sqrt(e1), std::sqrt(e2)};
}

ManufacturedProblem manufactured_problem(double alpha, double final_time) {
  require_alpha(alpha);
  ProblemSpec spec;
  spec.tag = ProblemTag::manufactured;
  spec.alpha = alpha;
  spec.final_time = final_time;
  spec.initial = {0.0, SpatialPower{0.0}};
  const double pi2 = std::numbers::pi * std::numbers::pi;
  spec.sources = {
      {2.0 / gamma_fn(3.0 - alpha), SpatialSine{1}, TemporalPower{2.0 - alpha}},
      {pi2, SpatialSine{1}, TemporalPower{2.0}},
  };
  spec.validate();
  return {std::move(spec), SeparableExactSolution(2.0, 1)};
}

SpectralTestProblem spectral_test_problem(int mode, const Mesh1D& mesh,
                                          double alpha, double final_time) {
  require_alpha(alpha);
  if (mode < 1 || static_cast<std::size_t>(mode) >= mesh.cells()) {
    detail::domain_fail("spectral_test_problem: need 1 <= mode < n_cells (mode " +
                        std::to_string(mode) + " aliases on " +
                        std::to_string(mesh.cells()) + " cells)");
  }
  SpectralTestProblem problem;
  problem.spec.tag = ProblemTag::spectral_test;
  problem.spec.alpha = alpha;
  problem.spec.final_time = final_time;
  problem.spec.initial = {1.0, SpatialSineNodal{mode}};
  problem.spec.validate();
  problem.sine_vector = sine_nodal_vector(mesh, mode);
  problem.lambda_h = discrete_eigenvalue(mesh, mode);
  return problem;
}

}  // namespace fracstep
