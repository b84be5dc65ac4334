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

// Problem data and right-hand-side assembly. Every source and initial datum
// is separable, so each load contribution is the outer product of a vector
// of exact interval integrals in time with a vector of exact hat-function
// moments in space. Nothing is sampled pointwise.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fracstep/fem1d.hpp"
#include "fracstep/space_time.hpp"
#include "fracstep/temporal_grid.hpp"

namespace fracstep {

enum class ProblemTag {
  experiment1,
  experiment2,
  experiment3,
  manufactured,
  spectral_test,
  custom,
};

std::string_view to_string(ProblemTag tag);
/// Accepts the canonical names and the short forms exp1, exp2, exp3,
/// spectral. Throws ConfigError otherwise.
ProblemTag parse_problem_tag(std::string_view name);

/// x^r with r > -1.
struct SpatialPower {
  double exponent = 0.0;
};
/// sin(m pi x) with exact hat moments.
struct SpatialSine {
  int mode = 1;
};
/// Nodal interpolant of sin(m pi x), paired through the mass matrix.
struct SpatialSineNodal {
  int mode = 1;
};
using SpatialShape = std::variant<SpatialPower, SpatialSine, SpatialSineNodal>;

/// t^e with e > -1; the integrable range t^{-s}, s < 1, and t^s, s >= 0.
struct TemporalPower {
  double exponent = 0.0;
};

struct InitialData {
  double scale = 0.0;
  SpatialShape shape = SpatialPower{0.0};
};

struct SourceTerm {
  double scale = 1.0;
  SpatialShape space = SpatialPower{0.0};
  TemporalPower time;
};

struct ProblemSpec {
  ProblemTag tag = ProblemTag::custom;
  double alpha = 0.5;
  double final_time = 1.0;
  InitialData initial;
  std::vector<SourceTerm> sources;

  /// DomainError unless alpha in (0, 1), T > 0, every spatial power r > -1,
  /// every temporal exponent > -1 and every sine mode >= 1.
  void validate() const;
};

/// u_0 = x^r, f = x^r t^{-sigma}.
ProblemSpec experiment1(double alpha, double r, double sigma = 0.49);
/// u_0 = c x^{-0.49}, f = x^{-0.8} t^{-sigma}.
ProblemSpec experiment2(double alpha, double c, double sigma = 0.49);
/// u_0 = 0, f = x^{-0.49} t^{-sigma}.
ProblemSpec experiment3(double alpha, double sigma = 0.29);

/// Spatial moment vector of a shape on `mesh`.
std::vector<double> spatial_load(const Mesh1D& mesh, const SpatialShape& shape);

/// (t_{k+1}^{1-alpha} - t_k^{1-alpha}) / G(2 - alpha): the integral of
/// D_{0+}^alpha 1 = t^{-alpha} / G(1 - alpha) over each interval.
std::vector<double> initial_data_time_factors(const TemporalGrid& grid,
                                              double alpha);

/// (t_{k+1}^{e+1} - t_k^{e+1}) / (e + 1) for e > -1.
std::vector<double> power_time_factors(const TemporalGrid& grid,
                                       double exponent);

LoadArray initial_data_load(const ProblemSpec& spec, const TemporalGrid& grid,
                            const Mesh1D& mesh);
LoadArray source_load(const ProblemSpec& spec, const TemporalGrid& grid,
                      const Mesh1D& mesh);
/// initial_data_load + source_load.
LoadArray assemble_load(const ProblemSpec& spec, const TemporalGrid& grid,
                        const Mesh1D& mesh);

/// u(x, t) = t^p sin(m pi x). Errors of a discrete field against it are
/// computed in closed form: the cross terms use the exact sine moments and
/// int grad(sin) . grad(U) = (m pi)^2 int sin U.
class SeparableExactSolution {
 public:
  SeparableExactSolution(double time_exponent, int mode)
      : time_exponent_(time_exponent), mode_(mode) {}

  double value(double x, double t) const;
  SpaceTimeErrors errors(const SpaceTimeField& u) const;

 private:
  double time_exponent_;
  int mode_;
};

struct ManufacturedProblem {
  ProblemSpec spec;
  SeparableExactSolution exact;
};

/// u_0 = 0 and f = 2 / G(3 - alpha) t^{2-alpha} sin(pi x) + pi^2 t^2 sin(pi x),
/// whose solution is u = t^2 sin(pi x).
ManufacturedProblem manufactured_problem(double alpha, double final_time = 1.0);

struct SpectralTestProblem {
  ProblemSpec spec;
  std::vector<double> sine_vector;  ///< nodal sin(m pi x_i)
  double lambda_h = 0.0;            ///< Rayleigh quotient of K over M
};

/// u_0 = nodal sine vector of mode m, f = 0. 1 <= m < n_cells; the mode
/// m = n_cells aliases to zero and is rejected.
SpectralTestProblem spectral_test_problem(int mode, const Mesh1D& mesh,
                                          double alpha,
                                          double final_time = 1.0);

}  // namespace fracstep
