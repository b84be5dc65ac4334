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

#include <cmath>
#include <numbers>
#include <random>
#include <variant>
#include <vector>

#include "fracstep/assembly.hpp"
#include "fracstep/errors.hpp"
#include "fracstep/fracops.hpp"
#include "fracstep/gamma.hpp"
#include "fracstep/solver.hpp"

namespace fracstep {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvGamma15 = 1.12837916709551257;
constexpr double kDerivativeOfSquare = 1.81520736843056034;  // 2 / G(2.2)

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double shape_value(const SpatialShape& s, double x) {
  return std::visit(
      [x](const auto& v) -> double {
        using S = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<S, SpatialPower>) {
          return std::pow(x, v.exponent);
        } else {
          return std::sin(v.mode * kPi * x);
        }
      },
      s);
}

TEST(ProblemTags, ParseShortAndCanonicalNames) {
  EXPECT_EQ(parse_problem_tag("exp1"), ProblemTag::experiment1);
  EXPECT_EQ(parse_problem_tag(to_string(ProblemTag::manufactured)), ProblemTag::manufactured);
  EXPECT_THROW(parse_problem_tag("exp9"), ConfigError);
}

TEST(ProblemSpecs, ValidationGuards) {
  EXPECT_THROW(experiment1(1.2, -0.8), DomainError);
  EXPECT_THROW(experiment1(0.2, -1.0), DomainError);
  EXPECT_THROW(experiment3(0.8, 1.0), DomainError);
}

TEST(InitialDataLoad, ZeroScaleContributesNothing) {
  const ProblemSpec spec = experiment2(0.7, 0.0);
  const LoadArray f = initial_data_load(spec, TemporalGrid::uniform(1.0, 4), Mesh1D(8));
  EXPECT_EQ(max_abs(f.data()), 0.0);
}

TEST(InitialDataLoad, UnitStepFactor) {
  const std::vector<double> a = initial_data_time_factors(TemporalGrid::uniform(1.0, 1), 0.5);
  EXPECT_NEAR(a[0], kInvGamma15, 1e-15);
}

TEST(InitialDataLoad, FactorsTelescope) {
  const TemporalGrid grid = TemporalGrid::from_nodes({0.0, 0.2, 0.25, 1.0, 2.5});
  const std::vector<double> a = initial_data_time_factors(grid, 0.3);
  double sum = 0.0;
  for (double v : a) sum += v;
  EXPECT_NEAR(sum, std::pow(2.5, 0.7) / gamma_fn(1.7), 1e-14);
}

TEST(SourceLoad, NoSourcesGiveZero) {
  ProblemSpec spec;
  spec.alpha = 0.5;
  const LoadArray f = source_load(spec, TemporalGrid::uniform(1.0, 3), Mesh1D(4));
  EXPECT_EQ(max_abs(f.data()), 0.0);
}

TEST(SourceLoad, SingularTimeFactor) {
  const std::vector<double> g = power_time_factors(TemporalGrid::uniform(1.0, 1), -0.49);
  EXPECT_NEAR(g[0], 1.0 / 0.51, 1e-15);
}

TEST(SourceLoad, UnitDataGiveTauTimesH) {
  ProblemSpec spec;
  spec.alpha = 0.5;
  spec.sources = {{1.0, SpatialPower{0.0}, TemporalPower{0.0}}};
  const TemporalGrid grid = TemporalGrid::uniform(1.0, 4);
  const Mesh1D mesh(8);
  const LoadArray f = source_load(spec, grid, mesh);
  for (double v : f.data()) EXPECT_NEAR(v, 0.25 * 0.125, 1e-16);
}

TEST(Manufactured, ExactValueAndCoefficient) {
  const ManufacturedProblem mp = manufactured_problem(0.8);
  EXPECT_NEAR(mp.exact.value(0.5, 1.0), 1.0, 1e-15);
  ASSERT_EQ(mp.spec.sources.size(), 2u);
  EXPECT_NEAR(mp.spec.sources[0].scale, kDerivativeOfSquare, 1e-13);
}

TEST(Manufactured, PointwiseResidualVanishes) {
  const double alpha = 0.8;
  const ManufacturedProblem mp = manufactured_problem(alpha);
  const PowerFunction t2{1.0, 2.0, 0.0, Side::left};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int n = 0; n < 20; ++n) {
    const double x = u(rng), t = u(rng);
    const double s = std::sin(kPi * x);
    const double dt = riemann_liouville_derivative_power(t2, alpha, t) * s;
    const double uxx = -kPi * kPi * t * t * s;
    double f = 0.0;
    for (const SourceTerm& term : mp.spec.sources) {
      f += term.scale * shape_value(term.space, x) * std::pow(t, term.time.exponent);
    }
    EXPECT_NEAR(dt - uxx - f, 0.0, 1e-10);
  }
}

TEST(Spectral, EigenvalueAndAliasGuard) {
  const Mesh1D mesh(8);
  const SpectralTestProblem p = spectral_test_problem(1, mesh, 0.6);
  EXPECT_NEAR(p.lambda_h, discrete_eigenvalue(mesh, 1), 1e-12 * p.lambda_h);
  EXPECT_THROW(spectral_test_problem(8, mesh, 0.6), DomainError);
}

TEST(Solve, ZeroDataGiveZeroField) {
  ProblemSpec spec;
  spec.alpha = 0.4;
  const SolveResult r = solve(spec, TemporalGrid::uniform(1.0, 8), Mesh1D(8));
  EXPECT_EQ(max_abs(r.field.coefficients.data()), 0.0);
}

TEST(Solve, SpectralProblemFollowsScalarRecursion) {
  const Mesh1D mesh(16);
  const TemporalGrid grid = TemporalGrid::uniform(1.0, 32);
  const SpectralTestProblem p = spectral_test_problem(1, mesh, 0.6);
  const SolveResult r = solve(p.spec, grid, mesh);
  const std::vector<double> zero(grid.steps(), 0.0);
  const std::vector<double> y = scalar_solve(0.6, p.lambda_h, grid, 1.0, zero);
  for (std::size_t k = 0; k < grid.steps(); ++k) {
    const auto u = r.field.step(k);
    for (std::size_t i = 0; i < u.size(); ++i) {
      EXPECT_NEAR(u[i], y[k] * p.sine_vector[i], 1e-12);
    }
  }
}

TEST(Solve, ManufacturedErrorShrinksUnderRefinement) {
  const ManufacturedProblem mp = manufactured_problem(0.8);
  const SolveResult coarse = solve(mp.spec, TemporalGrid::uniform(1.0, 64), Mesh1D(32));
  const SolveResult fine = solve(mp.spec, TemporalGrid::uniform(1.0, 256), Mesh1D(64));
  const SpaceTimeErrors ec = mp.exact.errors(coarse.field);
  const SpaceTimeErrors ef = mp.exact.errors(fine.field);
  EXPECT_LT(ef.e2, 0.5 * ec.e2);
  EXPECT_LT(ef.e1, ec.e1);
}

TEST(Solve, ReportsResidualsAndEnergyDefect) {
  SolveOptions opts;
  opts.check_energy_identity = true;
  const SolveResult r =
      solve(experiment1(0.2, -0.8), TemporalGrid::uniform(1.0, 16), Mesh1D(16), opts);
  EXPECT_EQ(r.report.steps, 16u);
  ASSERT_EQ(r.report.residuals.size(), 16u);
  for (double res : r.report.residuals) EXPECT_LT(res, 1e-12);
  ASSERT_TRUE(r.report.energy_defect.has_value());
  EXPECT_LT(*r.report.energy_defect, 1e-10);
}

TEST(HistorySum, FirstStepIsZero) {
  const TemporalWeightMatrix g(TemporalGrid::uniform(1.0, 4), 0.5);
  const Mesh1D mesh(4);
  SpaceTimeArray u(4, mesh.unknowns());
  for (double& v : u.data()) v = 1.0;
  for (double v : history_sum(g, assemble_mass(mesh), u, 0)) EXPECT_EQ(v, 0.0);
}

TEST(HistorySum, ConstantHistoryTelescopes) {
  const std::size_t steps = 10;
  const TemporalWeightMatrix g(TemporalGrid::uniform(1.0, steps), 0.45);
  const Mesh1D mesh(6);
  const TridiagonalMatrix mass = assemble_mass(mesh);
  const std::vector<double> w{0.5, -1.0, 2.0, 0.25, 1.5};
  SpaceTimeArray u(steps, mesh.unknowns());
  for (std::size_t k = 0; k < steps; ++k) {
    for (std::size_t i = 0; i < w.size(); ++i) u(k, i) = w[i];
  }
  const std::vector<double> mw = mass * w;
  for (std::size_t k = 1; k < steps; ++k) {
    const double factor = g.row_sum(k) - g.diagonal(k);
    const std::vector<double> h = history_sum(g, mass, u, k);
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(h[i], factor * mw[i], 1e-14);
  }
}

TEST(ScalarSolve, ZeroDataGiveZeros) {
  const std::vector<double> zero(6, 0.0);
  for (double y : scalar_solve(0.5, 3.0, TemporalGrid::uniform(1.0, 6), 0.0, zero)) {
    EXPECT_EQ(y, 0.0);
  }
}

TEST(ScalarSolve, FirstStepWithoutDecay) {
  const double alpha = 0.3, tau = 0.125;
  const TemporalGrid grid = TemporalGrid::uniform(1.0, 8);
  const std::vector<double> g(8, tau);
  const std::vector<double> y = scalar_solve(alpha, 0.0, grid, 0.0, g);
  EXPECT_NEAR(y[0], gamma_fn(2 - alpha) * std::pow(tau, alpha), 1e-15);
  EXPECT_THROW(scalar_solve(alpha, -1.0, grid, 0.0, g), DomainError);
}

TEST(ScalarSolve, MatchesDenseLowerTriangularSolve) {
  const TemporalGrid grid = TemporalGrid::from_nodes({0.0, 0.1, 0.3, 0.35, 0.7, 1.0});
  const double alpha = 0.65, lambda = 4.0;
  const std::vector<double> g{0.2, -0.1, 0.4, 0.0, 0.3};
  const std::vector<double> y = scalar_solve(alpha, lambda, grid, 0.0, g);
  const TemporalWeightMatrix w(grid, alpha);
  for (std::size_t k = 0; k < grid.steps(); ++k) {
    double lhs = grid.step(k) * lambda * y[k];
    for (std::size_t j = 0; j <= k; ++j) lhs += w(k, j) * y[j];
    EXPECT_NEAR(lhs, g[k], 1e-14);
  }
}

}  // namespace
}  // namespace fracstep
