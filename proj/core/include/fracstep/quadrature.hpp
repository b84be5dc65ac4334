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

#include <functional>

namespace fracstep {

/// Integrand (t - a)^p (b - t)^q g(t) on (a, b) with p, q > -1 and g smooth
/// on the closed interval.
struct SingularIntegrand {
  double lower = 0.0;
  double upper = 1.0;
  double left_exponent = 0.0;
  double right_exponent = 0.0;
  std::function<double(double)> smooth = [](double) { return 1.0; };
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Ground-truth integrator for weakly singular power kernels.
///
/// The interval is split at its midpoint. On each half the endpoint
/// singularity is removed exactly by the substitution u = (t - a)^{1+p}
/// (respectively u = (b - t)^{1+q}), and the remaining bounded integrand is
/// integrated by tanh-sinh quadrature. No Gamma or Beta function is used, so
/// the result is independent of every closed form in this library.
///
/// Throws ConvergenceError if the estimated relative error exceeds
/// `relative_tolerance`, DomainError for exponents <= -1 or an empty interval.
QuadratureResult quadrature_oracle(const SingularIntegrand& integrand,
                                   double relative_tolerance = 1e-10);

}  // namespace fracstep
