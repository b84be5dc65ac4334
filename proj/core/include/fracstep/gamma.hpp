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

namespace fracstep {

/// Gamma function via a Lanczos approximation (g = 7, nine terms), with the
/// reflection formula below 1/2. Relative accuracy is better than 1e-13 on
/// (0, 10]. Throws DomainError at the poles 0, -1, -2, ...
double gamma_fn(double x);

/// Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta_fn(double a, double b);

namespace testing {

/// Perturbs the leading Lanczos coefficient by a relative amount while alive.
/// Exists only so the property suite can demonstrate that it detects a broken
/// Gamma evaluation. Not for use in production code.
class ScopedGammaTamper {
 public:
  explicit ScopedGammaTamper(double relative_perturbation);
  ~ScopedGammaTamper();
  ScopedGammaTamper(const ScopedGammaTamper&) = delete;
  ScopedGammaTamper& operator=(const ScopedGammaTamper&) = delete;

 private:
  double previous_;
};

}  // namespace testing
}  // namespace fracstep
