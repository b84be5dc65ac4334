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

#include "fracstep/gamma.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>

#include "fracstep/errors.hpp"

namespace fracstep {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

std::atomic<double> g_leading_perturbation{0.0};

double lanczos(double x) {
  // Valid for x >= 1/2.
  x -= 1.0;
  double sum = kLanczosCoefficients[0] *
               (1.0 + g_leading_perturbation.load(std::memory_order_relaxed));
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    sum += kLanczosCoefficients[i] / (x + static_cast<double>(i));
  }
  const double t = x + kLanczosG + 0.5;
  // t^{x+1/2} e^{-t} split in two factors to postpone overflow.
  const double half = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) *
         sum;
}

}  // namespace

double gamma_fn(double x) {
  if (!std::isfinite(x)) detail::domain_fail("gamma_fn: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) {
    detail::domain_fail("gamma_fn: pole at " + std::to_string(x));
  }
  if (x < 0.5) {
    // Reflection: G(x) G(1 - x) = pi / sin(pi x).
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  }
  return lanczos(x);
}

double beta_fn(double a, double b) {
  return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
}

namespace testing {

ScopedGammaTamper::ScopedGammaTamper(double relative_perturbation)
    : previous_(g_leading_perturbation.exchange(relative_perturbation)) {}

ScopedGammaTamper::~ScopedGammaTamper() {
  g_leading_perturbation.store(previous_);
}

}  // namespace testing
}  // namespace fracstep
