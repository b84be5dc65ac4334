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

#include "fracstep/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracstep/errors.hpp"
#include "fracstep/gamma.hpp"

namespace fracstep {
namespace {

// x_+^e with the continuous limit 0 at x <= 0 (e > 0).
double positive_power(double x, double e) {
  return x > 0.0 ? std::pow(x, e) : 0.0;
}

// 1 / Gamma(x), zero at the poles.
double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  return 1.0 / gamma_fn(x);
}

void require_power(const PowerFunction& p, const char* where) {
  if (!(p.exponent > -1.0) || !std::isfinite(p.exponent)) {
    detail::domain_fail(std::string(where) + ": exponent must exceed -1");
  }
  if (!std::isfinite(p.coefficient) || !std::isfinite(p.anchor)) {
    detail::domain_fail(std::string(where) + ": non-finite power function");
  }
}

// (x + d)_+^e - x_+^e for d > 0, without cancellation when d << x.
double power_increment(double x, double d, double e) {
  if (x <= 0.0) return positive_power(x + d, e);
  return std::pow(x, e) * std::expm1(e * std::log1p(d / x));
}

// Second difference of x_+^e over the four node gaps of intervals k and j,
// 0 <= j <= k, without the Gamma normalization.
double interval_second_difference(const TemporalGrid& grid, std::size_t k,
                                  std::size_t j, double e) {
  const double tau = grid.step(k);
  return power_increment(grid.node(k) - grid.node(j), tau, e) -
         power_increment(grid.node(k) - grid.node(j + 1), tau, e);
}

// (m + 1)^e - 2 m^e + (m - 1)^e for m >= 1, with relative error O(eps m)
// instead of O(eps m^2).
double unit_second_difference(std::size_t m, double e) {
  if (m == 0) return 1.0;
  const double x = static_cast<double>(m);
  const double inv = 1.0 / x;
  return std::pow(x, e) *
         (std::expm1(e * std::log1p(inv)) + std::expm1(e * std::log1p(-inv)));
}

// v^T P v for the causal matrix P[k][j] = second difference / G(e + 1).
double pwc_quadratic_form(const TemporalGrid& grid, std::span<const double> v,
                          double e) {
  if (v.size() != grid.steps()) {
    detail::domain_fail("piecewise-constant values do not match the grid");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
      row += interval_second_difference(grid, k, j, e) * v[j];
    }
    sum += v[k] * row;
  }
  return sum / gamma_fn(e + 1.0);
}

}  // namespace

FracOrder::FracOrder(double gamma, FracRole role) : gamma_(gamma), role_(role) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    detail::domain_fail("FracOrder: gamma must lie in (0, 1)");
  }
}

double PowerFunction::distance(double t) const {
  const double d = side == Side::left ? t - anchor : anchor - t;
  if (!(d > 0.0)) {
    detail::domain_fail("PowerFunction: point " + std::to_string(t) +
                        " outside the support");
  }
  return d;
}

double PowerFunction::operator()(double t) const {
  return coefficient * std::pow(distance(t), exponent);
}

PowerFunction integral_image(const PowerFunction& p, double gamma) {
  require_power(p, "riemann_liouville_integral_power");
  if (!(gamma > 0.0 && gamma < 2.0)) {
    detail::domain_fail("riemann_liouville_integral_power: gamma must lie in (0, 2)");
  }
  PowerFunction image = p;
  image.coefficient = p.coefficient * gamma_fn(p.exponent + 1.0) /
                      gamma_fn(p.exponent + 1.0 + gamma);
  image.exponent = p.exponent + gamma;
  return image;
}

double riemann_liouville_integral_power(const PowerFunction& p, double gamma,
                                        double t) {
  return integral_image(p, gamma)(t);
}

namespace {

PowerFunction derivative_image_unchecked(const PowerFunction& p, double gamma) {
  require_power(p, "riemann_liouville_derivative_power");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    detail::domain_fail("riemann_liouville_derivative_power: gamma must lie in (0, 1)");
  }
  PowerFunction image = p;
  image.coefficient = p.coefficient * gamma_fn(p.exponent + 1.0) *
                      reciprocal_gamma(p.exponent + 1.0 - gamma);
  image.exponent = p.exponent - gamma;
  return image;
}

}  // namespace

PowerFunction derivative_image(const PowerFunction& p, double gamma) {
  PowerFunction image = derivative_image_unchecked(p, gamma);
  if (!(image.exponent > -1.0)) {
    detail::domain_fail("derivative_image: image exponent " +
                        std::to_string(image.exponent) +
                        " is not locally integrable");
  }
  return image;
}

double riemann_liouville_derivative_power(const PowerFunction& p, double gamma,
                                          double t) {
  const PowerFunction image = derivative_image_unchecked(p, gamma);
  if (image.coefficient == 0.0) {
    p.distance(t);
    return 0.0;
  }
  return image(t);
}

PowerFunction apply(const FracOrder& order, const PowerFunction& p) {
  switch (order.role()) {
    case FracRole::integral:
      return integral_image(p, order.gamma());
    case FracRole::left_derivative:
      if (p.side != Side::left) {
        detail::domain_fail("apply: left derivative of a right-sided power");
      }
      return derivative_image(p, order.gamma());
    case FracRole::right_derivative:
      if (p.side != Side::right) {
        detail::domain_fail("apply: right derivative of a left-sided power");
      }
      return derivative_image(p, order.gamma());
  }
  detail::domain_fail("apply: unknown role");
}

TemporalWeightMatrix::TemporalWeightMatrix(TemporalGrid grid, double alpha)
    : grid_(std::move(grid)), alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    detail::domain_fail("temporal_weights: alpha must lie in (0, 1)");
  }
  const double e = 1.0 - alpha;
  const double norm = 1.0 / gamma_fn(2.0 - alpha);
  const std::size_t n = grid_.steps();
  if (grid_.is_uniform()) {
    const double scale = std::pow(grid_.step(0), e) * norm;
    toeplitz_.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
      toeplitz_[m] = scale * unit_second_difference(m, e);
    }
  } else {
    packed_.resize(n * (n + 1) / 2);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j <= k; ++j) {
        packed_[k * (k + 1) / 2 + j] =
            interval_second_difference(grid_, k, j, e) * norm;
      }
    }
  }
}

double TemporalWeightMatrix::row_sum(std::size_t k) const {
  const double e = 1.0 - alpha_;
  return (std::pow(grid_.node(k + 1), e) - positive_power(grid_.node(k), e)) /
         gamma_fn(2.0 - alpha_);
}

TemporalWeightMatrix temporal_weights(const TemporalGrid& grid, double alpha) {
  return TemporalWeightMatrix(grid, alpha);
}

double fractional_derivative_pairing_pwc(const TemporalGrid& grid,
                                         std::span<const double> values,
                                         double gamma) {
  if (!(gamma > 0.0 && gamma < 0.5)) {
    detail::domain_fail(
        "fractional derivative pairing: gamma must lie in (0, 1/2); "
        "indicator functions are not in H^{1/2}");
  }
  return pwc_quadratic_form(grid, values, 1.0 - 2.0 * gamma);
}

double fractional_seminorm_pwc(const TemporalGrid& grid,
                               std::span<const double> values, double gamma) {
  const double pairing = fractional_derivative_pairing_pwc(grid, values, gamma);
  // Rounding can leave a tiny negative pairing for v == 0.
  return std::sqrt(std::max(0.0, pairing / std::cos(gamma * std::numbers::pi)));
}

double fractional_integral_pairing_pwc(const TemporalGrid& grid,
                                       std::span<const double> values,
                                       double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    detail::domain_fail("fractional integral pairing: gamma must lie in (0, 1)");
  }
  return pwc_quadratic_form(grid, values, 1.0 + 2.0 * gamma);
}

}  // namespace fracstep
