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

// Closed-form Riemann-Liouville calculus for power functions and piecewise
// constants on a temporal grid.
//
// For gamma > 0 the left- and right-sided integrals of a power function are
//
//   I_{a+}^g (t - a)^s = G(s + 1) / G(s + 1 + g) (t - a)^{s + g},
//   I_{b-}^g (b - t)^s = G(s + 1) / G(s + 1 + g) (b - t)^{s + g},
//
// and the derivatives of order g in (0, 1) follow with g replaced by -g. All
// piecewise-constant pairings reduce to second differences of x_+^e over the
// grid nodes, with x_+^e = 0 at x = 0 exactly.

#include <cstddef>
#include <span>
#include <vector>

#include "fracstep/temporal_grid.hpp"

namespace fracstep {

enum class FracRole { integral, left_derivative, right_derivative };

/// Fractional order gamma in (0, 1) tagged with how it is applied.
class FracOrder {
 public:
  FracOrder(double gamma, FracRole role);
  double gamma() const { return gamma_; }
  FracRole role() const { return role_; }

 private:
  double gamma_;
  FracRole role_;
};

enum class Side {
  left,   ///< c (t - a)^s, supported on t > a
  right,  ///< c (a - t)^s, supported on t < a
};

/// c (t - a)^s (left) or c (a - t)^s (right) with s > -1.
struct PowerFunction {
  double coefficient = 1.0;
  double exponent = 0.0;
  double anchor = 0.0;
  Side side = Side::left;

  /// Distance from the anchor into the support; DomainError outside it.
  double distance(double t) const;
  double operator()(double t) const;
};

/// Fractional integral of order gamma in (0, 2) evaluated at t. Left-sided
/// functions get I_{a+}, right-sided ones I_{b-} with b the anchor.
double riemann_liouville_integral_power(const PowerFunction& p, double gamma,
                                        double t);

/// Fractional derivative of order gamma in (0, 1) at t: D_{a+} for left-sided
/// functions, D_{b-} for right-sided ones.
double riemann_liouville_derivative_power(const PowerFunction& p, double gamma,
                                          double t);

/// The image of p under the integral of order gamma, again a power function.
PowerFunction integral_image(const PowerFunction& p, double gamma);

/// The image of p under the derivative of order gamma. Requires the image
/// exponent s - gamma > -1 so the result is locally integrable.
PowerFunction derivative_image(const PowerFunction& p, double gamma);

/// Dispatch on the order's role. Derivative roles must match the side of p.
PowerFunction apply(const FracOrder& order, const PowerFunction& p);

/// Lower-triangular causal matrix G[k][j] = <D_{0+}^alpha chi_j, chi_k> for
/// the indicator functions of the grid intervals. Immutable once built.
///
/// Uniform grids store the Toeplitz generator only; other grids store the
/// packed lower triangle.
class TemporalWeightMatrix {
 public:
  TemporalWeightMatrix(TemporalGrid grid, double alpha);

  const TemporalGrid& grid() const { return grid_; }
  double alpha() const { return alpha_; }
  std::size_t size() const { return grid_.steps(); }
  bool is_toeplitz() const { return !toeplitz_.empty(); }

  double operator()(std::size_t k, std::size_t j) const {
    if (j > k) return 0.0;
    if (is_toeplitz()) return toeplitz_[k - j];
    return packed_[k * (k + 1) / 2 + j];
  }
  double diagonal(std::size_t k) const { return (*this)(k, k); }

  /// Closed-form row sum (t_{k+1}^{1-alpha} - t_k^{1-alpha}) / G(2 - alpha).
  double row_sum(std::size_t k) const;

  /// Toeplitz generator g_m = G[k][k - m]; empty for non-uniform grids.
  std::span<const double> toeplitz_generator() const { return toeplitz_; }

 private:
  TemporalGrid grid_;
  double alpha_;
  std::vector<double> toeplitz_;
  std::vector<double> packed_;
};

/// Builds G for the given grid and alpha in (0, 1).
TemporalWeightMatrix temporal_weights(const TemporalGrid& grid, double alpha);

/// Closed-form <D_{0+}^gamma v, D_{T-}^gamma v> for piecewise-constant v,
/// gamma in (0, 1/2).
double fractional_derivative_pairing_pwc(const TemporalGrid& grid,
                                         std::span<const double> values,
                                         double gamma);

/// |v|_{H^gamma(0,T)} for piecewise-constant v, recovered from the
/// derivative pairing divided by cos(gamma pi). gamma must lie in (0, 1/2);
/// indicator functions are not in H^{1/2}.
double fractional_seminorm_pwc(const TemporalGrid& grid,
                               std::span<const double> values, double gamma);

/// Closed-form <I_{0+}^gamma v, I_{T-}^gamma v> for piecewise-constant v.
double fractional_integral_pairing_pwc(const TemporalGrid& grid,
                                       std::span<const double> values,
                                       double gamma);

}  // namespace fracstep
