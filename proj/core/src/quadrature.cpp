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

#include "fracstep/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "fracstep/errors.hpp"

namespace fracstep {
namespace {

struct HalfResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

template <class F>
HalfResult tanh_sinh(const F& f, double lo, double hi, double tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  HalfResult r;
  std::size_t levels = 0;
  r.value = integrator.integrate(f, lo, hi, tol, &r.error, &r.l1, &levels);
  return r;
}

}  // namespace

QuadratureResult quadrature_oracle(const SingularIntegrand& in,
                                   double relative_tolerance) {
  const double a = in.lower;
  const double b = in.upper;
  const double p = in.left_exponent;
  const double q = in.right_exponent;
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
    detail::domain_fail("quadrature_oracle: need a finite interval a < b");
  }
  if (!(p > -1.0) || !(q > -1.0)) {
    detail::domain_fail("quadrature_oracle: endpoint exponents must exceed -1");
  }
  if (!in.smooth) detail::domain_fail("quadrature_oracle: missing integrand");

  const double length = b - a;
  const double half = 0.5 * length;
  const double inner_tol = std::max(1e-16, 1e-4 * relative_tolerance);

  // Each half is integrated in the distance d from its own endpoint, so the
  // abscissas keep full resolution where the singular factor lives.
  const auto half_integral = [&](double near_exp, double far_exp, auto at) {
    HalfResult r;
    if (near_exp < 0.0) {
      // d = u^{1/(1+e)} absorbs d^e.
      const double e = 1.0 / (1.0 + near_exp);
      auto f = [&](double u) {
        const double d = std::pow(u, e);
        return std::pow(length - d, far_exp) * in.smooth(at(d));
      };
      r = tanh_sinh(f, 0.0, std::pow(half, 1.0 + near_exp), inner_tol);
      r.value /= (1.0 + near_exp);
      r.error /= (1.0 + near_exp);
      r.l1 /= (1.0 + near_exp);
    } else {
      auto f = [&](double d) {
        return std::pow(d, near_exp) * std::pow(length - d, far_exp) *
               in.smooth(at(d));
      };
      r = tanh_sinh(f, 0.0, half, inner_tol);
    }
    return r;
  };
  const HalfResult left = half_integral(p, q, [a](double d) { return a + d; });
  const HalfResult right = half_integral(q, p, [b](double d) { return b - d; });

  QuadratureResult result;
  result.value = left.value + right.value;
  result.error_estimate = left.error + right.error;
  const double scale = std::max(left.l1 + right.l1, std::abs(result.value));
  if (!std::isfinite(result.value) ||
      result.error_estimate > relative_tolerance * scale) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "quadrature_oracle: estimated error " << result.error_estimate
        << " exceeds relative tolerance " << relative_tolerance << " of "
        << scale;
    throw ConvergenceError(msg.str());
  }
  return result;
}

}  // namespace fracstep
