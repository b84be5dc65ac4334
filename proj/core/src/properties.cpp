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

#include "fracstep/properties.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fracstep/assembly.hpp"
#include "fracstep/fem1d.hpp"
#include "fracstep/fracops.hpp"
#include "fracstep/gamma.hpp"
#include "fracstep/quadrature.hpp"
#include "fracstep/solver.hpp"

namespace fracstep {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClosedFormTol = 1e-12;
constexpr double kOracleTol = 1e-9;
constexpr double kSolverTol = 1e-10;

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t salt)
      : engine_(seed ^ (0x9e3779b97f4a7c15ull * (salt + 1))) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

double relative_error(double value, double reference) {
  const double scale = std::max(std::abs(value), std::abs(reference));
  if (scale == 0.0) return 0.0;
  return std::abs(value - reference) / scale;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Worst error seen by one property, with the instance that produced it.
class Tracker {
 public:
  explicit Tracker(double tolerance) : tolerance_(tolerance) {}

  void record(double error, const std::string& where) {
    ++count_;
    if (std::isnan(error)) error = INFINITY;
    if (error > worst_) {
      worst_ = error;
      where_ = where;
    }
  }
  void fail(const std::string& why) {
    if (failure_.empty()) failure_ = why;
  }

  PropertyResult result(std::string name) const {
    PropertyResult r;
    r.name = std::move(name);
    r.passed = failure_.empty() && std::isfinite(worst_) && worst_ <= tolerance_;
    r.detail = std::to_string(count_) + " checks, max error " + sci(worst_) +
               " (tol " + sci(tolerance_) + ")";
    if (!r.passed && !where_.empty()) r.detail += " at " + where_;
    if (!failure_.empty()) r.detail += "; " + failure_;
    return r;
  }

 private:
  double tolerance_;
  double worst_ = 0.0;
  std::size_t count_ = 0;
  std::string where_;
  std::string failure_;
};

struct PwcInstance {
  TemporalGrid grid;
  std::vector<double> values;
  double gamma;
};

PwcInstance random_pwc(Rng& rng, double gamma_lo, double gamma_hi) {
  const std::size_t steps = rng.integer(1, 8);
  const double final_time = rng.uniform(0.5, 2.0);
  std::vector<double> cuts(steps - 1);
  for (double& c : cuts) c = rng.uniform(0.0, 1.0);
  std::sort(cuts.begin(), cuts.end());
  // Keep every step at least 2% of the mean step.
  std::vector<double> nodes{0.0};
  const double floor_gap = 0.02 / static_cast<double>(steps);
  double previous = 0.0;
  for (double c : cuts) {
    const double x = std::max(c, previous + floor_gap);
    nodes.push_back(x);
    previous = x;
  }
  const double end = std::max(1.0, previous + floor_gap);
  for (double& x : nodes) x *= final_time / end;
  nodes.push_back(final_time);
  std::vector<double> values(steps);
  for (double& v : values) v = rng.uniform(-1.0, 1.0);
  return {TemporalGrid::from_nodes(std::move(nodes)), std::move(values),
          rng.uniform(gamma_lo, gamma_hi)};
}

// Sum over oracle calls on one interval.
double oracle(double a, double b, double p, double q,
              std::function<double(double)> smooth) {
  SingularIntegrand in;
  in.lower = a;
  in.upper = b;
  in.left_exponent = p;
  in.right_exponent = q;
  in.smooth = std::move(smooth);
  return quadrature_oracle(in).value;
}

// <D^g v, D_{T-}^g v> by quadrature of the pointwise derivatives. On I_k the
// jump at t_k makes the left derivative singular at the left end and the jump
// at t_{k+1} makes the right derivative singular at the right end.
double derivative_pairing_by_quadrature(const PwcInstance& c) {
  const std::size_t n = c.values.size();
  const double g = c.gamma;
  std::vector<double> left_jump(n), right_jump(n);
  for (std::size_t j = 0; j < n; ++j) {
    left_jump[j] = c.values[j] - (j > 0 ? c.values[j - 1] : 0.0);
    right_jump[j] = c.values[j] - (j + 1 < n ? c.values[j + 1] : 0.0);
  }
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = c.grid.node(k), b = c.grid.node(k + 1);
    auto tail_left = [&, k](double t) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        s += left_jump[j] * std::pow(t - c.grid.node(j), -g);
      }
      return s;
    };
    auto tail_right = [&, k](double t) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) {
        s += right_jump[j] * std::pow(c.grid.node(j + 1) - t, -g);
      }
      return s;
    };
    const double dk = left_jump[k], ek = right_jump[k];
    total += oracle(a, b, -g, -g, [&](double) { return dk * ek; });
    total += oracle(a, b, -g, 0.0, [&](double t) { return dk * tail_right(t); });
    total += oracle(a, b, 0.0, -g, [&](double t) { return tail_left(t) * ek; });
    total += oracle(a, b, 0.0, 0.0,
                    [&](double t) { return tail_left(t) * tail_right(t); });
  }
  const double rg = 1.0 / std::tgamma(1.0 - g);
  return total * rg * rg;
}

// ||I^g v||^2 on (0, T) by quadrature.
double integral_norm_by_quadrature(const PwcInstance& c) {
  const std::size_t n = c.values.size();
  const double g = c.gamma;
  std::vector<double> jump(n);
  for (std::size_t j = 0; j < n; ++j) {
    jump[j] = c.values[j] - (j > 0 ? c.values[j - 1] : 0.0);
  }
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = c.grid.node(k), b = c.grid.node(k + 1);
    auto tail = [&, k](double t) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        s += jump[j] * std::pow(t - c.grid.node(j), g);
      }
      return s;
    };
    const double dk = jump[k];
    total += oracle(a, b, 2.0 * g, 0.0, [&](double) { return dk * dk; });
    total += oracle(a, b, g, 0.0, [&](double t) { return 2.0 * dk * tail(t); });
    total += oracle(a, b, 0.0, 0.0, [&](double t) {
      const double s = tail(t);
      return s * s;
    });
  }
  const double rg = 1.0 / std::tgamma(1.0 + g);
  return total * rg * rg;
}

PowerFunction random_power(Rng& rng, double exponent) {
  PowerFunction p;
  p.coefficient = rng.uniform(0.5, 2.0) * (rng.coin() ? 1.0 : -1.0);
  p.exponent = exponent;
  p.anchor = rng.uniform(-1.0, 1.0);
  p.side = rng.coin() ? Side::left : Side::right;
  return p;
}

double point_in_support(Rng& rng, const PowerFunction& p, double lo, double hi) {
  const double d = rng.uniform(lo, hi);
  return p.side == Side::left ? p.anchor + d : p.anchor - d;
}

std::string describe(const PowerFunction& p, double gamma, double t) {
  return "c=" + sci(p.coefficient) + " s=" + sci(p.exponent) + " a=" +
         sci(p.anchor) + (p.side == Side::left ? " left" : " right") +
         " g=" + sci(gamma) + " t=" + sci(t);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Eigen::MatrixXd dense(const TridiagonalMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = a.diag()[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      m(i + 1, i) = a.lower()[static_cast<std::size_t>(i)];
      m(i, i + 1) = a.upper()[static_cast<std::size_t>(i)];
    }
  }
  return m;
}

TemporalGrid random_nonuniform_grid(Rng& rng, std::size_t steps, double final_time) {
  std::vector<double> nodes{0.0};
  double t = 0.0;
  std::vector<double> widths(steps);
  double sum = 0.0;
  for (double& w : widths) {
    w = rng.uniform(0.2, 1.0);
    sum += w;
  }
  for (std::size_t k = 0; k + 1 < steps; ++k) {
    t += widths[k] * final_time / sum;
    nodes.push_back(t);
  }
  nodes.push_back(final_time);
  return TemporalGrid::from_nodes(std::move(nodes));
}

LoadArray random_load(Rng& rng, std::size_t rows, std::size_t cols) {
  LoadArray f(rows, cols);
  for (double& x : f.data()) x = rng.uniform(-1.0, 1.0);
  return f;
}

}  // namespace

PropertyResult check_gamma_accuracy(const PropertyOptions& options) {
  Rng rng(options.seed, 1);
  Tracker t(1e-13);
  for (std::size_t i = 0; i < options.instances; ++i) {
    const double x = rng.uniform(1e-3, 10.0);
    t.record(relative_error(gamma_fn(x), std::tgamma(x)), "x=" + sci(x));
  }
  double factorial = 1.0;
  for (int n = 1; n <= 10; ++n) {
    t.record(relative_error(gamma_fn(n), factorial), "x=" + std::to_string(n));
    factorial *= n;
  }
  t.record(relative_error(gamma_fn(0.5), std::sqrt(kPi)), "x=0.5");
  return t.result("gamma_accuracy");
}

PropertyResult check_semigroup(const PropertyOptions& options) {
  Rng rng(options.seed, 2);
  Tracker t(kClosedFormTol);
  for (std::size_t i = 0; i < options.instances; ++i) {
    const PowerFunction p = random_power(rng, rng.uniform(-0.99, 2.0));
    const double beta = rng.uniform(0.05, 0.95);
    const double gamma = rng.uniform(0.05, 0.95);
    const double x = point_in_support(rng, p, 0.1, 3.0);
    const double nested =
        riemann_liouville_integral_power(integral_image(p, beta), gamma, x);
    const double direct = riemann_liouville_integral_power(p, beta + gamma, x);
    t.record(relative_error(nested, direct), describe(p, beta + gamma, x));
    // D^g I^g p = p.
    const double back =
        riemann_liouville_derivative_power(integral_image(p, gamma), gamma, x);
    t.record(relative_error(back, p(x)), describe(p, gamma, x));
  }
  return t.result("semigroup");
}

PropertyResult check_duality(const PropertyOptions& options) {
  Rng rng(options.seed, 3);
  Tracker t(kClosedFormTol);
  const double binomial[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  for (std::size_t i = 0; i < options.instances; ++i) {
    const std::size_t dv = rng.integer(0, 3), dw = rng.integer(0, 3);
    std::vector<double> a(dv + 1), b(dw + 1);
    for (double& x : a) x = rng.uniform(-1.0, 1.0);
    for (double& x : b) x = rng.uniform(-1.0, 1.0);
    const double beta = rng.uniform(0.05, 1.95);

    // <I_{0+}^b v, w>: image of each monomial of v against monomials of w.
    double lhs = 0.0, scale = 0.0;
    for (std::size_t m = 0; m <= dv; ++m) {
      const PowerFunction img =
          integral_image({a[m], static_cast<double>(m), 0.0, Side::left}, beta);
      for (std::size_t n = 0; n <= dw; ++n) {
        const double term = b[n] * img.coefficient / (img.exponent + n + 1.0);
        lhs += term;
        scale += std::abs(term);
      }
    }
    // <v, I_{1-}^b w>: w expanded in powers of (1 - t), Beta integrals.
    double rhs = 0.0;
    for (std::size_t n = 0; n <= dw; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const PowerFunction img = integral_image(
            {b[n] * binomial[n][k] * sign, static_cast<double>(k), 1.0, Side::right},
            beta);
        for (std::size_t m = 0; m <= dv; ++m) {
          rhs += a[m] * img.coefficient * beta_fn(m + 1.0, img.exponent + 1.0);
        }
      }
    }
    t.record(std::abs(lhs - rhs) / scale,
             "deg " + std::to_string(dv) + "," + std::to_string(dw) + " b=" + sci(beta));
  }
  return t.result("duality");
}

PropertyResult check_coercivity(const PropertyOptions& options) {
  Rng rng(options.seed, 4);
  Tracker t(kOracleTol);
  for (std::size_t i = 0; i < options.instances; ++i) {
    const PwcInstance c = random_pwc(rng, 0.02, 0.48);
    const std::string where = "instance " + std::to_string(i) + " J=" +
                              std::to_string(c.values.size()) + " g=" + sci(c.gamma);
    const double closed = fractional_derivative_pairing_pwc(c.grid, c.values, c.gamma);
    if (!(closed > 0.0)) t.fail("non-positive pairing at " + where);
    t.record(relative_error(closed, derivative_pairing_by_quadrature(c)), where);

    std::vector<double> scaled(c.values);
    for (double& v : scaled) v *= -3.0;
    const double s1 = fractional_seminorm_pwc(c.grid, c.values, c.gamma);
    const double s3 = fractional_seminorm_pwc(c.grid, scaled, c.gamma);
    if (relative_error(s3, 3.0 * s1) > kClosedFormTol) {
      t.fail("seminorm not homogeneous at " + where);
    }
  }
  const std::vector<double> zero(4, 0.0);
  if (fractional_seminorm_pwc(TemporalGrid::uniform(1.0, 4), zero, 0.3) != 0.0) {
    t.fail("seminorm of zero is not zero");
  }
  return t.result("coercivity");
}

PropertyResult check_integral_pairing_bounds(const PropertyOptions& options) {
  Rng rng(options.seed, 5);
  Tracker t(kOracleTol);
  double lowest = INFINITY, highest = 0.0;
  for (std::size_t i = 0; i < options.instances; ++i) {
    const PwcInstance c = random_pwc(rng, 0.02, 0.48);
    const std::string where = "instance " + std::to_string(i);
    const double pairing = fractional_integral_pairing_pwc(c.grid, c.values, c.gamma);
    const double norm2 = integral_norm_by_quadrature(c);
    const double ratio = pairing / norm2;
    const double lower = std::cos(c.gamma * kPi);
    if (!(pairing > 0.0)) t.fail("non-positive pairing at " + where);
    if (!std::isfinite(ratio)) t.fail("non-finite ratio at " + where);
    // Shortfall below the lower constant, relative to it.
    t.record(std::max(0.0, (lower - ratio) / lower), where);
    lowest = std::min(lowest, ratio / lower);
    highest = std::max(highest, ratio);
  }
  PropertyResult r = t.result("integral_pairing_bounds");
  char extra[96];
  std::snprintf(extra, sizeof extra, "; min ratio/cos(g pi) %.6f, max ratio %.6f",
                lowest, highest);
  r.detail += extra;
  return r;
}

PropertyResult check_closed_forms_vs_quadrature(const PropertyOptions& options) {
  Rng rng(options.seed, 6);
  Tracker t(kOracleTol);
  const std::size_t draws = std::max<std::size_t>(1, options.instances / 2);
  for (std::size_t i = 0; i < draws; ++i) {
    // Fractional integral, either side.
    {
      const PowerFunction p = random_power(rng, rng.uniform(-0.99, 2.0));
      const double g = rng.uniform(0.05, 0.95);
      const double x = point_in_support(rng, p, 0.1, 2.0);
      const double closed = riemann_liouville_integral_power(p, g, x);
      const double quad =
          p.side == Side::left
              ? oracle(p.anchor, x, p.exponent, g - 1.0, [](double) { return 1.0; })
              : oracle(x, p.anchor, g - 1.0, p.exponent, [](double) { return 1.0; });
      t.record(relative_error(closed, p.coefficient * quad / std::tgamma(g)),
               "integral " + describe(p, g, x));
    }
    // Fractional derivative: integrating the closed-form image back with the
    // oracle must return p.
    {
      const double s = rng.uniform(-0.9, 2.0);
      const PowerFunction p = random_power(rng, s);
      const double g = rng.uniform(0.05, std::max(0.05, std::min(0.95, s + 0.95)));
      const double x = point_in_support(rng, p, 0.1, 2.0);
      const PowerFunction d = derivative_image(p, g);
      const double quad =
          p.side == Side::left
              ? oracle(p.anchor, x, d.exponent, g - 1.0, [](double) { return 1.0; })
              : oracle(x, p.anchor, g - 1.0, d.exponent, [](double) { return 1.0; });
      t.record(relative_error(d.coefficient * quad / std::tgamma(g), p(x)),
               "derivative " + describe(p, g, x));
    }
  }
  // Constant on (0, 1) at g = 1/4: Beta integral of the two derivatives.
  const double pairing = fractional_derivative_pairing_pwc(
      TemporalGrid::uniform(1.0, 1), std::vector<double>{1.0}, 0.25);
  const double quad = oracle(0.0, 1.0, -0.25, -0.25, [](double) { return 1.0; }) /
                      (std::tgamma(0.75) * std::tgamma(0.75));
  t.record(relative_error(pairing, quad), "unit constant g=0.25");
  return t.result("closed_forms_vs_quadrature");
}

PropertyResult check_weight_matrix_structure(const PropertyOptions& options) {
  Rng rng(options.seed, 7);
  Tracker t(kClosedFormTol);
  Tracker q(kOracleTol);
  for (std::size_t i = 0; i < options.instances; ++i) {
    const double alpha = rng.uniform(0.05, 0.95);
    const std::size_t steps = rng.integer(2, 24);
    const double final_time = rng.uniform(0.25, 4.0);
    const std::string where = "a=" + sci(alpha) + " J=" + std::to_string(steps);

    const TemporalGrid uniform = TemporalGrid::uniform(final_time, steps);
    std::vector<double> nodes(uniform.nodes().begin(), uniform.nodes().end());
    const TemporalGrid general = TemporalGrid::from_nodes(nodes);
    const TemporalWeightMatrix gu(uniform, alpha);
    const TemporalWeightMatrix gn(general, alpha);
    if (!gu.is_toeplitz() || gn.is_toeplitz()) t.fail("wrong storage path at " + where);

    const double diag = std::pow(final_time / steps, 1.0 - alpha) / std::tgamma(2.0 - alpha);
    for (std::size_t k = 0; k < steps; ++k) {
      double sum = 0.0, abs_sum = 0.0;
      for (std::size_t j = 0; j <= k; ++j) {
        t.record(relative_error(gn(k, j), gu(k, j)), where + " general vs Toeplitz");
        if (k + 1 < steps) {
          t.record(relative_error(gn(k + 1, j + 1), gn(k, j)), where + " shift");
        }
        sum += gu(k, j);
        abs_sum += std::abs(gu(k, j));
      }
      if (k + 1 < steps && gu(k, k + 1) != 0.0) t.fail("upper entry at " + where);
      t.record(std::abs(sum - gu.row_sum(k)) / abs_sum, where + " row sum");
      t.record(relative_error(gu.diagonal(k), diag), where + " diagonal");
      if (!(gu.diagonal(k) > 0.0)) t.fail("non-positive diagonal at " + where);
    }

    // Nonuniform grid: random entries against the defining integral.
    const TemporalGrid grid = random_nonuniform_grid(rng, rng.integer(2, 8), final_time);
    const TemporalWeightMatrix g(grid, alpha);
    const double rg = 1.0 / std::tgamma(1.0 - alpha);
    for (int draw = 0; draw < 3; ++draw) {
      const std::size_t k = rng.integer(0, grid.steps() - 1);
      const std::size_t j = rng.integer(0, k);
      const double a = grid.node(k), b = grid.node(k + 1);
      const double tj0 = grid.node(j), tj1 = grid.node(j + 1);
      double quad = 0.0;
      if (j == k) {
        quad = oracle(a, b, -alpha, 0.0, [](double) { return 1.0; });
      } else if (j + 1 == k) {
        quad = oracle(a, b, 0.0, 0.0, [&](double x) { return std::pow(x - tj0, -alpha); }) -
               oracle(a, b, -alpha, 0.0, [](double) { return 1.0; });
      } else {
        quad = oracle(a, b, 0.0, 0.0, [&](double x) {
          return std::pow(x - tj0, -alpha) - std::pow(x - tj1, -alpha);
        });
      }
      q.record(relative_error(g(k, j), quad * rg),
               where + " entry " + std::to_string(k) + "," + std::to_string(j));
      const double local =
          std::pow(grid.step(k), 1.0 - alpha) / std::tgamma(2.0 - alpha);
      t.record(relative_error(g.diagonal(k), local), where + " nonuniform diagonal");
    }
  }
  PropertyResult a = t.result("weight_matrix_structure");
  const PropertyResult b = q.result("weight_matrix_structure");
  a.passed = a.passed && b.passed;
  a.detail = "identities: " + a.detail + "; vs quadrature: " + b.detail;
  return a;
}

PropertyResult check_fem_invariants(const PropertyOptions& options) {
  Rng rng(options.seed, 8);
  Tracker t(kOracleTol);

  const Mesh1D two(2);
  if (relative_error(assemble_mass(two).diag()[0], 1.0 / 3.0) > 1e-15 ||
      assemble_stiffness(two).diag()[0] != 4.0) {
    t.fail("two-cell matrices");
  }

  for (std::size_t i = 0; i < options.instances; ++i) {
    const std::size_t cells = rng.integer(2, 64);
    const Mesh1D mesh(cells);
    const std::string where = "n=" + std::to_string(cells);
    const TridiagonalMatrix m = assemble_mass(mesh);
    const TridiagonalMatrix k = assemble_stiffness(mesh);
    if (!m.is_symmetric() || !k.is_symmetric()) t.fail("asymmetric matrix at " + where);
    for (std::size_t r = 1; r + 1 < m.size(); ++r) {
      const double sum = m.lower()[r - 1] + m.diag()[r] + m.upper()[r];
      t.record(relative_error(sum, mesh.h()), where + " mass row sum");
    }
    std::vector<double> x(mesh.unknowns());
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    if (!(m.quadratic_form(x) > 0.0) || !(k.quadratic_form(x) > 0.0)) {
      t.fail("indefinite form at " + where);
    }

    const Mesh1D fine(cells * rng.integer(2, 4));
    if (restrict_by_injection(fine, prolong(mesh, x, fine), mesh) != x) {
      t.fail("prolong/restrict not identity at " + where);
    }

    // Power moments: positivity, interior entries and the total.
    const double r = rng.uniform(-0.99, 2.0);
    const std::vector<double> load = power_load_vector(mesh, r);
    const double h = mesh.h();
    double sum = 0.0;
    for (double v : load) {
      if (!(v > 0.0)) t.fail("non-positive power moment at " + where);
      sum += v;
    }
    const auto xr = [r](double s) { return std::pow(s, r); };
    const double left_hat = oracle(0.0, h, r, 1.0, [](double) { return 1.0; }) / h;
    const double right_hat = oracle(1.0 - h, 1.0, 1.0, 0.0, xr) / h;
    t.record(relative_error(sum, 1.0 / (r + 1.0) - left_hat - right_hat),
             where + " r=" + sci(r) + " total");
    const std::size_t e = rng.integer(0, mesh.unknowns() - 1);
    const double xi = mesh.node(e);
    const double lo = xi - h;
    const double left_piece =
        e == 0 ? oracle(0.0, h, r + 1.0, 0.0, [](double) { return 1.0; })
               : oracle(lo, xi, 1.0, 0.0, xr);
    const double right_piece = oracle(xi, xi + h, 0.0, 1.0, xr);
    t.record(relative_error(load[e], (left_piece + right_piece) / h),
             where + " r=" + sci(r) + " entry " + std::to_string(e));

    // Sine moments.
    const int mode = static_cast<int>(rng.integer(1, std::min<std::size_t>(4, cells - 1)));
    const std::vector<double> sine = sine_load_vector(mesh, mode);
    const auto sx = [mode](double s) { return std::sin(mode * kPi * s); };
    const double quad = (oracle(lo, xi, 1.0, 0.0, sx) + oracle(xi, xi + h, 0.0, 1.0, sx)) / h;
    t.record(std::abs(sine[e] - quad) / max_abs(sine),
             where + " sine mode " + std::to_string(mode));
  }

  // (K, M) pencil at eight cells against a dense eigensolve.
  const Mesh1D eight(8);
  const Eigen::MatrixXd kd = dense(assemble_stiffness(eight));
  const Eigen::MatrixXd md = dense(assemble_mass(eight));
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> pencil(kd, md);
  Tracker eig(kSolverTol);
  for (int mode = 1; mode < 8; ++mode) {
    const double lambda = discrete_eigenvalue(eight, mode);
    eig.record(relative_error(pencil.eigenvalues()(mode - 1), lambda),
               "eigenvalue " + std::to_string(mode));
    const std::vector<double> s = sine_nodal_vector(eight, mode);
    const Eigen::Map<const Eigen::VectorXd> sv(s.data(), static_cast<Eigen::Index>(s.size()));
    const Eigen::VectorXd residual = kd * sv - lambda * (md * sv);
    eig.record(residual.norm() / (kd * sv).norm(), "eigenvector " + std::to_string(mode));
  }

  // Norm path: zero against the sine interpolant on 64 cells.
  const Mesh1D m64(64);
  const FieldNorms nrm = field_norms({m64, std::vector<double>(63, 0.0)},
                                     {m64, sine_nodal_vector(m64, 1)});
  if (std::abs(nrm.l2 - std::sqrt(0.5)) > 1e-3) t.fail("sine interpolant L2 norm");

  PropertyResult a = t.result("fem_invariants");
  const PropertyResult b = eig.result("fem_invariants");
  a.passed = a.passed && b.passed;
  a.detail = "moments: " + a.detail + "; pencil: " + b.detail;
  return a;
}

PropertyResult check_block_system_equivalence(const PropertyOptions& options) {
  Rng rng(options.seed, 9);
  Tracker t(kSolverTol);
  Tracker hist(kClosedFormTol);
  const Mesh1D mesh(8);
  const std::size_t n = mesh.unknowns();
  const Eigen::MatrixXd md = dense(assemble_mass(mesh));
  const Eigen::MatrixXd kd = dense(assemble_stiffness(mesh));
  const TridiagonalMatrix mass = assemble_mass(mesh);
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (bool uniform : {true, false}) {
      const std::size_t steps = 16;
      const TemporalGrid grid = uniform ? TemporalGrid::uniform(1.0, steps)
                                        : random_nonuniform_grid(rng, steps, 1.0);
      const TemporalWeightMatrix g(grid, alpha);
      const LoadArray f = random_load(rng, steps, n);
      const std::string where = "alpha=" + sci(alpha) + (uniform ? " uniform" : " graded");

      const auto size = static_cast<Eigen::Index>(steps * n);
      const auto bn = static_cast<Eigen::Index>(n);
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
      for (std::size_t k = 0; k < steps; ++k) {
        const auto row = static_cast<Eigen::Index>(k) * bn;
        for (std::size_t j = 0; j <= k; ++j) {
          a.block(row, static_cast<Eigen::Index>(j) * bn, bn, bn) = g(k, j) * md;
        }
        a.block(row, row, bn, bn) += grid.step(k) * kd;
      }
      const Eigen::Map<const Eigen::VectorXd> rhs(f.data().data(), size);
      const Eigen::VectorXd u = a.partialPivLu().solve(rhs);

      const SolveResult marched = solve_with_load(g, mesh, f);
      const auto md_ = marched.field.coefficients.data();
      double diff = 0.0;
      for (Eigen::Index i = 0; i < size; ++i) {
        diff = std::max(diff, std::abs(md_[static_cast<std::size_t>(i)] - u(i)));
      }
      t.record(diff / u.cwiseAbs().maxCoeff(), where);

      // History term against the strictly lower block row of the dense matrix.
      const std::size_t k = rng.integer(1, steps - 1);
      const std::vector<double> h = history_sum(g, mass, marched.field.coefficients, k);
      const auto row = static_cast<Eigen::Index>(k) * bn;
      const Eigen::Map<const Eigen::VectorXd> um(md_.data(), size);
      const Eigen::VectorXd expect = a.block(row, 0, bn, row) * um.head(row);
      double hd = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        hd = std::max(hd, std::abs(h[i] - expect(static_cast<Eigen::Index>(i))));
      }
      hist.record(hd / expect.cwiseAbs().maxCoeff(), where + " history k=" + std::to_string(k));
    }
  }
  PropertyResult a = t.result("block_system_equivalence");
  const PropertyResult b = hist.result("block_system_equivalence");
  a.passed = a.passed && b.passed;
  a.detail = "solve: " + a.detail + "; history: " + b.detail;
  return a;
}

PropertyResult check_spectral_decoupling(const PropertyOptions& /*options*/) {
  Tracker t(kSolverTol);
  const Mesh1D mesh(32);
  const double alpha = 0.6;
  const TemporalGrid grid = TemporalGrid::uniform(1.0, 128);
  for (int mode : {1, 5}) {
    const SpectralTestProblem problem = spectral_test_problem(mode, mesh, alpha);
    const SolveResult pde = solve(problem.spec, grid, mesh);
    const std::vector<double> zero(grid.steps(), 0.0);
    const std::vector<double> y = scalar_solve(alpha, problem.lambda_h, grid, 1.0, zero);
    const double smax = max_abs(problem.sine_vector);
    for (std::size_t k = 0; k < grid.steps(); ++k) {
      const auto u = pde.field.step(k);
      double diff = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        diff = std::max(diff, std::abs(u[i] - y[k] * problem.sine_vector[i]));
      }
      t.record(diff / (std::abs(y[k]) * smax),
               "mode " + std::to_string(mode) + " step " + std::to_string(k));
    }
  }
  return t.result("spectral_decoupling");
}

PropertyResult check_causality(const PropertyOptions& options) {
  Rng rng(options.seed, 10);
  Tracker t(0.0);
  const std::size_t trials = std::max<std::size_t>(1, options.instances / 10);
  for (std::size_t i = 0; i < trials; ++i) {
    const Mesh1D mesh(rng.integer(2, 32));
    const std::size_t steps = rng.integer(2, 24);
    const TemporalGrid grid = rng.coin() ? TemporalGrid::uniform(1.0, steps)
                                         : random_nonuniform_grid(rng, steps, 1.0);
    const TemporalWeightMatrix g(grid, rng.uniform(0.05, 0.95));
    LoadArray f = random_load(rng, steps, mesh.unknowns());
    const SolveResult before = solve_with_load(g, mesh, f);
    const std::size_t k = rng.integer(0, steps - 2);
    for (std::size_t r = k + 1; r < steps; ++r) {
      for (double& x : f.row(r)) x += rng.uniform(-1.0, 1.0);
    }
    const SolveResult after = solve_with_load(g, mesh, f);
    const std::size_t bytes = (k + 1) * mesh.unknowns() * sizeof(double);
    const bool same = std::memcmp(before.field.coefficients.data().data(),
                                  after.field.coefficients.data().data(), bytes) == 0;
    t.record(same ? 0.0 : 1.0, "trial " + std::to_string(i) + " k=" + std::to_string(k));

    const SolveResult zero = solve_with_load(g, mesh, LoadArray(steps, mesh.unknowns()));
    for (double x : zero.field.coefficients.data()) {
      if (x != 0.0) t.fail("zero data produced a nonzero field");
    }
  }
  return t.result("causality");
}

PropertyResult check_energy_identity(const PropertyOptions& options) {
  Rng rng(options.seed, 11);
  Tracker t(kSolverTol);
  const Mesh1D mesh(32);
  const TemporalGrid grid = TemporalGrid::uniform(1.0, 64);
  std::vector<std::pair<std::string, ProblemSpec>> problems = {
      {"exp1", experiment1(0.2, -0.8)},
      {"exp1 r=-0.99", experiment1(0.4, -0.99)},
      {"exp2 c=1", experiment2(0.7, 1.0)},
      {"exp3", experiment3(0.8)},
      {"manufactured", manufactured_problem(0.8).spec},
      {"spectral", spectral_test_problem(2, mesh, 0.6).spec},
  };
  SolveOptions opts;
  opts.check_energy_identity = true;
  for (const auto& [name, spec] : problems) {
    const SolveResult r = solve(spec, grid, mesh, opts);
    t.record(r.report.energy_defect.value_or(INFINITY), name);
  }
  const std::size_t trials = std::max<std::size_t>(1, options.instances / 10);
  for (std::size_t i = 0; i < trials; ++i) {
    const TemporalGrid g = random_nonuniform_grid(rng, rng.integer(2, 32), 1.0);
    const Mesh1D m(rng.integer(2, 32));
    const TemporalWeightMatrix w(g, rng.uniform(0.05, 0.95));
    const SolveResult r = solve_with_load(w, m, random_load(rng, g.steps(), m.unknowns()), opts);
    t.record(r.report.energy_defect.value_or(INFINITY), "random " + std::to_string(i));
  }
  return t.result("energy_identity");
}

std::vector<PropertyResult> run_property_suite(const PropertyOptions& options) {
  using Check = PropertyResult (*)(const PropertyOptions&);
  static const std::pair<const char*, Check> kChecks[] = {
      {"gamma_accuracy", check_gamma_accuracy},
      {"semigroup", check_semigroup},
      {"duality", check_duality},
      {"coercivity", check_coercivity},
      {"integral_pairing_bounds", check_integral_pairing_bounds},
      {"closed_forms_vs_quadrature", check_closed_forms_vs_quadrature},
      {"weight_matrix_structure", check_weight_matrix_structure},
      {"fem_invariants", check_fem_invariants},
      {"block_system_equivalence", check_block_system_equivalence},
      {"spectral_decoupling", check_spectral_decoupling},
      {"causality", check_causality},
      {"energy_identity", check_energy_identity},
  };
  std::vector<PropertyResult> results;
  for (const auto& [name, check] : kChecks) {
    try {
      results.push_back(check(options));
    } catch (const std::exception& e) {
      results.push_back({name, false, std::string("raised: ") + e.what()});
    }
  }
  return results;
}

}  // namespace fracstep
