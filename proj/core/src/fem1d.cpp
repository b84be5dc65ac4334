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

#include "fracstep/fem1d.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracstep/errors.hpp"

namespace fracstep {

Mesh1D::Mesh1D(std::size_t n_cells) : cells_(n_cells) {
  if (n_cells < 2) {
    detail::domain_fail("Mesh1D: need at least two cells (one interior node)");
  }
}

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> lower,
                                     std::vector<double> diag,
                                     std::vector<double> upper)
    : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper)) {
  if (diag_.empty() || lower_.size() + 1 != diag_.size() ||
      upper_.size() + 1 != diag_.size()) {
    detail::domain_fail("TridiagonalMatrix: inconsistent band sizes");
  }
}

TridiagonalMatrix TridiagonalMatrix::from_stencil(std::size_t n, double sub,
                                                  double diag, double super) {
  if (n == 0) detail::domain_fail("TridiagonalMatrix: empty matrix");
  return TridiagonalMatrix(std::vector<double>(n - 1, sub),
                           std::vector<double>(n, diag),
                           std::vector<double>(n - 1, super));
}

void TridiagonalMatrix::multiply(std::span<const double> x,
                                 std::span<double> y) const {
  const std::size_t n = size();
  if (x.size() != n || y.size() != n) {
    detail::domain_fail("TridiagonalMatrix::multiply: size mismatch");
  }
  if (n == 1) {
    y[0] = diag_[0] * x[0];
    return;
  }
  y[0] = diag_[0] * x[0] + upper_[0] * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    y[i] = lower_[i - 1] * x[i - 1] + diag_[i] * x[i] + upper_[i] * x[i + 1];
  }
  y[n - 1] = lower_[n - 2] * x[n - 2] + diag_[n - 1] * x[n - 1];
}

std::vector<double> TridiagonalMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(size());
  multiply(x, y);
  return y;
}

double TridiagonalMatrix::quadratic_form(std::span<const double> x) const {
  const std::vector<double> y = *this * x;
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sum += x[i] * y[i];
  return sum;
}

bool TridiagonalMatrix::is_symmetric() const { return lower_ == upper_; }

TridiagonalMatrix linear_combination(double a, const TridiagonalMatrix& lhs,
                                     double b, const TridiagonalMatrix& rhs) {
  if (lhs.size() != rhs.size()) {
    detail::domain_fail("linear_combination: size mismatch");
  }
  std::vector<double> lower(lhs.lower_.size()), diag(lhs.size()),
      upper(lhs.upper_.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    diag[i] = a * lhs.diag_[i] + b * rhs.diag_[i];
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    lower[i] = a * lhs.lower_[i] + b * rhs.lower_[i];
    upper[i] = a * lhs.upper_[i] + b * rhs.upper_[i];
  }
  return TridiagonalMatrix(std::move(lower), std::move(diag), std::move(upper));
}

TridiagonalFactorization::TridiagonalFactorization(const TridiagonalMatrix& a)
    : lower_(a.lower().begin(), a.lower().end()),
      upper_(a.upper().begin(), a.upper().end()),
      pivot_(a.size()) {
  const auto diag = a.diag();
  auto check = [&](std::size_t i) {
    double scale = std::abs(diag[i]);
    if (i > 0) scale += std::abs(a.lower()[i - 1]);
    if (i < upper_.size()) scale += std::abs(upper_[i]);
    if (!std::isfinite(pivot_[i]) || !(std::abs(pivot_[i]) > 1e-14 * scale)) {
      throw SingularSystemError("tridiagonal elimination: vanishing pivot in row " +
                                std::to_string(i));
    }
  };
  pivot_[0] = diag[0];
  check(0);
  for (std::size_t i = 1; i < pivot_.size(); ++i) {
    lower_[i - 1] /= pivot_[i - 1];
    pivot_[i] = diag[i] - lower_[i - 1] * upper_[i - 1];
    check(i);
  }
}

void TridiagonalFactorization::solve(std::span<const double> rhs,
                                     std::span<double> x) const {
  const std::size_t n = pivot_.size();
  if (rhs.size() != n || x.size() != n) {
    detail::domain_fail("TridiagonalFactorization::solve: size mismatch");
  }
  x[0] = rhs[0];
  for (std::size_t i = 1; i < n; ++i) x[i] = rhs[i] - lower_[i - 1] * x[i - 1];
  x[n - 1] /= pivot_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (x[i] - upper_[i] * x[i + 1]) / pivot_[i];
  }
}

TridiagonalMatrix assemble_mass(const Mesh1D& mesh) {
  const double h = mesh.h();
  return TridiagonalMatrix::from_stencil(mesh.unknowns(), h / 6.0, 4.0 * h / 6.0,
                                         h / 6.0);
}

TridiagonalMatrix assemble_stiffness(const Mesh1D& mesh) {
  const double inv_h = static_cast<double>(mesh.cells());
  return TridiagonalMatrix::from_stencil(mesh.unknowns(), -inv_h, 2.0 * inv_h,
                                         -inv_h);
}

std::vector<double> power_load_vector(const Mesh1D& mesh, double r) {
  if (!(r > -1.0) || !std::isfinite(r)) {
    detail::domain_fail("power_load_vector: exponent must exceed -1");
  }
  // int x^r phi_n = [F(x_{n+1}) - 2 F(x_n) + F(x_{n-1})] / h with
  // F(x) = x^{r+2} / ((r+1)(r+2)). The bracket is F(x_n) times
  // (1 + 1/n)^{r+2} - 2 + (1 - 1/n)^{r+2}, evaluated through expm1/log1p.
  const double h = mesh.h();
  const double e = r + 2.0;
  std::vector<double> load(mesh.unknowns());
  for (std::size_t i = 0; i < load.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double f = std::pow(mesh.node(i), e) / ((r + 1.0) * e);
    const double bracket = std::expm1(e * std::log1p(1.0 / n)) +
                           std::expm1(e * std::log1p(-1.0 / n));
    load[i] = f * bracket / h;
  }
  return load;
}

std::vector<double> sine_load_vector(const Mesh1D& mesh, int mode) {
  if (mode < 1) detail::domain_fail("sine_load_vector: mode must be >= 1");
  const double k = mode * std::numbers::pi;
  const double h = mesh.h();
  const double s = std::sin(0.5 * k * h);
  const double factor = 4.0 * s * s / (k * k * h);
  std::vector<double> load(mesh.unknowns());
  for (std::size_t i = 0; i < load.size(); ++i) {
    load[i] = std::sin(k * mesh.node(i)) * factor;
  }
  return load;
}

std::vector<double> sine_nodal_vector(const Mesh1D& mesh, int mode) {
  if (mode < 1) detail::domain_fail("sine_nodal_vector: mode must be >= 1");
  std::vector<double> v(mesh.unknowns());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::sin(mode * std::numbers::pi * mesh.node(i));
  }
  return v;
}

double discrete_eigenvalue(const Mesh1D& mesh, int mode) {
  if (mode < 1) detail::domain_fail("discrete_eigenvalue: mode must be >= 1");
  const double h = mesh.h();
  const double theta = mode * std::numbers::pi * h;
  const double s = std::sin(0.5 * theta);
  return 12.0 * s * s / (h * h * (2.0 + std::cos(theta)));
}

std::vector<double> prolong(const Mesh1D& coarse, std::span<const double> values,
                            const Mesh1D& fine) {
  if (!fine.refines(coarse)) {
    throw NestingError("prolong: fine mesh (" + std::to_string(fine.cells()) +
                       " cells) does not refine coarse mesh (" +
                       std::to_string(coarse.cells()) + " cells)");
  }
  if (values.size() != coarse.unknowns()) {
    detail::domain_fail("prolong: value count does not match the coarse mesh");
  }
  const std::size_t factor = fine.cells() / coarse.cells();
  auto coarse_value = [&](std::size_t node) {  // node in 0..cells, boundary = 0
    return (node == 0 || node == coarse.cells()) ? 0.0 : values[node - 1];
  };
  std::vector<double> out(fine.unknowns());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t n = i + 1;
    const std::size_t cell = n / factor;
    const std::size_t offset = n % factor;
    if (offset == 0) {
      out[i] = coarse_value(cell);
    } else {
      const double w = static_cast<double>(offset) / static_cast<double>(factor);
      out[i] = (1.0 - w) * coarse_value(cell) + w * coarse_value(cell + 1);
    }
  }
  return out;
}

std::vector<double> restrict_by_injection(const Mesh1D& fine,
                                          std::span<const double> values,
                                          const Mesh1D& coarse) {
  if (!fine.refines(coarse)) {
    throw NestingError("restrict_by_injection: meshes are not nested");
  }
  if (values.size() != fine.unknowns()) {
    detail::domain_fail("restrict_by_injection: value count does not match the fine mesh");
  }
  const std::size_t factor = fine.cells() / coarse.cells();
  std::vector<double> out(coarse.unknowns());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = values[(i + 1) * factor - 1];
  }
  return out;
}

FieldNorms squared_norms(const Mesh1D& mesh, std::span<const double> values) {
  if (values.size() != mesh.unknowns()) {
    detail::domain_fail("squared_norms: value count does not match the mesh");
  }
  const double h = mesh.h();
  double l2 = 0.0;
  double h1 = 0.0;
  double left = 0.0;
  for (std::size_t c = 0; c < mesh.cells(); ++c) {
    const double right = c < values.size() ? values[c] : 0.0;
    l2 += left * left + left * right + right * right;
    h1 += (right - left) * (right - left);
    left = right;
  }
  return {l2 * h / 3.0, h1 / h};
}

FieldNorms field_norms(const SpatialField& a, const SpatialField& b) {
  if (!b.mesh.refines(a.mesh)) {
    throw NestingError("field_norms: second mesh must refine the first");
  }
  std::vector<double> diff = prolong(a.mesh, a.values, b.mesh);
  if (b.values.size() != diff.size()) {
    detail::domain_fail("field_norms: value count does not match the mesh");
  }
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = b.values[i] - diff[i];
  const FieldNorms sq = squared_norms(b.mesh, diff);
  return {std::sqrt(sq.l2), std::sqrt(sq.h1)};
}

}  // namespace fracstep
