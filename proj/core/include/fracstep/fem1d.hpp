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

// Continuous piecewise-linear finite elements on a uniform mesh of (0, 1)
// with homogeneous Dirichlet conditions. Only the N = n_cells - 1 interior
// nodal values are unknowns; interior node i (0-based) sits at (i + 1) h.

#include <cstddef>
#include <span>
#include <vector>

namespace fracstep {

class Mesh1D {
 public:
  /// Uniform mesh with n_cells >= 2 cells of width 1 / n_cells.
  explicit Mesh1D(std::size_t n_cells);

  std::size_t cells() const { return cells_; }
  std::size_t unknowns() const { return cells_ - 1; }
  double h() const { return 1.0 / static_cast<double>(cells_); }

  /// Coordinate of interior node i, 0 <= i < unknowns().
  double node(std::size_t i) const {
    return static_cast<double>(i + 1) / static_cast<double>(cells_);
  }

  /// True when every node of `coarse` is a node of *this.
  bool refines(const Mesh1D& coarse) const {
    return cells_ % coarse.cells_ == 0;
  }

  friend bool operator==(const Mesh1D&, const Mesh1D&) = default;

 private:
  std::size_t cells_;
};

class TridiagonalMatrix {
 public:
  /// lower and upper have size diag.size() - 1; lower[i] couples rows i + 1
  /// and i.
  TridiagonalMatrix(std::vector<double> lower, std::vector<double> diag,
                    std::vector<double> upper);

  /// Constant-stencil matrix of dimension n.
  static TridiagonalMatrix from_stencil(std::size_t n, double sub, double diag,
                                        double super);

  std::size_t size() const { return diag_.size(); }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> diag() const { return diag_; }
  std::span<const double> upper() const { return upper_; }

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;

  double quadratic_form(std::span<const double> x) const;
  bool is_symmetric() const;

  /// a A + b B for matrices of equal size.
  friend TridiagonalMatrix linear_combination(double a,
                                              const TridiagonalMatrix& lhs,
                                              double b,
                                              const TridiagonalMatrix& rhs);

 private:
  std::vector<double> lower_;
  std::vector<double> diag_;
  std::vector<double> upper_;
};

/// LU factors of a tridiagonal matrix (Thomas algorithm), without pivoting.
/// Throws SingularSystemError when a pivot vanishes relative to the row
/// scale; for the symmetric positive definite systems of this library that
/// cannot happen.
class TridiagonalFactorization {
 public:
  explicit TridiagonalFactorization(const TridiagonalMatrix& a);

  std::size_t size() const { return pivot_.size(); }

  /// Solves A x = rhs. rhs and x may alias.
  void solve(std::span<const double> rhs, std::span<double> x) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> pivot_;
};

/// A member of S_h: nodal values at the interior nodes of `mesh`.
struct SpatialField {
  Mesh1D mesh;
  std::vector<double> values;
};

struct FieldNorms {
  double l2 = 0.0;
  double h1 = 0.0;  ///< L2 norm of the gradient
};

/// M = h / 6 tridiag(1, 4, 1).
TridiagonalMatrix assemble_mass(const Mesh1D& mesh);

/// K = 1 / h tridiag(-1, 2, -1).
TridiagonalMatrix assemble_stiffness(const Mesh1D& mesh);

/// Moments int_0^1 x^r phi_i(x) dx, r > -1, from closed-form
/// antiderivatives. The hat next to x = 0 is singular for r < 0 but finite.
std::vector<double> power_load_vector(const Mesh1D& mesh, double r);

/// Moments int_0^1 sin(m pi x) phi_i(x) dx, m >= 1.
std::vector<double> sine_load_vector(const Mesh1D& mesh, int mode);

/// Nodal interpolant of sin(m pi x).
std::vector<double> sine_nodal_vector(const Mesh1D& mesh, int mode);

/// Generalized eigenvalue of the (K, M) pencil for the sine vector of the
/// given mode: 6 (1 - cos(m pi h)) / (h^2 (2 + cos(m pi h))).
double discrete_eigenvalue(const Mesh1D& mesh, int mode);

/// Exact linear interpolation of a coarse field onto a nested finer mesh.
std::vector<double> prolong(const Mesh1D& coarse,
                            std::span<const double> values,
                            const Mesh1D& fine);

/// Injection of a fine field into a coarser nested mesh.
std::vector<double> restrict_by_injection(const Mesh1D& fine,
                                          std::span<const double> values,
                                          const Mesh1D& coarse);

/// Squared L2 and H1-seminorm of a field, evaluated cell by cell.
FieldNorms squared_norms(const Mesh1D& mesh, std::span<const double> values);

/// Norms of b - a on the finer mesh. `b.mesh` must refine `a.mesh`;
/// otherwise NestingError.
FieldNorms field_norms(const SpatialField& a, const SpatialField& b);

}  // namespace fracstep
