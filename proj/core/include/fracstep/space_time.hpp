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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fracstep/fem1d.hpp"
#include "fracstep/temporal_grid.hpp"

namespace fracstep {

/// Dense row-major J x N array; row k holds the spatial coefficients that
/// belong to time interval k.
class SpaceTimeArray {
 public:
  SpaceTimeArray() = default;
  SpaceTimeArray(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<double> row(std::size_t k) {
    return {data_.data() + k * cols_, cols_};
  }
  std::span<const double> row(std::size_t k) const {
    return {data_.data() + k * cols_, cols_};
  }
  double& operator()(std::size_t k, std::size_t i) { return data_[k * cols_ + i]; }
  double operator()(std::size_t k, std::size_t i) const {
    return data_[k * cols_ + i];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// *this += time[k] * space[i].
  void add_outer(std::span<const double> time, std::span<const double> space);

  SpaceTimeArray& operator+=(const SpaceTimeArray& other);

  friend bool operator==(const SpaceTimeArray&, const SpaceTimeArray&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// F[k][i] = <D_{0+}^alpha u_0 + f, chi_k phi_i>.
using LoadArray = SpaceTimeArray;

/// Discrete solution U in M_{h,tau}: constant in time on each interval,
/// piecewise linear in space.
struct SpaceTimeField {
  TemporalGrid grid;
  Mesh1D mesh;
  SpaceTimeArray coefficients;

  SpaceTimeField(TemporalGrid g, Mesh1D m)
      : grid(std::move(g)),
        mesh(m),
        coefficients(grid.steps(), mesh.unknowns()) {}

  std::span<double> step(std::size_t k) { return coefficients.row(k); }
  std::span<const double> step(std::size_t k) const {
    return coefficients.row(k);
  }
};

/// E1 = ||u - U||_{L2(0,T;H1_0)}, E2 = ||u - U||_{L2(0,T;L2)}.
struct SpaceTimeErrors {
  double e1 = 0.0;
  double e2 = 0.0;
};

/// Exact space-time errors of `coarse` against a finer nested discrete
/// solution. The time-piecewise-constant difference is integrated exactly
/// interval by interval on the common refinement. NestingError if `fine`
/// does not refine `coarse` in both space and time.
SpaceTimeErrors space_time_errors(const SpaceTimeField& coarse,
                                  const SpaceTimeField& fine);

}  // namespace fracstep
