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

#include "fracstep/space_time.hpp"

#include <cmath>

#include "fracstep/errors.hpp"

namespace fracstep {

void SpaceTimeArray::add_outer(std::span<const double> time,
                               std::span<const double> space) {
  if (time.size() != rows_ || space.size() != cols_) {
    detail::domain_fail("SpaceTimeArray::add_outer: size mismatch");
  }
  for (std::size_t k = 0; k < rows_; ++k) {
    double* out = data_.data() + k * cols_;
    for (std::size_t i = 0; i < cols_; ++i) out[i] += time[k] * space[i];
  }
}

SpaceTimeArray& SpaceTimeArray::operator+=(const SpaceTimeArray& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) {
    detail::domain_fail("SpaceTimeArray::operator+=: size mismatch");
  }
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
  return *this;
}

SpaceTimeErrors space_time_errors(const SpaceTimeField& coarse,
                                  const SpaceTimeField& fine) {
  if (!fine.grid.refines(coarse.grid)) {
    throw NestingError("space_time_errors: reference grid does not refine the time grid");
  }
  if (!fine.mesh.refines(coarse.mesh)) {
    throw NestingError("space_time_errors: reference mesh does not refine the mesh");
  }
  double e1 = 0.0;
  double e2 = 0.0;
  std::size_t current = fine.grid.steps();  // no coarse row prolonged yet
  std::vector<double> prolonged;
  std::vector<double> diff(fine.mesh.unknowns());
  for (std::size_t k = 0; k < fine.grid.steps(); ++k) {
    const std::size_t kc = fine.grid.coarse_interval(coarse.grid, k);
    if (kc != current) {
      prolonged = prolong(coarse.mesh, coarse.step(kc), fine.mesh);
      current = kc;
    }
    const auto row = fine.step(k);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = row[i] - prolonged[i];
    const FieldNorms sq = squared_norms(fine.mesh, diff);
    const double tau = fine.grid.step(k);
    e1 += tau * sq.h1;
    e2 += tau * sq.l2;
  }
  return {std::sqrt(e1), std::sqrt(e2)};
}

}  // namespace fracstep
