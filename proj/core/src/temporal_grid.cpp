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

#include "fracstep/temporal_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracstep/errors.hpp"

namespace fracstep {

TemporalGrid TemporalGrid::uniform(double final_time, std::size_t steps) {
  if (!(final_time > 0.0) || !std::isfinite(final_time)) {
    detail::domain_fail("TemporalGrid: final time must be positive");
  }
  if (steps == 0) detail::domain_fail("TemporalGrid: need at least one step");
  std::vector<double> nodes(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) {
    nodes[j] = final_time * static_cast<double>(j) / static_cast<double>(steps);
  }
  nodes.back() = final_time;
  return TemporalGrid(std::move(nodes), true);
}

TemporalGrid TemporalGrid::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 2) detail::domain_fail("TemporalGrid: need two nodes");
  if (nodes.front() != 0.0) detail::domain_fail("TemporalGrid: t_0 must be 0");
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (!std::isfinite(nodes[j]) || !(nodes[j] > nodes[j - 1])) {
      detail::domain_fail("TemporalGrid: nodes must be strictly increasing (at " +
                          std::to_string(j) + ")");
    }
  }
  return TemporalGrid(std::move(nodes), false);
}

bool TemporalGrid::refines(const TemporalGrid& coarse) const {
  const double tol = 1e-12 * final_time();
  if (std::abs(final_time() - coarse.final_time()) > tol) return false;
  if (uniform_ && coarse.uniform_) return steps() % coarse.steps() == 0;
  std::size_t f = 0;
  for (double t : coarse.nodes_) {
    while (f < nodes_.size() && nodes_[f] < t - tol) ++f;
    if (f == nodes_.size() || std::abs(nodes_[f] - t) > tol) return false;
  }
  return true;
}

std::size_t TemporalGrid::coarse_interval(const TemporalGrid& coarse,
                                          std::size_t k) const {
  if (uniform_ && coarse.uniform_) return k / (steps() / coarse.steps());
  const double mid = 0.5 * (nodes_[k] + nodes_[k + 1]);
  const auto it = std::upper_bound(coarse.nodes_.begin(), coarse.nodes_.end(), mid);
  return static_cast<std::size_t>(it - coarse.nodes_.begin()) - 1;
}

}  // namespace fracstep
