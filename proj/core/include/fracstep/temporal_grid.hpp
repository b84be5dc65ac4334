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

namespace fracstep {

/// Partition 0 = t_0 < t_1 < ... < t_J = T of the time interval. Intervals
/// are addressed 0-based: interval k is (t_k, t_{k+1}) with length step(k).
class TemporalGrid {
 public:
  /// J equal steps of length T / J. Nodes are computed as T * j / J.
  static TemporalGrid uniform(double final_time, std::size_t steps);

  /// Arbitrary partition; throws DomainError unless strictly increasing
  /// with nodes.front() == 0 and at least two nodes.
  static TemporalGrid from_nodes(std::vector<double> nodes);

  std::size_t steps() const { return nodes_.size() - 1; }
  double node(std::size_t j) const { return nodes_[j]; }
  double step(std::size_t k) const { return nodes_[k + 1] - nodes_[k]; }
  double final_time() const { return nodes_.back(); }
  std::span<const double> nodes() const { return nodes_; }

  /// True only for grids built by uniform(); a hand-built partition with
  /// equal steps still takes the general code paths.
  bool is_uniform() const { return uniform_; }

  /// Every node of `coarse` is a node of *this.
  bool refines(const TemporalGrid& coarse) const;

  /// For a refinement, the index of the coarse interval containing fine
  /// interval k.
  std::size_t coarse_interval(const TemporalGrid& coarse, std::size_t k) const;

  friend bool operator==(const TemporalGrid&, const TemporalGrid&) = default;

 private:
  TemporalGrid(std::vector<double> nodes, bool uniform)
      : nodes_(std::move(nodes)), uniform_(uniform) {}

  std::vector<double> nodes_;
  bool uniform_ = false;
};

}  // namespace fracstep
