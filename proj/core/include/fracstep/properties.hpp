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

// Executable property suite: the operator identities behind the scheme, the
// finite-element invariants and the solver cross-checks, each against an
// independent oracle (tanh-sinh quadrature, dense linear algebra, scalar
// recursions). Used by `fracstep verify` and by the test suites.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fracstep {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct PropertyOptions {
  std::uint64_t seed = 20180417;
  std::size_t instances = 100;  ///< random draws per randomized property
};

PropertyResult check_gamma_accuracy(const PropertyOptions& options);
PropertyResult check_semigroup(const PropertyOptions& options);
PropertyResult check_duality(const PropertyOptions& options);
PropertyResult check_coercivity(const PropertyOptions& options);
PropertyResult check_integral_pairing_bounds(const PropertyOptions& options);
PropertyResult check_closed_forms_vs_quadrature(const PropertyOptions& options);
PropertyResult check_weight_matrix_structure(const PropertyOptions& options);
PropertyResult check_fem_invariants(const PropertyOptions& options);
PropertyResult check_block_system_equivalence(const PropertyOptions& options);
PropertyResult check_spectral_decoupling(const PropertyOptions& options);
PropertyResult check_causality(const PropertyOptions& options);
PropertyResult check_energy_identity(const PropertyOptions& options);

/// Runs every property above in a fixed order.
std::vector<PropertyResult> run_property_suite(const PropertyOptions& options);

}  // namespace fracstep
