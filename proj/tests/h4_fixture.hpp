// Copyright 2026 The NoVa-ADAPT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "nova/adapt.hpp"
#include "nova/experiment.hpp"
#include "nova/fermion.hpp"
#include "nova/hamiltonian_io.hpp"

namespace nova::testing {

/// Bundled H4 problem and pools, built once per test binary.
struct H4 {
  HamiltonianFile file = load_hamiltonian(default_hamiltonian_path());
  Problem problem{file.to_sum()};
  OperatorPool pool{build_spin_adapted_pool(4, file.ordering)};
  StateVector hf = hartree_fock_state(8, 4, file.ordering);
};

inline const H4& h4() {
  static const H4 instance;
  return instance;
}

}  // namespace nova::testing
