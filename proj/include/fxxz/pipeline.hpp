// Copyright 2026 The fxxz Authors
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


// End-to-end state preparation: ABC seed, hard-rod map, wall relocation.

#pragma once

#include <vector>

#include "fxxz/abc.hpp"
#include "fxxz/circuit.hpp"
#include "fxxz/oracle.hpp"

namespace fxxz {

struct PipelineConfig {
  int n_sites = 0;
  std::vector<int> modes;  // momentum integers m_a, p_a = pi m_a / (n0 + 1)
  std::vector<int> walls;
  bool d2_simplified = false;  // two walls, one magnon only
  BoundaryOptions boundary;

  int magnons() const { return static_cast<int>(modes.size()); }
  int n0() const { return n_sites + 1 - magnons() - static_cast<int>(walls.size()); }
  MomentumSet momentum_set() const { return {modes, n0()}; }
  void validate() const;
};

// The first n_sites qubits of `circuit` are the physical chain; the other
// qubits end in the basis state `ancilla_final` on exact execution.
struct Pipeline {
  Circuit circuit;
  int n_sites = 0;
  Bits ancilla_final;
  double boundary_infidelity = 0.0;
};

Pipeline build_pipeline(const PipelineConfig& cfg);
// Oracle state on the full chain, boundary sites included.
Amplitudes pipeline_target(const PipelineConfig& cfg);

// Gates with every qubit index q replaced by map[q].
std::vector<Gate> remap_gates(const std::vector<Gate>& gates, const std::vector<int>& map);

}  // namespace fxxz
