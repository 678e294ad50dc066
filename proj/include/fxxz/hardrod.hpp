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

// CSWAP staircase that turns a free-fermion state into a hard-rod state.

#pragma once

#include <vector>

#include "fxxz/circuit.hpp"

namespace fxxz {

// Register "phys" holds N qubits: the free state on the first N - M + 1 sites,
// zeros after. Register "aux" holds M + 1 qubits, a one-hot pointer that
// starts in slot 1 and advances once per magnon found.
struct U0Layout {
  int n_phys = 0;
  int n_magnons = 0;

  int free_sites() const { return n_phys - n_magnons + 1; }
  int aux_size() const { return n_magnons + 1; }
  int phys_qubit(int site) const { return site - 1; }   // 1-based site
  int aux_qubit(int slot) const { return n_phys + slot - 1; }  // 1-based slot
  void validate() const;
};

// Sites and slots below are 1-based.
// Advances the aux pointer by one slot when phys site `control` is 1.
std::vector<Gate> build_swap_module(int control, const U0Layout& layout);
// With the pointer in slot p, moves the magnon at `base` by M + 1 - p sites.
std::vector<Gate> build_shift_module(int base, const U0Layout& layout);

// Circuit over registers "phys" and "aux". `trim` drops CSWAPs whose control
// cannot be 1 or whose targets are both frozen at 0 on M-magnon inputs.
Circuit build_u0(const U0Layout& layout, bool trim = false);
Bits u0_aux_final(const U0Layout& layout);

}  // namespace fxxz
