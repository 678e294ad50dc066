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

// Circuits that move D domain walls out of the way of magnons and insert
// the magnons into the physical register.

#pragma once

#include <array>
#include <vector>

#include "fxxz/circuit.hpp"

namespace fxxz {

// Registers, in qubit order: phys (N), aux (N - D), r0 (2), rc (D/2 + 2),
// rr (D/2 + 1). Sites and aux positions are 1-based.
//
// The wall counter is one-hot over D + 1 slots spread across rc and rr;
// slot 0 is rc[1], which matches the declared "01" start of rc. rr[0] keeps
// its declared 1 and rr[D/2] serves as a third workspace qubit.
struct VdLayout {
  int n_sites = 0;
  int n_walls = 0;

  int aux_size() const { return n_sites - n_walls; }
  int total_qubits() const { return 2 * n_sites + 5; }
  int phys(int site) const { return site - 1; }
  int aux(int n) const { return n_sites + n - 1; }
  int r0(int i) const { return 2 * n_sites - n_walls + i; }
  int rc(int i) const { return 2 * n_sites - n_walls + 2 + i; }
  int rr(int i) const { return 2 * n_sites - n_walls + 2 + n_walls / 2 + 2 + i; }
  int slot(int v) const;
  int spare() const { return rr(n_walls / 2); }
  void validate() const;
};

// Empty circuit with the five registers declared; phys starts in the
// reference state of `walls` (all zeros when empty).
Circuit vd_registers(const VdLayout& layout, const std::vector<int>& walls = {});

// A gate group whose `pre` gates are undone after `body`; a node with a
// `leaf` is a single gate. All gates used here are involutions.
struct GateBlock {
  std::vector<Gate> pre;
  std::vector<GateBlock> body;
  std::vector<Gate> leaf;  // empty or one gate

  static GateBlock single(Gate g);
};
std::vector<Gate> flatten(const std::vector<GateBlock>& blocks);

// Fragments of one stage n, 1 <= n <= N - D, in emission order.
// Shift of a site pair: swaps sites `site` and `site + 2` when `control` is 1.
Gate build_move(int site, const VdLayout& layout, int control);
// Loads the counter with the number of walls that the first stage will move.
std::vector<GateBlock> build_count_setup(const VdLayout& layout);
// Drops the count by one when there is no magnon and the last counted wall
// leaves reach, then shifts the counted walls two sites left.
std::vector<GateBlock> build_relocation_stage(int n, const VdLayout& layout);
// Flips site n + k, k being the count, with a neighbour correction that
// turns a particle into a hole inside a down domain.
std::vector<GateBlock> build_insert(int n, const VdLayout& layout);
// Clears aux n by recognising the freshly inserted magnon.
std::vector<GateBlock> build_reset(int n, const VdLayout& layout);
// Returns the counter to slot 0 after the last stage.
std::vector<GateBlock> build_count_release(const VdLayout& layout);

struct VdOptions {
  // Drops gates that never act on any valid input, found by classical
  // enumeration; skipped when there are more than `prune_limit` inputs.
  bool prune = true;
  long long prune_limit = 200000;
};

// Valid classical inputs of the full register set and the expected outputs:
// every wall configuration with D walls, every M >= 1 that fits, and every
// hard-rod magnon pattern in aux. `max_magnons` < 0 means no cap.
struct VdCase {
  Bits input;
  Bits expected;
};
std::vector<VdCase> vd_cases(const VdLayout& layout, int max_magnons = -1);

std::vector<GateBlock> build_vd_blocks(const VdLayout& layout);
std::vector<GateBlock> prune_blocks(const std::vector<GateBlock>& blocks, const std::vector<Bits>& inputs);
Circuit build_vd(const VdLayout& layout, const std::vector<int>& walls = {}, const VdOptions& opt = {});

// Upper bounds on uncompiled CNOT, Toffoli and CSWAP counts for V_D.
struct VdBounds {
  double cnot = 0;
  double toffoli = 0;
  double cswap = 0;
};
VdBounds vd_gate_bounds(int n_sites, int n_walls);

// ---- two walls, one magnon ----
// Registers: phys (N), aux (N - 2), w (1), rc (2, both 0). Each stage
// first moves the |01> wall, setting rc[0], then the |10> wall, setting
// rc[1], inserts the magnon with CNOTs and clears rc and aux. Every gate is
// a multi-controlled X whose controls are the fewest literals that realise
// its update on all two-wall one-magnon inputs. Gate labels carry the
// module name ("red", "green", "insert", "reset") and the stage.
Circuit build_vd_d2(int n_sites, const std::vector<int>& walls);

// Register contents after each module of stage n for a magnon at aux n:
// [input, after |01> wall, after |10> wall, after insertion], each as
// phys bits followed by the two rc bits.
std::array<Bits, 4> vd_d2_trace(const Circuit& circuit, int n_sites, int n);

}  // namespace fxxz
