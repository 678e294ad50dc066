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

// Algebraic Bethe circuit for the open free-fermion chain.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "fxxz/circuit.hpp"
#include "fxxz/oracle.hpp"

namespace fxxz {

// q = (p1, -p1, p2, -p2, ...), y = exp(i q).
struct DoubledMomenta {
  std::vector<double> q;
  std::vector<cplx> y;

  static DoubledMomenta from(const std::vector<double>& p);
  int size() const { return static_cast<int>(q.size()); }
  int magnons() const { return size() / 2; }
};

// C_k(a, b) = sum_{n=0}^{k-1} conj(y_a)^n y_b^n over the first `order` momenta
// (default min(k, 2M)); built by the recursion C_{k+1} = conj(y_a) y_b C_k + 1.
Eigen::MatrixXcd gram_matrix(int k, const DoubledMomenta& dm, int order = -1);

struct MatchgateParams {
  cplx u;
  cplx v;
};

// Parameters of F_{k,a}, 1 <= a <= min(k, 2M).
MatchgateParams matchgate_params(int k, int a, const DoubledMomenta& dm);
// exp(i phi_k), principal square root per factor; 1 <= k < 2M.
cplx phase_factor(int k, const DoubledMomenta& dm);
Gate phase_gate(int k, const DoubledMomenta& dm, int qubit);

// Layer that grows the prepared system from k to k+1 sites; `first` is the
// qubit of the new site. Time order: phase (k < 2M), then F_{k,L} ... F_{k,1}.
std::vector<Gate> build_pk(int k, const DoubledMomenta& dm, int first);
// All layers for n0 sites, on qubits 0..n0-1, in time order.
std::vector<Gate> build_staircase(const DoubledMomenta& dm, int n0);

// 2M-qubit state that the staircase maps onto the open XX eigenstate.
Amplitudes target_boundary_state(const MomentumSet& ms);

struct BoundaryOptions {
  std::uint64_t seed = 12345;
  int restarts = 32;
  int max_sweeps = 4000;
  double tolerance = 1e-8;
  int max_extra_layers = 4;
};

struct BoundaryCircuit {
  std::vector<Gate> gates;  // GenericUnitary gates of matchgate form on qubits 0..2M-1
  double infidelity = 1.0;
  int extra_layers = 0;
  int restarts_used = 0;
};

// Brick pattern: even pairs first, then odd, alternating, truncated to
// the requested number of gates.
std::vector<std::pair<int, int>> boundary_layout(int magnons, int extra_layers = 0);
int boundary_gate_count(int magnons);
// Maps |10>^M to `target` (strings of length 2M).
BoundaryCircuit synthesize_boundary(const Amplitudes& target, int magnons, const BoundaryOptions& opt = {});

struct AbcCircuit {
  Circuit circuit;
  BoundaryCircuit boundary;
};

// Register "phys" of n0 qubits initialised to |10>^M |0...0>.
AbcCircuit build_abc(const MomentumSet& ms, const BoundaryOptions& opt = {});

// Dense state helpers on qubit registers (qubit 0 = leftmost character).
std::vector<cplx> to_dense(const Amplitudes& a, int n);
Amplitudes from_dense(const std::vector<cplx>& v, int n, double cutoff = 1e-14);
std::vector<cplx> run_gates(const std::vector<Gate>& gates, const Bits& init);

}  // namespace fxxz
