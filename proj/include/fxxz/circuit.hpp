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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "fxxz/oracle.hpp"

namespace fxxz {

enum class GateKind { X, RZ, RX90, CNOT, SWAP, Toffoli, CSWAP, Matchgate, Phase1Q, GenericUnitary };

std::string kind_name(GateKind k);
GateKind kind_from_name(const std::string& name);
int kind_arity(GateKind k);  // 0 for GenericUnitary (arity from its matrix)

// Qubit indices are global; qubit 0 is the most significant bit of a basis
// index. Matchgate params are (re u, im u, re v, im v); GenericUnitary params are
// the row-major matrix as interleaved (re, im) pairs.
struct Gate {
  GateKind kind{};
  std::vector<int> qubits;
  std::vector<double> params;
  std::string label;

  bool operator==(const Gate&) const = default;
  Eigen::MatrixXcd matrix() const;
  bool is_elementary() const;
  bool is_two_qubit_or_more() const { return qubits.size() >= 2; }
};

Gate make_x(int q);
Gate make_rz(int q, double theta);
Gate make_rx90(int q);
Gate make_cnot(int c, int t);
Gate make_swap(int a, int b);
Gate make_toffoli(int c1, int c2, int t);
Gate make_cswap(int c, int a, int b);
// Block [[conj u, v], [-conj v, u]] on (|01>, |10>); identity on |00>, |11>.
Gate make_matchgate(int a, int b, cplx u, cplx v);
Gate make_phase(int q, double phi);
Gate make_unitary(const std::vector<int>& qubits, const Eigen::MatrixXcd& m, const std::string& label);

struct Register {
  std::string name;
  int size = 0;
  Bits init;  // declared initial basis state, length == size

  bool operator==(const Register&) const = default;
};

class Circuit {
 public:
  Circuit() = default;

  int add_register(const std::string& name, int size, const Bits& init = {});
  int qubit(const std::string& reg, int index) const;  // 0-based index within reg
  std::string qubit_name(int global) const;            // "reg:idx"
  int offset(const std::string& reg) const;
  const Register& reg(const std::string& name) const;
  bool has_register(const std::string& name) const;
  int num_qubits() const { return num_qubits_; }
  Bits initial_bits() const;

  void add(Gate g);
  void append(const Circuit& other);  // same register layout required
  void append_gates(const std::vector<Gate>& gates);

  const std::vector<Register>& registers() const { return registers_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& mutable_gates() { return gates_; }

  bool operator==(const Circuit&) const = default;

 private:
  std::vector<Register> registers_;
  std::vector<Gate> gates_;
  int num_qubits_ = 0;
};

// ---- decompositions into {RZ, RX90, X, CNOT} ----
std::vector<Gate> decompose_toffoli(const Gate& g);
std::vector<Gate> decompose_cswap(const Gate& g);
std::vector<Gate> decompose_matchgate(const Gate& g);
std::vector<Gate> decompose_swap(const Gate& g);
// Recovers (u, v) from a two-qubit unitary of matchgate form, up to phase.
bool matchgate_form(const Eigen::MatrixXcd& m, cplx& u, cplx& v, double tol = 1e-10);
Circuit compile(const Circuit& c);
Circuit inverse(const Circuit& c);

// ---- dense algebra ----
// Applies one gate in place to a state of n qubits.
void apply_gate(std::vector<cplx>& state, int n, const Gate& g);
// Row-major 2x2 matrix on qubit q.
void apply_1q_matrix(std::vector<cplx>& state, int n, int q, const cplx m[4]);
Eigen::MatrixXcd dense_unitary(const Circuit& c);
// Basis-state action of permutation gates (X, CNOT, SWAP, Toffoli, CSWAP);
// throws on any other kind.
Bits apply_classical(const std::vector<Gate>& gates, Bits bits);
// Max element deviation after aligning the phase on the first nonzero entry.
double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, cplx* phase = nullptr);

struct GateCensus {
  int rz_nonclifford = 0;
  int rz_clifford = 0;
  int rx90 = 0;
  int x = 0;
  int cnot = 0;
  int depth = 0;
  int rz() const { return rz_nonclifford + rz_clifford; }
  int single_qubit_clifford() const { return rz_clifford + rx90 + x; }
  int total() const { return rz() + rx90 + x + cnot; }
};

bool is_clifford_angle(double theta);
GateCensus census(const Circuit& compiled);
// Counts by gate kind, for uncompiled circuits.
std::map<GateKind, int> kind_counts(const Circuit& c);
// Greedy as-soon-as-possible layering depth over any gate kinds.
int circuit_depth(const Circuit& c);

// ---- serialization ----
std::string to_json(const Circuit& c, int indent = -1);
Circuit circuit_from_json(const std::string& text);

}  // namespace fxxz
