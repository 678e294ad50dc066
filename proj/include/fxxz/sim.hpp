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


// Noiseless and depolarizing-noise simulation of circuits, with observables
// evaluated on the physical register.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fxxz/circuit.hpp"
#include "fxxz/oracle.hpp"

namespace fxxz {

inline constexpr int kMaxStatevectorQubits = 24;
inline constexpr int kMaxDensityQubits = 12;

struct StateVector {
  int n_qubits = 0;
  std::vector<cplx> amps;

  double norm() const;
};

// Runs from the circuit's declared initial basis state.
StateVector run_statevector(const Circuit& c);
// Same evolution on a map of nonzero amplitudes; no qubit limit.
Amplitudes run_sparse(const Circuit& c, double cutoff = 1e-14);

enum class Backend { Density, Trajectories };

struct NoiseModel {
  double lambda2 = 0.0;  // depolarizing rate after every two-qubit gate
  double lambda1 = 0.0;  // after every single-qubit gate
  Backend backend = Backend::Density;
  int trajectories = 10000;
  std::uint64_t seed = 42;
  // When > 0, exactly this many two-qubit channels are spread evenly over the
  // two-qubit gates instead of one per gate.
  int matched_channels = 0;

  void validate() const;
};

// Parses "density" or "traj:<count>[:seed<s>]".
NoiseModel parse_backend(const std::string& spec, double lambda2);

// Observables act on the first n_phys qubits, read as the bulk of a chain
// whose two boundary sites are fixed to |0>.
struct Observable {
  enum class Kind { H, Q1, Q2, Pauli };
  Kind kind = Kind::H;
  std::vector<std::pair<double, std::string>> terms;  // Pauli strings over the bulk sites
  std::string name;
};
Observable parse_observable(const std::string& name);
Eigen::MatrixXcd observable_matrix(const Observable& o, int n_phys);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

struct NoisyOptions {
  int n_phys = 0;
  std::vector<Observable> observables;
  // Pure state of the full register to report fidelity against; may be empty.
  std::vector<cplx> reference;
  bool keep_full_density = false;  // trajectory mean of the full density (<= 12 qubits)
  // Logical qubit j is circuit qubit readout[j] (routed circuits); empty
  // means the identity. Observables, reference and rho_* use logical order.
  std::vector<int> readout;
};

struct NoisyResult {
  std::vector<Estimate> observables;
  Estimate fidelity;
  Eigen::MatrixXcd rho_phys;
  Eigen::MatrixXcd rho_full;  // density backend or keep_full_density only
  int trajectories = 0;
  long long channels = 0;  // channel applications per run
};

NoisyResult run_noisy(const Circuit& c, const NoiseModel& noise, const NoisyOptions& opt);

// Density matrix over all qubits, row-major, qubit 0 most significant.
Eigen::MatrixXcd run_density(const Circuit& c, const NoiseModel& noise);

// Reduced state of the first n_keep qubits.
Eigen::MatrixXcd reduce(const std::vector<cplx>& psi, int n_qubits, int n_keep);
Eigen::MatrixXcd reduce(const Eigen::MatrixXcd& rho, int n_qubits, int n_keep);
double expval(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op);

double fidelity(const std::vector<cplx>& a, const std::vector<cplx>& b);
double fidelity(const std::vector<cplx>& pure, const Eigen::MatrixXcd& rho);
double fidelity(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2);

// Reorders the qubits of a state: qubit j of the result is qubit order[j] of psi.
std::vector<cplx> permute_qubits(const std::vector<cplx>& psi, int n, const std::vector<int>& order);
Eigen::MatrixXcd permute_qubits(const Eigen::MatrixXcd& rho, int n, const std::vector<int>& order);

// Gate positions that receive a two-qubit channel, one entry per channel.
std::vector<int> channel_sites(const Circuit& c, int matched_channels);

}  // namespace fxxz
