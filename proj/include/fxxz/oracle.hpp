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

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fxxz {

using cplx = std::complex<double>;

// Basis states are strings of '0'/'1'; character i is site i.
using Bits = std::string;

// Sparse wavefunction, keyed and therefore ordered by bitstring.
using Amplitudes = std::map<Bits, cplx>;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ChainSpec {
  int n_bulk = 0;
  int full_length() const { return n_bulk + 2; }
};

// Momenta p_a = pi m_a / (n0 + 1).
struct MomentumSet {
  std::vector<int> modes;
  int n0 = 0;

  std::vector<double> momenta() const;
  void validate() const;
};

struct DomainWallConfig {
  std::vector<int> walls;
  int magnons = 0;

  int count() const { return static_cast<int>(walls.size()); }
  void validate(int n_bulk) const;
};

// Layout of a fragment label: M packed magnons followed by D walls.
struct LabelInfo {
  int n_bulk = 0;
  int magnons = 0;
  DomainWallConfig walls;
  int n0() const { return n_bulk + 1 - magnons - walls.count(); }
};

// ---- basic state helpers ----
Bits bits_of(unsigned long long value, int length);
Bits with_boundaries(const Bits& bulk);
Bits strip_boundaries(const Bits& full);
double norm(const Amplitudes& a);
Amplitudes normalized(const Amplitudes& a);
cplx overlap(const Amplitudes& a, const Amplitudes& b);
Amplitudes add_boundaries(const Amplitudes& bulk);

// ---- Hamiltonian and charges ----
// Configurations reachable from `full` by one constrained hop.
std::vector<Bits> hop_neighbors(const Bits& full);
Amplitudes hamiltonian_apply(const Amplitudes& state, const ChainSpec& chain);
int charge_q1(const Bits& full);
int charge_q2(const Bits& full);
double expectation_h(const Amplitudes& full_state);

// ---- fragments ----
std::vector<Bits> bfs_closure(const Bits& full);
Bits fragment_label(const Bits& full);
std::vector<Bits> enumerate_fragment(const Bits& label);
LabelInfo parse_label(const Bits& label);
Bits label_from(int n_bulk, int magnons, const std::vector<int>& walls);
Bits reference_walls(int n_bulk, const std::vector<int>& walls);

// ---- Bethe ansatz ----
cplx slater_amplitude(const std::vector<int>& positions, const std::vector<double>& momenta);
// Open-chain free-fermion amplitude at free coordinates x (1-based).
cplx open_xx_amplitude(const std::vector<int>& x, const std::vector<double>& momenta);
Amplitudes xx_open_eigenstate(const MomentumSet& momenta);
Amplitudes magnonic_eigenstate(const MomentumSet& momenta, const ChainSpec& chain);
Bits domainwall_relocate(const std::vector<int>& free_positions, const DomainWallConfig& walls,
                         int n_bulk);
Amplitudes folded_eigenstate(const MomentumSet& momenta, const DomainWallConfig& walls,
                             const ChainSpec& chain);
double energy_of(const MomentumSet& momenta, double c = 1.0);
// All increasing M-subsets of {1..n}.
std::vector<std::vector<int>> combinations(int n, int m);
long long binomial(int n, int k);

struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<Amplitudes> eigenvectors;
};
Spectrum exact_diagonalize_fragment(const Bits& label);

// ---- XXZ matrix-product construction ----
struct XXZParams {
  double delta = 0.0;
  cplx scattering(cplx ya, cplx yb) const;
  cplx self_scattering(cplx ya) const;
};

// Unnormalized open-boundary Bethe state over n_sites from the doubled
// momentum staircase. Basis strings have length n_sites.
Amplitudes mps_bethe_state(const std::vector<double>& momenta, const XXZParams& params,
                           int n_sites);
// Open XXZ chain sum_j (XX + YY + delta ZZ), no boundary fields.
Amplitudes xxz_apply(const Amplitudes& state, int n_sites, double delta);
// Continuation in delta from the free-fermion grid for the given modes.
std::vector<double> solve_open_bethe(const std::vector<int>& modes, int n_sites, double delta);

Amplitudes constrained_dicke(int magnons, int n_sites);
// Hard-rod map x_a -> x_a + a - 1 on bitstrings of length n - m + 1.
Bits hardrod_shift(const Bits& free_bits, int magnons);

}  // namespace fxxz
