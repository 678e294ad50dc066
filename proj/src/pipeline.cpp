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


#include "fxxz/pipeline.hpp"

#include <string>

#include "fxxz/domainwall.hpp"
#include "fxxz/hardrod.hpp"

namespace fxxz {

void PipelineConfig::validate() const {
  if (n_sites < 1) throw ValidationError("need at least one site");
  const int m = magnons();
  if (m > 0) {
    if (n0() < 2 * m) throw ValidationError("n0 = N + 1 - M - D = " + std::to_string(n0()) + " is below 2M");
    momentum_set().validate();
  }
  if (!walls.empty()) DomainWallConfig{walls, m}.validate(n_sites);
  if (d2_simplified && (walls.size() != 2 || m != 1))
    throw ValidationError("the simplified circuit needs two walls and one magnon");
}

std::vector<Gate> remap_gates(const std::vector<Gate>& gates, const std::vector<int>& map) {
  std::vector<Gate> out = gates;
  for (auto& g : out)
    for (auto& q : g.qubits) q = map.at(q);
  return out;
}

namespace {

std::vector<int> shifted(int size, int offset) {
  std::vector<int> m(size);
  for (int i = 0; i < size; ++i) m[i] = offset + i;
  return m;
}

// Copies the registers of `src`, replacing the init of register `name`.
Circuit with_init(const Circuit& src, const std::string& name, const Bits& init) {
  Circuit c;
  for (const auto& r : src.registers()) c.add_register(r.name, r.size, r.name == name ? init : r.init);
  return c;
}

}  // namespace

Pipeline build_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  const int N = cfg.n_sites, M = cfg.magnons(), D = static_cast<int>(cfg.walls.size());
  Pipeline p;
  p.n_sites = N;
  if (M == 0) {
    p.circuit.add_register("phys", N, D ? reference_walls(N, cfg.walls) : Bits(N, '0'));
    return p;
  }
  const AbcCircuit abc = build_abc(cfg.momentum_set(), cfg.boundary);
  p.boundary_infidelity = abc.boundary.infidelity;
  const int n0 = cfg.n0();
  const int rod_sites = N - D;  // the register the hard-rod map acts on
  Bits seed = abc.circuit.reg("phys").init + Bits(rod_sites - n0, '0');

  Circuit base;
  if (D == 0) {
    base.add_register("phys", N, seed);
  } else if (cfg.d2_simplified) {
    base = build_vd_d2(N, cfg.walls);
  } else {
    base = build_vd(VdLayout{N, D}, cfg.walls);
  }
  Circuit c = D == 0 ? base : with_init(base, "aux", seed);
  const int rod_offset = D == 0 ? 0 : c.offset("aux");

  Circuit u0;
  if (M >= 2) {
    u0 = build_u0(U0Layout{rod_sites, M}, true);
    c.add_register("rod", M + 1, u0.reg("aux").init);
  }
  c.append_gates(remap_gates(abc.circuit.gates(), shifted(n0, rod_offset)));
  if (M >= 2) {
    std::vector<int> map = shifted(rod_sites, rod_offset);
    for (int i = 0; i <= M; ++i) map.push_back(c.offset("rod") + i);
    c.append_gates(remap_gates(u0.gates(), map));
  }
  if (D > 0) c.append_gates(base.gates());
  Bits fin = c.initial_bits().substr(N);
  if (D > 0) fin.replace(rod_offset - N, rod_sites, Bits(rod_sites, '0'));
  if (M >= 2) fin.replace(c.offset("rod") - N, M + 1, u0_aux_final(U0Layout{rod_sites, M}));
  p.ancilla_final = fin;
  p.circuit = std::move(c);
  return p;
}

Amplitudes pipeline_target(const PipelineConfig& cfg) {
  cfg.validate();
  const int M = cfg.magnons();
  if (M == 0) {
    Bits full(cfg.n_sites + 2, '0');
    if (!cfg.walls.empty()) full.replace(1, cfg.n_sites, reference_walls(cfg.n_sites, cfg.walls));
    return {{full, 1.0}};
  }
  return folded_eigenstate(cfg.momentum_set(), DomainWallConfig{cfg.walls, M}, ChainSpec{cfg.n_sites});
}

}  // namespace fxxz
