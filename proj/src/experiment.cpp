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


#include "fxxz/experiment.hpp"

#include <chrono>
#include <cmath>

namespace fxxz {

PipelineConfig reference_pipeline(int n_sites) {
  if (n_sites == 5) return {5, {1}, {2, 4}, true, {}};
  if (n_sites == 6) return {6, {1}, {3, 5}, true, {}};
  throw ValidationError("reference pipelines exist for N = 5 and N = 6");
}

double ObservableRow::noisy_error() const { return std::abs(noisy.value - exact) / std::abs(exact); }
double ObservableRow::mitigated_error() const { return std::abs(mitigated - exact) / std::abs(exact); }

PreparedCircuit prepare_circuit(const PipelineConfig& cfg, const CouplingGraph* graph) {
  PreparedCircuit p;
  p.logical = compile(build_pipeline(cfg).circuit);
  if (graph) {
    const RoutedCircuit r = route(p.logical, *graph);
    p.simulated = compile(r.circuit);
    p.readout = r.readout_order();
    p.swaps = r.swaps;
  } else {
    p.simulated = p.logical;
  }
  return p;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  spec.pipeline.validate();
  const PreparedCircuit pc = prepare_circuit(spec.pipeline, spec.routed ? &spec.graph : nullptr);

  ExperimentResult res;
  res.n_sites = spec.pipeline.n_sites;
  res.routed = spec.routed;
  res.qubits = pc.simulated.num_qubits();
  res.census = census(pc.simulated);

  NoisyOptions opt;
  opt.n_phys = spec.pipeline.n_sites;
  for (const auto& o : spec.observables) opt.observables.push_back(parse_observable(o));
  opt.reference = run_statevector(pc.logical).amps;
  opt.readout = pc.readout;

  const Eigen::MatrixXcd rho = reduce(opt.reference, pc.logical.num_qubits(), opt.n_phys);
  for (const auto& o : opt.observables) {
    ObservableRow row;
    row.name = o.name;
    row.exact = expval(rho, observable_matrix(o, opt.n_phys));
    res.rows.push_back(row);
  }

  if (spec.mitigate) {
    const CdrResult cdr = run_cdr(pc.simulated, spec.noise, opt, spec.cdr);
    res.fidelity = cdr.fidelity;
    res.warnings = cdr.warnings;
    for (size_t k = 0; k < res.rows.size(); ++k) {
      res.rows[k].noisy = cdr.observables[k].noisy;
      res.rows[k].mitigated = cdr.observables[k].mitigated;
      res.rows[k].model = cdr.observables[k].model;
    }
  } else {
    const NoisyResult nr = run_noisy(pc.simulated, spec.noise, opt);
    res.fidelity = nr.fidelity;
    res.channels = nr.channels;
    for (size_t k = 0; k < res.rows.size(); ++k) {
      res.rows[k].noisy = nr.observables[k];
      res.rows[k].mitigated = nr.observables[k].value;
    }
  }
  if (res.channels == 0) res.channels = static_cast<long long>(channel_sites(pc.simulated, spec.noise.matched_channels).size());
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace fxxz
