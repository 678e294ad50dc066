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


// End-to-end runs of the eigenstate pipelines: build, compile, optionally
// route, simulate with noise and mitigate.

#pragma once

#include <string>
#include <vector>

#include "fxxz/mitigation.hpp"
#include "fxxz/pipeline.hpp"
#include "fxxz/routing.hpp"
#include "fxxz/sim.hpp"

namespace fxxz {

// One magnon with m = 1 between two walls: walls (2,4) for N = 5 and (3,5)
// for N = 6, built with the two-wall circuit.
PipelineConfig reference_pipeline(int n_sites);

struct ExperimentSpec {
  PipelineConfig pipeline;
  bool routed = false;
  CouplingGraph graph;  // used when routed
  NoiseModel noise;
  bool mitigate = true;
  CdrOptions cdr;
  std::vector<std::string> observables = {"H", "Q1", "Q2"};
};

struct ObservableRow {
  std::string name;
  double exact = 0.0;  // noiseless simulation of the same circuit
  Estimate noisy;
  double mitigated = 0.0;
  LinearModel model;

  double noisy_error() const;
  double mitigated_error() const;
};

struct ExperimentResult {
  int n_sites = 0;
  bool routed = false;
  int qubits = 0;
  GateCensus census;  // of the simulated (compiled, routed) circuit
  long long channels = 0;
  Estimate fidelity;
  std::vector<ObservableRow> rows;
  std::vector<std::string> warnings;
  double seconds = 0.0;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

// Compiled pipeline and, when routed, its routing; `readout` maps logical to
// circuit qubits (empty for all-to-all).
struct PreparedCircuit {
  Circuit logical;    // compiled, unrouted
  Circuit simulated;  // compiled, routed when requested
  std::vector<int> readout;
  int swaps = 0;
};
PreparedCircuit prepare_circuit(const PipelineConfig& cfg, const CouplingGraph* graph = nullptr);

}  // namespace fxxz
