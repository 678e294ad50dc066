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


// Clifford data regression: near-Clifford training circuits, a linear map
// from noisy to exact expectation values, and its application.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fxxz/circuit.hpp"
#include "fxxz/sim.hpp"

namespace fxxz {

enum class ReplacementRule {
  Cosine,   // weights max(0, cos(theta - c)) over the four Clifford angles
  Nearest,  // the closest Clifford angle
};
ReplacementRule parse_replacement_rule(const std::string& name);

// Each training circuit keeps `keep` randomly chosen non-Clifford RZ gates
// and replaces the others by Clifford RZ gates. A `keep` above the available
// count degenerates to the original circuit and adds a warning.
std::vector<Circuit> generate_training_circuits(const Circuit& compiled, int keep, int count, std::uint64_t seed,
                                                ReplacementRule rule = ReplacementRule::Cosine,
                                                std::vector<std::string>* warnings = nullptr);

struct TrainingSample {
  double noisy = 0.0;
  double exact = 0.0;
  int circuit_id = 0;
};

struct LinearModel {
  double a = 1.0;
  double b = 0.0;
  double residual_rms = 0.0;
  int n_samples = 0;
};

inline constexpr int kMinTrainingSamples = 8;

// Least squares for exact ~ a * noisy + b.
LinearModel fit(const std::vector<TrainingSample>& samples);
// The model acts on the observable minus `offset`; the offset is added back.
double mitigate(const LinearModel& model, double noisy, double offset = 0.0);
// N/2 for Q1, (N+1)/2 for Q2, zero otherwise.
double observable_offset(const Observable& o, int n_sites);

struct CdrOptions {
  int keep = 50;
  int count = 32;
  std::uint64_t seed = 7;
  ReplacementRule rule = ReplacementRule::Cosine;
  int training_trajectories = 0;  // trajectory backend only; 0 keeps the noise model's count
};

struct CdrObservable {
  std::string name;
  double offset = 0.0;
  Estimate noisy;
  double mitigated = 0.0;
  LinearModel model;
  std::vector<TrainingSample> samples;  // offset-subtracted values
};

struct CdrResult {
  std::vector<CdrObservable> observables;
  Estimate fidelity;  // of the unmitigated noisy run
  int keep = 0;
  std::vector<std::string> warnings;
};

// Runs the noisy circuit and `count` training circuits under the same noise
// model; exact training values come from the noiseless state vector.
CdrResult run_cdr(const Circuit& compiled, const NoiseModel& noise, const NoisyOptions& opt, const CdrOptions& cdr);

}  // namespace fxxz
