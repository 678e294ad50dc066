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


#include "fxxz/mitigation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace fxxz {

namespace {

constexpr std::array<double, 4> kCliffordAngles = {0.0, std::numbers::pi / 2, std::numbers::pi,
                                                   3 * std::numbers::pi / 2};

double replacement_angle(double theta, ReplacementRule rule, std::mt19937_64& rng) {
  std::array<double, 4> w{};
  for (int i = 0; i < 4; ++i) w[i] = std::max(0.0, std::cos(theta - kCliffordAngles[i]));
  if (rule == ReplacementRule::Nearest)
    return kCliffordAngles[std::max_element(w.begin(), w.end()) - w.begin()];
  std::discrete_distribution<int> pick(w.begin(), w.end());
  return kCliffordAngles[pick(rng)];
}

}  // namespace

ReplacementRule parse_replacement_rule(const std::string& name) {
  if (name == "cosine") return ReplacementRule::Cosine;
  if (name == "nearest") return ReplacementRule::Nearest;
  throw ValidationError("unknown replacement rule '" + name + "' (use cosine or nearest)");
}

std::vector<Circuit> generate_training_circuits(const Circuit& compiled, int keep, int count, std::uint64_t seed,
                                                ReplacementRule rule, std::vector<std::string>* warnings) {
  if (keep < 0) throw ValidationError("keep must be non-negative");
  if (count < 0) throw ValidationError("training count must be non-negative");
  std::vector<size_t> non_clifford;
  for (size_t i = 0; i < compiled.gates().size(); ++i) {
    const Gate& g = compiled.gates()[i];
    if (!g.is_elementary()) throw ValidationError("training circuits need a compiled circuit");
    if (g.kind == GateKind::RZ && !is_clifford_angle(g.params[0])) non_clifford.push_back(i);
  }
  if (keep > static_cast<int>(non_clifford.size())) {
    if (warnings)
      warnings->push_back("keep " + std::to_string(keep) + " exceeds the " + std::to_string(non_clifford.size()) +
                          " non-Clifford gates; training circuits equal the original");
    keep = static_cast<int>(non_clifford.size());
  }

  std::mt19937_64 rng(seed);
  std::vector<Circuit> out;
  out.reserve(count);
  for (int t = 0; t < count; ++t) {
    std::vector<size_t> order = non_clifford;
    std::shuffle(order.begin(), order.end(), rng);
    Circuit c = compiled;
    for (size_t k = keep; k < order.size(); ++k) {
      Gate& g = c.mutable_gates()[order[k]];
      g.params[0] = replacement_angle(g.params[0], rule, rng);
    }
    out.push_back(std::move(c));
  }
  return out;
}

LinearModel fit(const std::vector<TrainingSample>& samples) {
  const int n = static_cast<int>(samples.size());
  if (n < kMinTrainingSamples)
    throw ValidationError("fit needs at least " + std::to_string(kMinTrainingSamples) + " samples, got " +
                          std::to_string(n));
  double mx = 0, my = 0;
  for (const auto& s : samples) {
    mx += s.noisy;
    my += s.exact;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (const auto& s : samples) {
    sxx += (s.noisy - mx) * (s.noisy - mx);
    sxy += (s.noisy - mx) * (s.exact - my);
  }
  const double scale = std::max(1.0, std::abs(mx));
  if (sxx <= 1e-24 * n * scale * scale) throw ValidationError("degenerate training data: all noisy values are equal");
  LinearModel m;
  m.a = sxy / sxx;
  m.b = my - m.a * mx;
  m.n_samples = n;
  double rss = 0;
  for (const auto& s : samples) {
    const double r = s.exact - m.a * s.noisy - m.b;
    rss += r * r;
  }
  m.residual_rms = std::sqrt(rss / n);
  return m;
}

double mitigate(const LinearModel& model, double noisy, double offset) {
  return model.a * (noisy - offset) + model.b + offset;
}

double observable_offset(const Observable& o, int n_sites) {
  switch (o.kind) {
    case Observable::Kind::Q1:
      return n_sites / 2.0;
    case Observable::Kind::Q2:
      return (n_sites + 1) / 2.0;
    default:
      return 0.0;
  }
}

CdrResult run_cdr(const Circuit& compiled, const NoiseModel& noise, const NoisyOptions& opt, const CdrOptions& cdr) {
  if (opt.observables.empty()) throw ValidationError("no observables to mitigate");
  if (compiled.num_qubits() > kMaxStatevectorQubits)
    throw ValidationError("exact training values need at most " + std::to_string(kMaxStatevectorQubits) + " qubits");
  noise.validate();

  CdrResult res;
  int available = 0;
  for (const auto& g : compiled.gates())
    if (g.kind == GateKind::RZ && !is_clifford_angle(g.params[0])) ++available;
  res.keep = std::min(cdr.keep, available);
  const auto training =
      generate_training_circuits(compiled, cdr.keep, cdr.count, cdr.seed, cdr.rule, &res.warnings);

  const NoisyResult target = run_noisy(compiled, noise, opt);
  res.fidelity = target.fidelity;

  std::vector<Eigen::MatrixXcd> ops;
  for (const auto& o : opt.observables) {
    ops.push_back(observable_matrix(o, opt.n_phys));
    CdrObservable co;
    co.name = o.name;
    co.offset = observable_offset(o, opt.n_phys);
    res.observables.push_back(co);
  }
  for (size_t k = 0; k < ops.size(); ++k) res.observables[k].noisy = target.observables[k];

  NoisyOptions train_opt = opt;
  train_opt.reference.clear();
  train_opt.keep_full_density = false;
  for (size_t t = 0; t < training.size(); ++t) {
    NoiseModel nm = noise;
    nm.seed = noise.seed + 0x9e3779b97f4a7c15ULL * (t + 1);
    if (cdr.training_trajectories > 0) nm.trajectories = cdr.training_trajectories;
    const NoisyResult noisy = run_noisy(training[t], nm, train_opt);
    std::vector<cplx> psi = run_statevector(training[t]).amps;
    if (!opt.readout.empty()) psi = permute_qubits(psi, training[t].num_qubits(), opt.readout);
    const Eigen::MatrixXcd rho = reduce(psi, training[t].num_qubits(), opt.n_phys);
    for (size_t k = 0; k < ops.size(); ++k) {
      auto& co = res.observables[k];
      co.samples.push_back({noisy.observables[k].value - co.offset, expval(rho, ops[k]) - co.offset,
                            static_cast<int>(t)});
    }
  }
  for (auto& co : res.observables) {
    co.model = fit(co.samples);
    co.mitigated = mitigate(co.model, co.noisy.value, co.offset);
  }
  return res;
}

}  // namespace fxxz
