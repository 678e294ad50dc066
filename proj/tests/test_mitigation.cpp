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


#include <doctest.h>

#include <cmath>
#include <random>

#include "fxxz/mitigation.hpp"
#include "fxxz/pipeline.hpp"

using namespace fxxz;

namespace {

Circuit small_pipeline() {
  const PipelineConfig cfg{4, {1}, {}, false, {}};
  return compile(build_pipeline(cfg).circuit);
}

int count_non_clifford(const Circuit& c) { return census(c).rz_nonclifford; }

}  // namespace

TEST_CASE("fit recovers an exact line") {
  std::vector<TrainingSample> s;
  for (int i = 0; i < 10; ++i) s.push_back({0.3 * i - 1.0, 2 * (0.3 * i - 1.0) + 1, i});
  const LinearModel m = fit(s);
  CHECK(std::abs(m.a - 2) < 1e-12);
  CHECK(std::abs(m.b - 1) < 1e-12);
  CHECK(m.residual_rms < 1e-12);
  CHECK(m.n_samples == 10);
}

TEST_CASE("fit rejects small or degenerate data") {
  std::vector<TrainingSample> s;
  for (int i = 0; i < 7; ++i) s.push_back({double(i), double(i), i});
  CHECK_THROWS_AS(fit(s), ValidationError);
  std::vector<TrainingSample> flat(9, {0.25, 0.1, 0});
  CHECK_THROWS_AS(fit(flat), ValidationError);
}

TEST_CASE("global depolarizing data gives the inverse shrink factor") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  const double q = 0.3;
  std::vector<TrainingSample> s;
  for (int i = 0; i < 40; ++i) {
    const double exact = u(rng);
    s.push_back({(1 - q) * exact, exact, i});
  }
  const LinearModel m = fit(s);
  CHECK(std::abs(m.a - 1 / (1 - q)) < 1e-12);
  CHECK(std::abs(m.b) < 1e-12);
  CHECK(std::abs(mitigate(m, (1 - q) * 0.4) - 0.4) < 1e-12);
}

TEST_CASE("mitigate with offsets") {
  const LinearModel id;
  CHECK(mitigate(id, 2.7, 2.5) == doctest::Approx(2.7));
  const LinearModel twice{2.0, 0.0, 0.0, 8};
  CHECK(mitigate(twice, 2.9, 2.5) == doctest::Approx(3.3));
  CHECK(observable_offset(parse_observable("Q1"), 5) == 2.5);
  CHECK(observable_offset(parse_observable("Q2"), 5) == 3.0);
  CHECK(observable_offset(parse_observable("H"), 5) == 0.0);
}

TEST_CASE("training circuits keep exactly the requested non-Clifford gates") {
  const PipelineConfig cfg{5, {1}, {2, 4}, true, {}};
  const Circuit c = compile(build_pipeline(cfg).circuit);
  const int total = count_non_clifford(c);
  REQUIRE(total > 50);
  const auto training = generate_training_circuits(c, 50, 100, 11);
  CHECK(training.size() == 100);
  for (const auto& t : training) {
    CHECK(count_non_clifford(t) == 50);
    CHECK(t.gates().size() == c.gates().size());
    const auto a = census(t), b = census(c);
    CHECK(a.rz() == b.rz());
    CHECK(a.cnot == b.cnot);
    CHECK(a.rx90 == b.rx90);
  }
  const auto full = generate_training_circuits(c, total, 3, 1);
  for (const auto& t : full) CHECK(t == c);
  for (const auto& t : generate_training_circuits(c, 0, 5, 2)) CHECK(count_non_clifford(t) == 0);

  std::vector<std::string> warnings;
  const auto over = generate_training_circuits(c, total + 10, 2, 3, ReplacementRule::Cosine, &warnings);
  CHECK(warnings.size() == 1);
  CHECK(over[0] == c);
  CHECK(generate_training_circuits(c, 20, 4, 9) == generate_training_circuits(c, 20, 4, 9));
}

TEST_CASE("replacement rules") {
  Circuit c;
  c.add_register("q", 1);
  c.add(make_rz(0, 0.1));
  c.add(make_rz(0, 3.0));
  c.add(make_rz(0, -1.4));
  const auto t = generate_training_circuits(c, 0, 1, 1, ReplacementRule::Nearest);
  CHECK(t[0].gates()[0].params[0] == doctest::Approx(0.0));
  CHECK(t[0].gates()[1].params[0] == doctest::Approx(std::numbers::pi));
  CHECK(t[0].gates()[2].params[0] == doctest::Approx(1.5 * std::numbers::pi));
  // The cosine rule never picks an angle more than pi/2 away.
  for (const auto& tc : generate_training_circuits(c, 0, 200, 4)) {
    CHECK(std::cos(tc.gates()[0].params[0] - 0.1) > 0);
    CHECK(std::cos(tc.gates()[1].params[0] - 3.0) > 0);
    CHECK(std::cos(tc.gates()[2].params[0] + 1.4) > 0);
  }
  CHECK(parse_replacement_rule("cosine") == ReplacementRule::Cosine);
  CHECK_THROWS_AS(parse_replacement_rule("uniform"), ValidationError);
}

TEST_CASE("noiseless mitigation is the identity") {
  const Circuit c = small_pipeline();
  REQUIRE(count_non_clifford(c) >= 4);
  NoisyOptions opt;
  opt.n_phys = 4;
  for (const char* o : {"H", "Q1", "Q2"}) opt.observables.push_back(parse_observable(o));
  const CdrResult r = run_cdr(c, NoiseModel{}, opt, {count_non_clifford(c) / 2, 12, 3});
  for (const auto& o : r.observables) {
    CHECK(std::abs(o.model.a - 1) < 1e-10);
    CHECK(std::abs(o.model.b) < 1e-10);
    CHECK(std::abs(o.mitigated - o.noisy.value) < 1e-10);
  }
}

TEST_CASE("mitigation reduces the error on a small noisy pipeline") {
  const PipelineConfig cfg{4, {1}, {}, false, {}};
  const Circuit c = small_pipeline();
  NoisyOptions opt;
  opt.n_phys = 4;
  opt.observables.push_back(parse_observable("H"));
  NoiseModel noise;
  noise.lambda2 = 2e-2;
  const CdrResult r = run_cdr(c, noise, opt, {count_non_clifford(c) / 2, 32, 7});
  const double exact = energy_of(cfg.momentum_set());
  const auto& h = r.observables[0];
  CHECK(std::abs(h.mitigated - exact) < std::abs(h.noisy.value - exact) / 3);
}
