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
#include <map>
#include <numbers>

#include "fxxz/pipeline.hpp"
#include "fxxz/sim.hpp"

using namespace fxxz;

namespace {

Circuit small_circuit(int n) {
  Circuit c;
  c.add_register("q", n);
  for (int q = 0; q < n; ++q) {
    c.add(make_rx90(q));
    c.add(make_rz(q, 0.3 + 0.17 * q));
  }
  for (int q = 0; q + 1 < n; ++q) c.add(make_cnot(q, q + 1));
  for (int q = 0; q < n; ++q) c.add(make_rx90(q));
  c.add(make_cnot(n - 1, 0));
  return c;
}

Eigen::MatrixXcd outer(const std::vector<cplx>& v) {
  Eigen::Map<const Eigen::VectorXcd> m(v.data(), v.size());
  return m * m.adjoint();
}

}  // namespace

TEST_CASE("statevector basics") {
  Circuit c;
  c.add_register("q", 2, "01");
  auto sv = run_statevector(c);
  CHECK(sv.amps[1] == cplx(1.0));
  c.add(make_x(0));
  sv = run_statevector(c);
  CHECK(std::abs(sv.amps[3] - cplx(1.0)) < 1e-15);
  const auto big = run_statevector(small_circuit(6));
  CHECK(big.norm() == doctest::Approx(1.0).epsilon(1e-12));
  Circuit wide;
  wide.add_register("q", kMaxStatevectorQubits + 1);
  CHECK_THROWS_AS(run_statevector(wide), ValidationError);
}

TEST_CASE("sparse runner matches the dense one") {
  const Circuit c = small_circuit(5);
  const auto dense = run_statevector(c);
  const auto sparse = run_sparse(c);
  double err = 0.0;
  for (size_t i = 0; i < dense.amps.size(); ++i) {
    Bits b(5, '0');
    for (int q = 0; q < 5; ++q)
      if ((i >> (4 - q)) & 1) b[q] = '1';
    const auto it = sparse.find(b);
    err = std::max(err, std::abs(dense.amps[i] - (it == sparse.end() ? cplx{} : it->second)));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("noiseless density is the pure state") {
  const Circuit c = small_circuit(4);
  const auto rho = run_density(c, NoiseModel{});
  CHECK((rho - outer(run_statevector(c).amps)).norm() < 1e-12);
}

TEST_CASE("full depolarization of one gate") {
  Circuit c;
  c.add_register("q", 3);
  c.add(make_rx90(0));
  c.add(make_cnot(0, 1));
  NoiseModel nm;
  nm.lambda2 = 1.0;
  const auto rho = run_density(c, nm);
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  const auto pair = reduce(rho, 3, 2);
  CHECK((pair - Eigen::MatrixXcd::Identity(4, 4) / 4.0).norm() < 1e-12);
}

TEST_CASE("channel matches the closed form") {
  Circuit c;
  c.add_register("q", 3);
  for (int q = 0; q < 3; ++q) {
    c.add(make_rx90(q));
    c.add(make_rz(q, 0.4 + q));
  }
  c.add(make_cnot(2, 0));
  const double lam = 0.37;
  NoiseModel nm;
  nm.lambda2 = lam;
  const auto rho = run_density(c, nm);
  const auto pure = outer(run_statevector(c).amps);
  // (1 - lam) rho + lam I/4 (x) Tr_{0,2} rho, qubit 1 kept
  Eigen::MatrixXcd mid = Eigen::MatrixXcd::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s0 = 0; s0 < 2; ++s0)
        for (int s2 = 0; s2 < 2; ++s2) mid(a, b) += pure(s0 * 4 + a * 2 + s2, s0 * 4 + b * 2 + s2);
  Eigen::MatrixXcd want = (1 - lam) * pure;
  for (int r = 0; r < 8; ++r)
    for (int col = 0; col < 8; ++col)
      if ((r & 5) == (col & 5)) want(r, col) += lam / 4.0 * mid((r >> 1) & 1, (col >> 1) & 1);
  CHECK((rho - want).norm() < 1e-12);
}

TEST_CASE("density trace is preserved") {
  NoiseModel nm;
  nm.lambda2 = 0.05;
  nm.lambda1 = 0.01;
  const auto rho = run_density(small_circuit(5), nm);
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((rho - rho.adjoint()).norm() < 1e-12);
}

TEST_CASE("trajectory mean converges to the density backend") {
  const Circuit c = small_circuit(6);
  NoiseModel dens;
  dens.lambda2 = 0.05;
  NoiseModel traj = dens;
  traj.backend = Backend::Trajectories;
  traj.trajectories = 10000;
  traj.seed = 11;
  NoisyOptions opt{6, {}, {}, true};
  const auto r_traj = run_noisy(c, traj, opt);
  const auto rho = run_density(c, dens);
  double clean = 1.0;
  for (int i = 0; i < static_cast<int>(channel_sites(c, 0).size()); ++i) clean *= 1 - 0.05 * 15 / 16;
  // each sample has unit Frobenius norm
  const double sigma = (1 - clean) / std::sqrt(traj.trajectories);
  CHECK((r_traj.rho_full - rho).norm() < 5 * sigma);
  CHECK(r_traj.rho_full.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trajectories agree with the density backend on a 10-qubit pipeline") {
  const PipelineConfig cfg{7, {1, 2}, {}, false, {}};
  const Circuit c = compile(build_pipeline(cfg).circuit);
  REQUIRE(c.num_qubits() == 10);
  NoiseModel nm;
  nm.lambda2 = 3e-3;
  NoisyOptions opt{7, {parse_observable("H"), parse_observable("Q1")}, run_statevector(c).amps, false};
  const auto d = run_noisy(c, nm, opt);
  nm.backend = Backend::Trajectories;
  nm.trajectories = 10000;
  const auto t = run_noisy(c, nm, opt);
  for (size_t k = 0; k < 2; ++k) CHECK(std::abs(t.observables[k].value - d.observables[k].value) < 3 * t.observables[k].stderr_ + 1e-12);
  CHECK(std::abs(t.fidelity.value - d.fidelity.value) < 3 * t.fidelity.stderr_ + 1e-12);
  CHECK(d.fidelity.value < 1.0);
}

TEST_CASE("zero noise leaves the state pure") {
  const Circuit c = small_circuit(5);
  NoiseModel nm;
  nm.backend = Backend::Trajectories;
  nm.trajectories = 10;
  const auto r = run_noisy(c, nm, {5, {}, run_statevector(c).amps, false});
  CHECK(r.fidelity.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.fidelity.stderr_ == 0.0);
}

TEST_CASE("count-matched channel placement") {
  Circuit c;
  c.add_register("q", 2);
  c.add(make_cnot(0, 1));
  c.add(make_x(0));
  c.add(make_cnot(1, 0));
  c.add(make_cnot(0, 1));
  CHECK(channel_sites(c, 0) == std::vector<int>{0, 2, 3});
  CHECK(channel_sites(c, 5) == std::vector<int>{0, 0, 2, 2, 3});
  NoiseModel nm;
  nm.lambda2 = 0.1;
  nm.matched_channels = 5;
  NoisyOptions opt{2, {}, {}, false};
  CHECK(run_noisy(c, nm, opt).channels == 5);
}

TEST_CASE("fidelity") {
  const std::vector<cplx> a{1.0, 0.0}, b{0.0, 1.0}, h{std::sqrt(0.5), std::sqrt(0.5)};
  CHECK(fidelity(a, a) == doctest::Approx(1.0));
  CHECK(fidelity(a, b) == doctest::Approx(0.0));
  CHECK(fidelity(a, h) == doctest::Approx(0.5));
  CHECK(fidelity(a, outer(h)) == doctest::Approx(0.5));
  CHECK(fidelity(outer(a), outer(h)) == doctest::Approx(0.5));
  const Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  CHECK(fidelity(mixed, mixed) == doctest::Approx(1.0));
  CHECK(fidelity(outer(a), mixed) == doctest::Approx(0.5));
  CHECK_THROWS_AS(fidelity(a, std::vector<cplx>(4)), ValidationError);
}

TEST_CASE("observables") {
  const auto h = observable_matrix(parse_observable("H"), 5);
  CHECK((h - h.adjoint()).norm() < 1e-14);
  Eigen::MatrixXcd vac = Eigen::MatrixXcd::Zero(32, 32);
  vac(0, 0) = 1.0;
  for (const char* name : {"H", "Q1", "Q2"}) CHECK(expval(vac, observable_matrix(parse_observable(name), 5)) == 0.0);
  const auto zi = observable_matrix(parse_observable("0.5*ZI+XX"), 2);
  CHECK(zi(0, 0) == cplx(0.5));
  CHECK(zi(2, 2) == cplx(-0.5));
  CHECK(zi(3, 0) == cplx(1.0));
  const auto y = observable_matrix(parse_observable("Y"), 1);
  CHECK(y(0, 1) == cplx(0, -1));
  CHECK(y(1, 0) == cplx(0, 1));
  CHECK_THROWS_AS(parse_observable("Q3"), ValidationError);
}

TEST_CASE("backend specs") {
  const auto t = parse_backend("traj:10000:seed42", 3e-3);
  CHECK(t.backend == Backend::Trajectories);
  CHECK(t.trajectories == 10000);
  CHECK(t.seed == 42);
  CHECK(parse_backend("density", 0.1).backend == Backend::Density);
  CHECK_THROWS_AS(parse_backend("gpu", 0.1), ValidationError);
  CHECK_THROWS_AS(parse_backend("density", 1.5), ValidationError);
}

TEST_CASE("noiseless compiled pipelines give the tabulated observables") {
  struct Row {
    PipelineConfig cfg;
    double h;
  };
  for (const auto& r : {Row{{5, {1}, {2, 4}, true, {}}, -0.7071}, Row{{6, {1}, {3, 5}, true, {}}, -0.8090}}) {
    const Circuit c = compile(build_pipeline(r.cfg).circuit);
    const auto sv = run_statevector(c);
    const auto rho = reduce(sv.amps, c.num_qubits(), r.cfg.n_sites);
    CHECK(expval(rho, observable_matrix(parse_observable("H"), r.cfg.n_sites)) == doctest::Approx(r.h).epsilon(1e-4));
    CHECK(expval(rho, observable_matrix(parse_observable("Q1"), r.cfg.n_sites)) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(expval(rho, observable_matrix(parse_observable("Q2"), r.cfg.n_sites)) == doctest::Approx(4.0).epsilon(1e-10));
  }
}

TEST_CASE("noiseless pipelines up to eight sites") {
  int checked = 0;
  for (int n = 2; n <= 8; ++n)
    for (int m = 0; m <= 2; ++m)
      for (int d : {0, 2, 4}) {
        PipelineConfig cfg;
        cfg.n_sites = n;
        for (int a = 1; a <= m; ++a) cfg.modes.push_back(a);
        for (int k = 0; k < d; ++k) cfg.walls.push_back(std::max(2 * m, 2) + 2 * k);
        if (!cfg.walls.empty() && cfg.walls.back() > n) continue;
        if (m > 0 && cfg.n0() < 2 * m) continue;
        if (m == 0 && d > 0) continue;
        const Pipeline p = build_pipeline(cfg);
        const Amplitudes out = run_sparse(p.circuit);
        Amplitudes phys;
        std::map<Bits, std::map<Bits, cplx>> by_anc;  // ancilla -> phys -> amp
        for (const auto& [b, a] : out) {
          by_anc[b.substr(n)][b.substr(0, n)] += a;
          if (b.substr(n) == p.ancilla_final) phys[with_boundaries(b.substr(0, n))] += a;
        }
        double purity = 0.0;
        for (const auto& [x, px] : by_anc)
          for (const auto& [y, py] : by_anc) {
            cplx r = 0.0;
            for (const auto& [s, a] : px) {
              const auto it = py.find(s);
              if (it != py.end()) r += a * std::conj(it->second);
            }
            purity += std::norm(r);
          }
        INFO("N=" << n << " M=" << m << " D=" << d);
        CHECK(std::norm(overlap(phys, pipeline_target(cfg))) > 1 - 1e-8);
        CHECK(purity > 1 - 1e-10);
        ++checked;
      }
  CHECK(checked > 20);
}
