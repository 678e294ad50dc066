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
#include <numbers>
#include <random>

#include "fxxz/abc.hpp"

using namespace fxxz;

namespace {

constexpr double kPi = std::numbers::pi;

DoubledMomenta random_momenta(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> U(0.05, kPi - 0.05);
  for (;;) {
    std::vector<double> p;
    for (int a = 0; a < m; ++a) p.push_back(U(rng));
    bool ok = true;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < a; ++b) ok = ok && std::abs(p[a] - p[b]) > 0.05;
    if (ok) return DoubledMomenta::from(p);
  }
}

double fidelity(const Amplitudes& a, const Amplitudes& b) {
  return std::norm(overlap(normalized(a), normalized(b)));
}

int excitations(size_t i) { return __builtin_popcountll(i); }

}  // namespace

TEST_CASE("gram matrix") {
  std::mt19937_64 rng(3);
  const auto dm = random_momenta(rng, 2);
  const auto c1 = gram_matrix(1, dm, 4);
  CHECK((c1 - Eigen::MatrixXcd::Ones(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
  const auto c2 = gram_matrix(2, dm, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(std::abs(c2(a, b) - (std::conj(dm.y[a]) * dm.y[b] + 1.0)) < 1e-14);
  for (int k = 0; k <= 12; ++k) {
    const auto c = gram_matrix(k, dm, 4);
    // direct inner products of plane waves y^n, n = 0..k-1
    Eigen::MatrixXcd a(k, 4);
    for (int n = 0; n < k; ++n)
      for (int j = 0; j < 4; ++j) a(n, j) = std::pow(dm.y[j], n);
    const Eigen::MatrixXcd direct = k == 0 ? Eigen::MatrixXcd::Zero(4, 4) : Eigen::MatrixXcd(a.adjoint() * a);
    CHECK((c - direct).cwiseAbs().maxCoeff() < 1e-12);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(c(j, j) - double(k)) < 1e-12);
    CHECK((c - c.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(gram_matrix(3, dm).rows() == 3);
  CHECK_THROWS_AS(DoubledMomenta::from({0.4, 0.4}), ValidationError);
}

TEST_CASE("matchgate parameters are unitary") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int m = 1 + t % 3;
    const auto dm = random_momenta(rng, m);
    for (int k = 1; k <= 12; ++k)
      for (int a = 1; a <= std::min(k, 2 * m); ++a) {
        const auto p = matchgate_params(k, a, dm);
        worst = std::max(worst, std::abs(std::norm(p.u) + std::norm(p.v) - 1.0));
      }
  }
  CHECK(worst < 1e-10);
  const auto dm = DoubledMomenta::from({kPi / 4});
  CHECK(std::abs(std::abs(matchgate_params(1, 1, dm).v) - 1 / std::sqrt(2.0)) < 1e-14);
  CHECK_THROWS_AS(matchgate_params(1, 2, dm), ValidationError);
}

TEST_CASE("phase gate") {
  const auto dm = DoubledMomenta::from({kPi / 4});
  const cplx f = phase_factor(1, dm);
  // the cross-ratio is -1, on the branch cut: either root is admissible
  CHECK(std::abs(std::abs(f.imag()) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(phase_gate(1, dm, 0).params[0]) - kPi / 2) < 1e-12);
  std::mt19937_64 rng(5);
  const auto d3 = random_momenta(rng, 3);
  for (int k = 1; k < 6; ++k) CHECK(std::abs(std::abs(phase_factor(k, d3)) - 1.0) < 1e-12);
  CHECK_THROWS_AS(phase_factor(2, dm), ValidationError);
}

TEST_CASE("P_k layers") {
  std::mt19937_64 rng(8);
  const auto dm = random_momenta(rng, 2);
  for (int k = 1; k <= 7; ++k) {
    const auto layer = build_pk(k, dm, 0);
    int mg = 0, ph = 0;
    for (const auto& g : layer) {
      mg += g.kind == GateKind::Matchgate;
      ph += g.kind == GateKind::Phase1Q;
    }
    CHECK(mg == std::min(k, 4));
    CHECK(ph == (k < 4 ? 1 : 0));
    Circuit c;
    c.add_register("q", std::min(k, 4) + 1);
    c.append_gates(layer);
    const auto u = dense_unitary(c);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < 1e-10);
    for (int r = 0; r < u.rows(); ++r)
      for (int col = 0; col < u.cols(); ++col)
        if (excitations(r) != excitations(col)) CHECK(std::abs(u(r, col)) < 1e-14);
  }
}

TEST_CASE("boundary state") {
  const MomentumSet ms{{1}, 3};
  const auto t = target_boundary_state(ms);
  CHECK(std::abs(norm(t) - 1.0) < 1e-10);
  for (const auto& [b, a] : t) {
    CHECK(b.size() == 2);
    CHECK(std::count(b.begin(), b.end(), '1') == 1);
  }
  const MomentumSet m3{{1, 3, 4}, 7};
  const auto t3 = target_boundary_state(m3);
  CHECK(t3.size() <= 20);
  for (const auto& [b, a] : t3) CHECK(std::count(b.begin(), b.end(), '1') == 3);
  CHECK_THROWS_AS(target_boundary_state(MomentumSet{{1, 2}, 3}), ValidationError);
}

TEST_CASE("boundary layout") {
  CHECK(boundary_layout(1).size() == 1);
  CHECK(boundary_layout(2).size() == 3);
  CHECK(boundary_layout(3).size() == 7);
  CHECK(boundary_layout(4).size() == 18);
  const auto l2 = boundary_layout(2);
  CHECK(l2[0] == std::pair{1, 2});
  CHECK(l2[1] == std::pair{0, 1});
  CHECK(l2[2] == std::pair{2, 3});
  CHECK(boundary_layout(3, 1).size() == 7 + 3);
}

TEST_CASE("abc small cases") {
  const MomentumSet ms{{1}, 3};
  const auto abc = build_abc(ms);
  const auto out = from_dense(run_gates(abc.circuit.gates(), abc.circuit.initial_bits()), 3);
  Amplitudes want;
  for (int n = 1; n <= 3; ++n) {
    Bits b(3, '0');
    b[n - 1] = '1';
    want[b] = std::sin(kPi * n / 4);
  }
  CHECK(fidelity(out, want) > 1 - 1e-12);
  const auto empty = build_abc(MomentumSet{{}, 4});
  CHECK(empty.circuit.gates().empty());
  CHECK(empty.circuit.initial_bits() == "0000");
  const auto two = build_abc(MomentumSet{{1, 2}, 6});
  CHECK(two.boundary.gates.size() == 3);
  const auto o2 = from_dense(run_gates(two.circuit.gates(), two.circuit.initial_bits()), 6);
  CHECK(fidelity(o2, xx_open_eigenstate(MomentumSet{{1, 2}, 6})) > 1 - 1e-8);
  CHECK_THROWS_AS(build_abc(MomentumSet{{1, 2}, 3}), ValidationError);
}

TEST_CASE("abc fidelity over all grids") {
  double worst = 0.0;
  int cases = 0, extended = 0;
  for (int n0 = 2; n0 <= 8; ++n0)
    for (int m = 1; m <= 3 && 2 * m <= n0; ++m)
      for (const auto& modes : combinations(n0, m)) {
        const MomentumSet ms{modes, n0};
        const auto abc = build_abc(ms);
        const auto out = from_dense(run_gates(abc.circuit.gates(), abc.circuit.initial_bits()), n0);
        worst = std::max(worst, 1.0 - fidelity(out, xx_open_eigenstate(ms)));
        extended += abc.boundary.extra_layers > 0;
        ++cases;
      }
  MESSAGE("grids: " << cases << ", worst infidelity " << worst << ", extended boundary layouts " << extended);
  CHECK(worst < 1e-8);
}
