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

#include "fxxz/abc.hpp"
#include "fxxz/hardrod.hpp"

using namespace fxxz;

namespace {

Bits free_bits(const std::vector<int>& x, int sites) {
  Bits b(sites, '0');
  for (int s : x) b[s - 1] = '1';
  return b;
}

Bits aux_start(int m) { return "1" + Bits(m, '0'); }

// Splits a state over phys+aux, checks the aux register is in `aux` with unit
// weight and returns the phys part.
Amplitudes phys_part(const Amplitudes& full, int n_phys, const Bits& aux, double& leak) {
  Amplitudes out;
  leak = 0.0;
  for (const auto& [b, a] : full) {
    if (b.substr(n_phys) == aux)
      out[b.substr(0, n_phys)] += a;
    else
      leak += std::norm(a);
  }
  return out;
}

double fidelity(const Amplitudes& a, const Amplitudes& b) { return std::norm(overlap(normalized(a), normalized(b))); }

}  // namespace

TEST_CASE("swap module") {
  const U0Layout l{6, 3};
  const auto g = build_swap_module(2, l);
  CHECK(g.size() == 3);
  const Bits phys0(6, '0');
  Bits phys1 = phys0;
  phys1[1] = '1';
  CHECK(apply_classical(g, phys0 + "1000") == phys0 + "1000");
  CHECK(apply_classical(g, phys1 + "1000") == phys1 + "0100");
  CHECK(apply_classical(g, apply_classical(g, phys1 + "1000")) == phys1 + "0010");
  CHECK_THROWS_AS(build_swap_module(7, l), ValidationError);
}

TEST_CASE("shift module") {
  const U0Layout l{5, 2};
  const auto g = build_shift_module(1, l);
  CHECK(g.size() == 1);
  // pointer in the last slot: no shift
  CHECK(apply_classical(g, Bits("10000") + "001") == Bits("10000") + "001");
  // pointer in slot 2: shift by one
  CHECK(apply_classical(g, Bits("10000") + "010") == Bits("01000") + "010");
  // no magnon at the base
  CHECK(apply_classical(g, Bits("00000") + "010") == Bits("00000") + "010");
  CHECK_THROWS_AS(build_shift_module(5, l), ValidationError);
  // (1, 2) on four free sites lands on 10100
  const Circuit u0 = build_u0(l);
  CHECK(apply_classical(u0.gates(), "11000" + aux_start(2)) == Bits("10100") + "001");
}

TEST_CASE("u0 classical action matches the hard-rod map") {
  int checked = 0;
  for (int n = 1; n <= 9; ++n)
    for (int m = 1; 2 * m - 1 <= n; ++m) {
      const U0Layout l{n, m};
      const Circuit full = build_u0(l);
      const Circuit trimmed = build_u0(l, true);
      const auto k = kind_counts(full);
      CHECK(k.at(GateKind::CSWAP) <= (2 * m - 1) * (n - m + 1));
      if (m > 1) CHECK(trimmed.gates().size() < full.gates().size());
      for (const auto& x : combinations(l.free_sites(), m)) {
        const Bits fb = free_bits(x, l.free_sites());
        const Bits in = fb + Bits(m - 1, '0') + aux_start(m);
        const Bits want = hardrod_shift(fb, m) + u0_aux_final(l);
        CHECK(apply_classical(full.gates(), in) == want);
        CHECK(apply_classical(trimmed.gates(), in) == want);
        ++checked;
      }
    }
  MESSAGE("basis inputs checked: " << checked);
  // one magnon: identity on the physical register
  const Circuit one = build_u0(U0Layout{5, 1});
  for (int s = 1; s <= 5; ++s) {
    const Bits fb = free_bits({s}, 5);
    CHECK(apply_classical(one.gates(), fb + "10") == fb + "01");
  }
  CHECK_THROWS_AS(build_u0(U0Layout{5, 0}), ValidationError);
  CHECK_THROWS_AS(build_u0(U0Layout{4, 3}), ValidationError);
}

TEST_CASE("u0 dense action is the classical permutation") {
  const U0Layout l{5, 2};
  const Circuit c = build_u0(l);
  const auto u = dense_unitary(c);
  for (const auto& x : combinations(4, 2)) {
    const Bits in = free_bits(x, 4) + "0" + "100";
    const Bits out = hardrod_shift(free_bits(x, 4), 2) + "001";
    const auto col = std::stoul(in, nullptr, 2), row = std::stoul(out, nullptr, 2);
    CHECK(std::abs(u(row, col) - 1.0) < 1e-15);
  }
}

TEST_CASE("u0 on free eigenstates and superpositions") {
  // open XX eigenstate with modes (1, 2) on four sites
  const int n = 5, m = 2;
  const MomentumSet ms{{1, 2}, 4};
  const U0Layout l{n, m};
  const auto abc = build_abc(ms);
  Circuit c = build_u0(l);
  std::vector<Gate> gates = abc.circuit.gates();
  for (const auto& g : c.gates()) gates.push_back(g);
  const Bits init = abc.circuit.initial_bits() + Bits(m - 1, '0') + aux_start(m);
  const auto out = from_dense(run_gates(gates, init), n + m + 1);
  double leak = 0.0;
  const auto phys = phys_part(out, n, u0_aux_final(l), leak);
  CHECK(leak < 1e-10);
  Amplitudes want;
  for (const auto& [b, a] : magnonic_eigenstate(ms, ChainSpec{n})) want[strip_boundaries(b)] = a;
  CHECK(fidelity(phys, want) > 1 - 1e-8);

  // uniform superposition maps to the constrained Dicke state
  for (int nn = 3; nn <= 8; ++nn)
    for (int mm = 1; 2 * mm - 1 <= nn; ++mm) {
      const U0Layout ll{nn, mm};
      Amplitudes in;
      const auto xs = combinations(ll.free_sites(), mm);
      for (const auto& x : xs)
        in[free_bits(x, ll.free_sites()) + Bits(mm - 1, '0') + aux_start(mm)] = 1.0 / std::sqrt(double(xs.size()));
      const Circuit u0 = build_u0(ll, true);
      auto v = to_dense(in, nn + mm + 1);
      for (const auto& g : u0.gates()) apply_gate(v, nn + mm + 1, g);
      double lk = 0.0;
      const auto p = phys_part(from_dense(v, nn + mm + 1), nn, u0_aux_final(ll), lk);
      CHECK(lk < 1e-12);
      CHECK(fidelity(p, constrained_dicke(mm, nn)) > 1 - 1e-12);
    }

  // random complex superposition: aux ends in a fixed basis state
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  const U0Layout l7{7, 3};
  Amplitudes in;
  for (const auto& x : combinations(l7.free_sites(), 3)) in[free_bits(x, 5) + "00" + aux_start(3)] = cplx{g(rng), g(rng)};
  in = normalized(in);
  auto v = to_dense(in, 11);
  const Circuit u7 = build_u0(l7);
  for (const auto& gate : u7.gates()) apply_gate(v, 11, gate);
  double lk = 0.0;
  const auto p = phys_part(from_dense(v, 11, 0.0), 7, u0_aux_final(l7), lk);
  CHECK(lk < 1e-10);
  CHECK(std::abs(norm(p) - 1.0) < 1e-10);
}
