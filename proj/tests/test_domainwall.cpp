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
#include <set>
#include <tuple>

#include "d2_traces.hpp"
#include "fxxz/abc.hpp"
#include "fxxz/domainwall.hpp"
#include "fxxz/pipeline.hpp"

using namespace fxxz;

namespace {

bool classical_only(const Circuit& c) {
  for (const auto& g : c.gates())
    if (g.kind != GateKind::X && g.kind != GateKind::CNOT && g.kind != GateKind::Toffoli && g.kind != GateKind::CSWAP)
      return false;
  return true;
}

// Phys amplitudes (with boundary sites) and the weight outside the ancilla
// initial state.
Amplitudes phys_state(const Pipeline& p, double& leak) {
  const auto dense = run_gates(p.circuit.gates(), p.circuit.initial_bits());
  const auto amps = from_dense(dense, p.circuit.num_qubits());
  const Bits anc = p.ancilla_final;
  Amplitudes out;
  leak = 0.0;
  for (const auto& [b, a] : amps) {
    if (b.substr(p.n_sites) == anc)
      out[with_boundaries(b.substr(0, p.n_sites))] += a;
    else
      leak += std::norm(a);
  }
  return out;
}

double expect_charge(const Amplitudes& s, int (*q)(const Bits&)) {
  double v = 0.0;
  for (const auto& [b, a] : s) v += std::norm(a) * q(b);
  return v;
}

}  // namespace

TEST_CASE("layout") {
  for (int d : {2, 4, 6}) {
    const VdLayout l{d + 5, d};
    const Circuit c = vd_registers(l);
    CHECK(c.num_qubits() == l.total_qubits());
    CHECK(c.offset("aux") == l.aux(1));
    CHECK(c.offset("r0") == l.r0(0));
    CHECK(c.offset("rc") == l.rc(0));
    CHECK(c.offset("rr") == l.rr(0));
    std::set<int> slots;
    for (int v = 0; v <= d; ++v) slots.insert(l.slot(v));
    CHECK(slots.size() == static_cast<size_t>(d + 1));
    CHECK_FALSE(slots.count(l.spare()));
    CHECK(c.initial_bits()[l.slot(0)] == '1');
  }
  CHECK_THROWS_AS((VdLayout{4, 3}.validate()), ValidationError);
  CHECK_THROWS_AS((VdLayout{4, 4}.validate()), ValidationError);
}

TEST_CASE("no walls gives an empty circuit") {
  for (int n = 1; n <= 6; ++n) CHECK(build_vd(VdLayout{n, 0}).gates().empty());
}

TEST_CASE("block flattening undoes pre gates") {
  GateBlock b;
  b.pre = {make_x(0), make_cnot(0, 1)};
  b.body = {GateBlock::single(make_toffoli(0, 1, 2))};
  const auto g = flatten({b});
  REQUIRE(g.size() == 5);
  CHECK(g[3] == make_cnot(0, 1));
  CHECK(g[4] == make_x(0));
}

TEST_CASE("wall relocation is exact on every valid input") {
  for (int d : {2, 4})
    for (int n = d + 2; n <= 8; ++n) {
      const VdLayout l{n, d};
      const auto cases = vd_cases(l, 2);
      if (cases.empty()) continue;
      const Circuit full = vd_registers(l);
      Circuit c = build_vd(l);
      CHECK(classical_only(c));
      std::vector<Gate> unpruned = flatten(build_vd_blocks(l));
      int bad = 0, bad_unpruned = 0;
      for (const auto& k : cases) {
        bad += apply_classical(c.gates(), k.input) != k.expected;
        bad_unpruned += apply_classical(unpruned, k.input) != k.expected;
      }
      INFO("N=" << n << " D=" << d);
      CHECK(bad == 0);
      CHECK(bad_unpruned == 0);
      CHECK(c.num_qubits() == full.num_qubits());
    }
}

TEST_CASE("relocation matches the oracle for three magnons") {
  const VdLayout l{10, 2};
  const auto c = build_vd(l);
  int checked = 0;
  for (const auto& k : vd_cases(l))
    if (std::count(k.input.begin() + l.aux(1), k.input.begin() + l.aux(1) + l.aux_size(), '1') == 3) {
      CHECK(apply_classical(c.gates(), k.input) == k.expected);
      ++checked;
    }
  CHECK(checked > 0);
}

TEST_CASE("gate counts respect the closed-form bounds") {
  for (int d : {2, 4, 6})
    for (int n = d + 2; n <= 14; ++n) {
      const VdLayout l{n, d};
      if (vd_cases(l, 1).empty()) continue;
      const auto counts = kind_counts(build_vd(l));
      const auto b = vd_gate_bounds(n, d);
      auto get = [&](GateKind k) { return counts.count(k) ? counts.at(k) : 0; };
      INFO("N=" << n << " D=" << d);
      CHECK(get(GateKind::CNOT) <= b.cnot);
      CHECK(get(GateKind::Toffoli) <= b.toffoli);
      CHECK(get(GateKind::CSWAP) <= b.cswap);
    }
}

TEST_CASE("bound formulas") {
  const auto b = vd_gate_bounds(5, 2);
  CHECK(b.cnot == doctest::Approx(32));
  CHECK(b.toffoli == doctest::Approx(72));
  CHECK(b.cswap == doctest::Approx(11.5));
}

TEST_CASE("two-wall circuit registers") {
  CHECK(build_vd_d2(5, {2, 4}).num_qubits() == 11);
  CHECK(build_vd_d2(6, {3, 5}).num_qubits() == 13);
  CHECK_THROWS_AS(build_vd_d2(6, {2}), ValidationError);
  CHECK_THROWS_AS(build_vd_d2(8, {2, 4, 6, 8}), ValidationError);
}

TEST_CASE("two-wall circuit relocates and resets") {
  for (int n = 5; n <= 7; ++n)
    for (int d1 = 2; d1 <= n; ++d1)
      for (int d2 = d1 + 2; d2 <= n; ++d2) {
        const auto c = build_vd_d2(n, {d1, d2});
        CHECK(classical_only(c));
        const Bits init = c.initial_bits();
        for (int m = 1; m <= n - 2; ++m) {
          Bits in = init;
          in[n + m - 1] = '1';
          Bits want = init;
          want.replace(0, n, domainwall_relocate({m}, DomainWallConfig{{d1, d2}, 1}, n));
          CHECK(apply_classical(c.gates(), in) == want);
        }
      }
}

TEST_CASE("two-wall traces reproduce the printed tables") {
  std::map<std::tuple<int, int, int, int>, std::string> fix;
  for (const auto& e : gold::kErrata) fix[{e.n_sites, e.stage, e.row, e.column}] = e.corrected;
  std::map<std::pair<int, int>, int> row_in_stage;
  int rows = 0, verbatim = 0;
  for (const auto& r : gold::kTraceRows) {
    const int row = row_in_stage[{r.n_sites, r.stage}]++;
    std::array<std::string, 4> want;
    for (int k = 0; k < 4; ++k) {
      auto it = fix.find({r.n_sites, r.stage, row, k});
      want[k] = it == fix.end() ? r.cells[k] : it->second;
    }
    const Bits phys = want[0].substr(0, r.n_sites);
    std::vector<int> walls;
    for (int i = 0; i <= r.n_sites; ++i) {
      const char a = i ? phys[i - 1] : '0', b = i < r.n_sites ? phys[i] : '0';
      if (a != b) walls.push_back(i);
    }
    REQUIRE(walls.size() == 2);
    const auto got = vd_d2_trace(build_vd_d2(r.n_sites, walls), r.n_sites, r.stage);
    INFO("N=" << r.n_sites << " n=" << r.stage << " row " << row);
    for (int k = 0; k < 4; ++k) CHECK(got[k] == want[k]);
    bool same = true;
    for (int k = 0; k < 4; ++k) same = same && got[k] == r.cells[k];
    verbatim += same;
    ++rows;
  }
  CHECK(rows == 33);
  CHECK(verbatim == 33 - 6);
}

TEST_CASE("pipelines reach the folded eigenstates") {
  struct Case {
    PipelineConfig cfg;
    double energy;
  };
  const std::vector<Case> cases = {
      {{5, {1}, {2, 4}, true, {}}, -std::cos(std::numbers::pi / 4)},
      {{6, {1}, {3, 5}, true, {}}, -std::cos(std::numbers::pi / 5)},
      {{5, {1}, {2, 4}, false, {}}, -std::cos(std::numbers::pi / 4)},
      {{7, {1, 2}, {}, false, {}}, -std::cos(std::numbers::pi / 7) - std::cos(2 * std::numbers::pi / 7)},
      {{7, {1, 2}, {4, 6}, false, {}}, -std::cos(std::numbers::pi / 5) - std::cos(2 * std::numbers::pi / 5)},
  };
  for (const auto& k : cases) {
    const Pipeline p = build_pipeline(k.cfg);
    double leak = 0.0;
    const Amplitudes out = phys_state(p, leak);
    const Amplitudes target = pipeline_target(k.cfg);
    INFO("N=" << k.cfg.n_sites << " qubits=" << p.circuit.num_qubits());
    CHECK(leak < 1e-10);
    CHECK(std::norm(overlap(out, target)) > 1 - 1e-8);
    CHECK(expectation_h(out) == doctest::Approx(k.energy).epsilon(1e-8));
    if (k.cfg.walls.size() == 2 && k.cfg.magnons() == 1) {
      CHECK(expect_charge(out, charge_q1) == doctest::Approx(3));
      CHECK(expect_charge(out, charge_q2) == doctest::Approx(4));
    }
  }
}

TEST_CASE("pipeline without magnons is the reference state") {
  const Pipeline p = build_pipeline({6, {}, {}, false, {}});
  CHECK(p.circuit.gates().empty());
  CHECK(p.circuit.initial_bits() == "000000");
  CHECK(pipeline_target({6, {}, {}, false, {}}).count("00000000") == 1);
}
