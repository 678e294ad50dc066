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

#include <cstdio>
#include <fstream>
#include <random>

#include "fxxz/pipeline.hpp"
#include "fxxz/routing.hpp"
#include "fxxz/sim.hpp"

using namespace fxxz;

namespace {

Circuit random_circuit(int n, int gates, std::mt19937& rng) {
  Circuit c;
  c.add_register("q", n);
  std::uniform_int_distribution<int> pick(0, n - 1), kind(0, 3);
  std::uniform_real_distribution<double> ang(-3, 3);
  for (int i = 0; i < gates; ++i) {
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) b = pick(rng);
    switch (kind(rng)) {
      case 0:
        c.add(make_rz(a, ang(rng)));
        break;
      case 1:
        c.add(make_rx90(a));
        break;
      case 2:
        c.add(make_cnot(a, b));
        break;
      default:
        c.add(make_matchgate(a, b, std::polar(0.8, ang(rng)), std::polar(0.6, ang(rng))));
    }
  }
  return c;
}

bool on_edges(const RoutedCircuit& r, const CouplingGraph& g) {
  for (const auto& gate : r.circuit.gates())
    if (gate.qubits.size() == 2 && !g.adjacent(r.physical[gate.qubits[0]], r.physical[gate.qubits[1]])) return false;
  return true;
}

// Max deviation between U|x> and the routed output read out in logical order.
double equivalence_error(const Circuit& c, const RoutedCircuit& r) {
  const int n = c.num_qubits(), m = r.circuit.num_qubits();
  double err = 0.0;
  for (size_t x = 0; x < (size_t{1} << n); ++x) {
    Bits in(n, '0'), rin(m, '0');
    for (int v = 0; v < n; ++v)
      if ((x >> (n - 1 - v)) & 1) {
        in[v] = '1';
        rin[r.initial_layout[v]] = '1';
      }
    Circuit a = c, b = r.circuit;
    Circuit a2, b2;
    a2.add_register("q", n, in);
    a2.append_gates(a.gates());
    b2.add_register("q", m, rin);
    b2.append_gates(b.gates());
    const auto want = run_statevector(a2).amps;
    const auto got = permute_qubits(run_statevector(b2).amps, m, r.readout_order());
    for (size_t i = 0; i < got.size(); ++i) {
      const cplx w = (i & ((size_t{1} << (m - n)) - 1)) == 0 ? want[i >> (m - n)] : cplx{};
      err = std::max(err, std::abs(got[i] - w));
    }
  }
  return err;
}

}  // namespace

TEST_CASE("complete graph leaves the circuit unchanged") {
  std::mt19937 rng(3);
  const Circuit c = random_circuit(5, 30, rng);
  const auto r = route(c, CouplingGraph::complete(5));
  CHECK(r.swaps == 0);
  CHECK(r.circuit.gates() == c.gates());
  CHECK(r.final_layout == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("line graph needs one swap for the far pair") {
  Circuit c;
  c.add_register("q", 3);
  c.add(make_cnot(0, 2));
  const auto r = route(c, CouplingGraph::line(3), {0, 1, 2});
  CHECK(r.swaps == 1);
  CHECK(r.circuit.gates().size() == 2);
  CHECK(census(compile(r.circuit)).cnot == 4);
  CHECK(equivalence_error(c, r) < 1e-12);
}

TEST_CASE("random circuits are routed onto edges and stay equivalent") {
  std::mt19937 rng(17);
  const CouplingGraph syc = load_coupling(FXXZ_DATA_DIR "/sycamore23.json");
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + trial % 6;
    const Circuit c = random_circuit(n, 40, rng);
    for (const auto& g : {CouplingGraph::line(n), syc}) {
      for (bool confine : {true, false}) {
        const auto r = route(c, g, {}, confine);
        CHECK(on_edges(r, g));
        if (r.circuit.num_qubits() <= 10) CHECK(equivalence_error(c, r) < 1e-10);
      }
    }
  }
}

TEST_CASE("bundled coupling graph") {
  const CouplingGraph g = load_coupling(FXXZ_DATA_DIR "/sycamore23.json");
  CHECK(g.n_vertices == 23);
  std::vector<int> all(23);
  for (int v = 0; v < 23; ++v) all[v] = v;
  CHECK(g.connected(all));
  for (int k : {11, 13}) {
    const auto sub = g.select_subgraph(k);
    CHECK(sub.size() == static_cast<size_t>(k));
    CHECK(g.connected(sub));
  }
  CHECK(g.warnings.empty());
}

TEST_CASE("coupling file errors") {
  const auto dup = parse_coupling(R"({"edges": [[0, 1], [1, 0], [1, 2]]})");
  CHECK(dup.edges.size() == 2);
  CHECK(dup.warnings.size() == 1);
  CHECK_THROWS_AS(parse_coupling(R"({"edges": [[0, 0]]})"), ValidationError);
  CHECK_THROWS_AS(parse_coupling(R"({"edges": [[0]]})"), ValidationError);
  CHECK_THROWS_AS(parse_coupling("not json"), ValidationError);
  CHECK_THROWS_AS(load_coupling("/nonexistent/graph.json"), ValidationError);
  const auto round = parse_coupling(coupling_to_json(CouplingGraph::line(4)));
  CHECK(round.edges == CouplingGraph::line(4).edges);
}

TEST_CASE("disconnected graphs are rejected") {
  CouplingGraph g;
  g.n_vertices = 4;
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  Circuit c;
  c.add_register("q", 2);
  c.add(make_cnot(0, 1));
  CHECK_THROWS_AS(route(c, g, {0, 2}), ValidationError);
  CHECK_THROWS_AS(route(c, g, {0, 2}, false), ValidationError);
}

TEST_CASE("three-qubit gates must be compiled first") {
  Circuit c;
  c.add_register("q", 3);
  c.add(make_toffoli(0, 1, 2));
  CHECK_THROWS_AS(route(c, CouplingGraph::line(3)), ValidationError);
}

TEST_CASE("routed pipeline keeps its output and costs more CNOTs") {
  const PipelineConfig cfg{5, {1}, {2, 4}, true, {}};
  const Circuit c = compile(build_pipeline(cfg).circuit);
  const CouplingGraph g = load_coupling(FXXZ_DATA_DIR "/sycamore23.json");
  const auto r = route(c, g);
  CHECK(on_edges(r, g));
  CHECK(r.circuit.num_qubits() == 11);
  CHECK(census(compile(r.circuit)).cnot >= census(c).cnot);
  const auto logical = permute_qubits(run_statevector(r.circuit).amps, 11, r.readout_order());
  CHECK(fidelity(logical, run_statevector(c).amps) > 1 - 1e-10);
}
