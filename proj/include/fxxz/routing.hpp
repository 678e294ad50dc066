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


// Qubit routing onto a hardware coupling graph by SWAP insertion.

#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fxxz/circuit.hpp"

namespace fxxz {

struct CouplingGraph {
  std::string name;
  int n_vertices = 0;
  std::set<std::pair<int, int>> edges;  // (a, b) with a < b
  std::vector<std::string> warnings;    // filled by the loader

  static CouplingGraph complete(int n);
  static CouplingGraph line(int n);

  void add_edge(int a, int b);
  bool adjacent(int a, int b) const;
  std::vector<int> neighbours(int v) const;  // ascending
  // Fewest-edge path from a to b, both included; ties go to the lowest ids.
  std::vector<int> shortest_path(int a, int b) const;
  bool connected(const std::vector<int>& vertices) const;
  // k vertices grown breadth-first from the most central vertex.
  std::vector<int> select_subgraph(int k) const;
  // Same vertex ids, only the edges inside `vertices`.
  CouplingGraph induced(const std::vector<int>& vertices) const;
  void validate() const;
};

CouplingGraph parse_coupling(const std::string& json_text);
CouplingGraph load_coupling(const std::string& path);
std::string coupling_to_json(const CouplingGraph& g);

struct RoutedCircuit {
  Circuit circuit;                 // qubit i sits on vertex physical[i]
  std::vector<int> physical;
  std::vector<int> initial_layout;  // virtual qubit -> routed qubit
  std::vector<int> final_layout;
  int swaps = 0;

  // Logical order for readout: virtual qubits first, then spare qubits.
  std::vector<int> readout_order() const;
};

// Routes a circuit whose gates act on at most two qubits. `initial` maps
// virtual qubits to vertices; when empty the placement is
// select_subgraph(num_qubits) in breadth-first order. With `confine`, swaps
// stay inside the placed vertices.
RoutedCircuit route(const Circuit& c, const CouplingGraph& g, const std::vector<int>& initial = {},
                    bool confine = true);

}  // namespace fxxz
