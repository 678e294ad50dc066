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


#include "fxxz/routing.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fxxz/oracle.hpp"

namespace fxxz {

CouplingGraph CouplingGraph::complete(int n) {
  CouplingGraph g;
  g.name = "complete" + std::to_string(n);
  g.n_vertices = n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.edges.insert({a, b});
  return g;
}

CouplingGraph CouplingGraph::line(int n) {
  CouplingGraph g;
  g.name = "line" + std::to_string(n);
  g.n_vertices = n;
  for (int a = 0; a + 1 < n; ++a) g.edges.insert({a, a + 1});
  return g;
}

void CouplingGraph::add_edge(int a, int b) {
  if (a == b) throw ValidationError("self-loop on vertex " + std::to_string(a));
  if (a < 0 || b < 0 || a >= n_vertices || b >= n_vertices) throw ValidationError("edge endpoint out of range");
  if (!edges.insert({std::min(a, b), std::max(a, b)}).second)
    warnings.push_back("duplicate edge " + std::to_string(a) + "-" + std::to_string(b) + " ignored");
}

bool CouplingGraph::adjacent(int a, int b) const { return edges.count({std::min(a, b), std::max(a, b)}) > 0; }

std::vector<int> CouplingGraph::neighbours(int v) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<int> bfs_parents(const CouplingGraph& g, int src, std::vector<int>* order = nullptr) {
  std::vector<std::vector<int>> adj(g.n_vertices);
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());
  std::vector<int> parent(g.n_vertices, -2);
  std::deque<int> q{src};
  parent[src] = -1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    if (order) order->push_back(v);
    for (int w : adj[v])
      if (parent[w] == -2) {
        parent[w] = v;
        q.push_back(w);
      }
  }
  return parent;
}

}  // namespace

std::vector<int> CouplingGraph::shortest_path(int a, int b) const {
  const auto parent = bfs_parents(*this, b);
  if (parent[a] == -2) throw ValidationError("coupling graph is disconnected between " + std::to_string(a) + " and " + std::to_string(b));
  std::vector<int> path;
  for (int v = a; v != -1; v = parent[v]) path.push_back(v);
  return path;
}

bool CouplingGraph::connected(const std::vector<int>& vertices) const {
  if (vertices.empty()) return true;
  const auto parent = bfs_parents(induced(vertices), vertices.front());
  return std::all_of(vertices.begin(), vertices.end(), [&](int v) { return parent[v] != -2; });
}

std::vector<int> CouplingGraph::select_subgraph(int k) const {
  if (k > n_vertices) throw ValidationError("graph has fewer vertices than qubits");
  int best = -1, best_ecc = std::numeric_limits<int>::max();
  for (int v = 0; v < n_vertices; ++v) {
    std::vector<int> order;
    const auto parent = bfs_parents(*this, v, &order);
    if (static_cast<int>(order.size()) < k) continue;
    int ecc = 0;
    for (int w : order) {
      int d = 0;
      for (int x = w; parent[x] != -1; x = parent[x]) ++d;
      ecc = std::max(ecc, d);
    }
    if (ecc < best_ecc) {
      best_ecc = ecc;
      best = v;
    }
  }
  if (best < 0) throw ValidationError("no connected subgraph with " + std::to_string(k) + " vertices");
  std::vector<int> order;
  bfs_parents(*this, best, &order);
  order.resize(k);
  return order;
}

CouplingGraph CouplingGraph::induced(const std::vector<int>& vertices) const {
  const std::set<int> keep(vertices.begin(), vertices.end());
  CouplingGraph sub;
  sub.name = name;
  sub.n_vertices = n_vertices;
  for (const auto& e : edges)
    if (keep.count(e.first) && keep.count(e.second)) sub.edges.insert(e);
  return sub;
}

void CouplingGraph::validate() const {
  if (n_vertices < 1) throw ValidationError("coupling graph has no vertices");
  for (const auto& [a, b] : edges)
    if (a == b || a < 0 || b >= n_vertices) throw ValidationError("malformed edge");
}

CouplingGraph parse_coupling(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed coupling file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("edges") || !j["edges"].is_array())
    throw ValidationError("malformed coupling file: expected an object with an \"edges\" array");
  CouplingGraph g;
  g.name = j.value("name", "");
  int max_id = -1;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ValidationError("malformed coupling file: each edge must be a pair of integers");
    max_id = std::max({max_id, e[0].get<int>(), e[1].get<int>()});
  }
  g.n_vertices = j.value("n_vertices", max_id + 1);
  for (const auto& e : j["edges"]) g.add_edge(e[0].get<int>(), e[1].get<int>());
  g.validate();
  return g;
}

CouplingGraph load_coupling(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open coupling file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_coupling(ss.str());
}

std::string coupling_to_json(const CouplingGraph& g) {
  nlohmann::json j;
  j["name"] = g.name;
  j["n_vertices"] = g.n_vertices;
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : g.edges) j["edges"].push_back({a, b});
  return j.dump();
}

std::vector<int> RoutedCircuit::readout_order() const {
  std::vector<int> order = final_layout;
  std::vector<bool> used(physical.size());
  for (int q : order) used[q] = true;
  for (int q = 0; q < static_cast<int>(physical.size()); ++q)
    if (!used[q]) order.push_back(q);
  return order;
}

RoutedCircuit route(const Circuit& c, const CouplingGraph& full, const std::vector<int>& initial, bool confine) {
  full.validate();
  const int n = c.num_qubits();
  for (const auto& gate : c.gates())
    if (gate.qubits.size() > 2) throw ValidationError("route needs gates on at most two qubits; compile first");
  std::vector<int> place = initial.empty() ? full.select_subgraph(n) : initial;
  if (static_cast<int>(place.size()) != n) throw ValidationError("initial layout size differs from the circuit");
  for (int v : place)
    if (v < 0 || v >= full.n_vertices) throw ValidationError("layout vertex out of range");
  const CouplingGraph g = confine ? full.induced(place) : full;
  if (confine && !full.connected(place)) throw ValidationError("the placed vertices are not connected");
  if (std::set<int>(place.begin(), place.end()).size() != place.size())
    throw ValidationError("initial layout repeats a vertex");

  // Spare vertices pulled in by swaps get virtual ids n, n+1, ...
  std::map<int, int> v_at;  // vertex -> virtual
  std::vector<int> where = place;
  for (int v = 0; v < n; ++v) v_at[place[v]] = v;
  auto virtual_at = [&](int vertex) {
    auto it = v_at.find(vertex);
    if (it != v_at.end()) return it->second;
    const int id = static_cast<int>(where.size());
    where.push_back(vertex);
    v_at[vertex] = id;
    return id;
  };

  std::vector<Gate> out;  // on vertex ids
  int swaps = 0;
  for (const auto& gate : c.gates()) {
    Gate r = gate;
    if (gate.qubits.size() == 2) {
      const int a = gate.qubits[0], b = gate.qubits[1];
      if (!g.adjacent(where[a], where[b])) {
        const auto path = g.shortest_path(where[a], where[b]);
        for (size_t k = 0; k + 2 < path.size(); ++k) {
          const int x = virtual_at(path[k]), y = virtual_at(path[k + 1]);
          Gate s = make_swap(path[k], path[k + 1]);
          s.label = "route";
          out.push_back(s);
          ++swaps;
          std::swap(where[x], where[y]);
          v_at[where[x]] = x;
          v_at[where[y]] = y;
        }
      }
    }
    for (auto& q : r.qubits) q = where[q];
    out.push_back(std::move(r));
  }

  RoutedCircuit res;
  for (const auto& [vertex, v] : v_at) res.physical.push_back(vertex);
  std::map<int, int> index;
  for (int i = 0; i < static_cast<int>(res.physical.size()); ++i) index[res.physical[i]] = i;
  const Bits init = c.initial_bits();
  Bits routed_init(res.physical.size(), '0');
  for (int v = 0; v < n; ++v) {
    res.initial_layout.push_back(index[place[v]]);
    res.final_layout.push_back(index[where[v]]);
    routed_init[index[place[v]]] = init[v];
  }
  res.circuit.add_register("q", static_cast<int>(res.physical.size()), routed_init);
  for (auto& gate : out) {
    for (auto& q : gate.qubits) q = index.at(q);
    res.circuit.add(std::move(gate));
  }
  res.swaps = swaps;
  return res;
}

}  // namespace fxxz
