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

#include "fxxz/domainwall.hpp"

#include "fxxz/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace fxxz {

int VdLayout::slot(int v) const {
  const int h = n_walls / 2;
  if (v < 0 || v > n_walls) throw ValidationError("counter slot out of range");
  if (v <= h) return rc(1 + v);
  if (v == h + 1) return rc(0);
  return rr(v - h - 1);
}

void VdLayout::validate() const {
  if (n_walls < 0 || n_walls % 2 != 0) throw ValidationError("wall count must be even and non-negative");
  if (n_sites <= n_walls) throw ValidationError("need more sites than walls");
}

Circuit vd_registers(const VdLayout& layout, const std::vector<int>& walls) {
  layout.validate();
  const int n = layout.n_sites, d = layout.n_walls;
  Bits phys(n, '0');
  if (!walls.empty()) {
    if (static_cast<int>(walls.size()) != d) throw ValidationError("wall list does not match the layout");
    DomainWallConfig{walls, 0}.validate(n);
    phys = reference_walls(n, walls);
  }
  Circuit c;
  c.add_register("phys", n, phys);
  c.add_register("aux", n - d);
  c.add_register("r0", 2);
  c.add_register("rc", d / 2 + 2, "01" + Bits(d / 2, '0'));
  c.add_register("rr", d / 2 + 1, "1" + Bits(d / 2, '0'));
  return c;
}

GateBlock GateBlock::single(Gate g) {
  GateBlock b;
  b.leaf.push_back(std::move(g));
  return b;
}

namespace {

void flatten_into(const GateBlock& b, std::vector<Gate>& out) {
  if (!b.leaf.empty()) {
    out.push_back(b.leaf.front());
    return;
  }
  out.insert(out.end(), b.pre.begin(), b.pre.end());
  for (const auto& c : b.body) flatten_into(c, out);
  out.insert(out.end(), b.pre.rbegin(), b.pre.rend());
}

GateBlock block(std::vector<Gate> pre, std::vector<GateBlock> body) {
  GateBlock b;
  b.pre = std::move(pre);
  b.body = std::move(body);
  return b;
}

// Test "site i holds val": a qubit with a negation flag, or a constant for
// the boundary sites 0 and N + 1, which hold 0.
struct SiteTest {
  bool constant = false;
  bool value = false;
  int qubit = -1;
  bool negated = false;
};

SiteTest site_is(const VdLayout& l, int i, int val) {
  if (i < 1 || i > l.n_sites) return {true, val == 0};
  return {false, false, l.phys(i), val == 0};
}

// AND of the tests computed into the workspace chain. Returns nullopt when a
// test is constantly false; control -1 means constantly true.
struct Conjunction {
  std::vector<Gate> pre;
  int control = -1;
};

std::optional<Conjunction> conjoin(const std::vector<SiteTest>& tests, const std::array<int, 2>& ws) {
  std::vector<SiteTest> qs;
  for (const auto& t : tests) {
    if (t.constant) {
      if (!t.value) return std::nullopt;
      continue;
    }
    qs.push_back(t);
  }
  Conjunction out;
  for (const auto& t : qs)
    if (t.negated) out.pre.push_back(make_x(t.qubit));
  if (qs.empty()) return out;
  if (qs.size() == 1) {
    out.control = qs[0].qubit;
    return out;
  }
  out.pre.push_back(make_toffoli(qs[0].qubit, qs[1].qubit, ws[0]));
  int cur = ws[0];
  for (size_t k = 2; k < qs.size(); ++k) {
    out.pre.push_back(make_toffoli(cur, qs[k].qubit, ws[k - 1]));
    cur = ws[k - 1];
  }
  out.control = cur;
  return out;
}

struct StageRange {
  int kmin, k1, k0;
};

StageRange stage_range(const VdLayout& l, int n) {
  const int N = l.n_sites, D = l.n_walls;
  return {std::max(0, D - 1 - (N - D - n)), std::min(D, n - 1), std::min(D, n + 1)};
}

void check_stage(const VdLayout& l, int n) {
  l.validate();
  if (n < 1 || n > l.aux_size()) throw ValidationError("stage index out of range");
}

}  // namespace

std::vector<Gate> flatten(const std::vector<GateBlock>& blocks) {
  std::vector<Gate> out;
  for (const auto& b : blocks) flatten_into(b, out);
  return out;
}

Gate build_move(int site, const VdLayout& layout, int control) {
  if (site < 1 || site + 2 > layout.n_sites) throw ValidationError("move outside the chain");
  return make_cswap(control, layout.phys(site), layout.phys(site + 2));
}

std::vector<GateBlock> build_count_setup(const VdLayout& l) {
  l.validate();
  const int D = l.n_walls;
  if (D == 0) return {};
  return {GateBlock::single(make_x(l.slot(0))), GateBlock::single(make_x(l.slot(D))),
          GateBlock::single(make_cswap(l.phys(l.n_sites), l.slot(D - 1), l.slot(D)))};
}

std::vector<GateBlock> build_relocation_stage(int n, const VdLayout& l) {
  check_stage(l, n);
  const int N = l.n_sites, D = l.n_walls;
  const int a = l.aux(n);
  const std::array<int, 2> ws{l.r0(0), l.r0(1)};
  const auto [kmin, k1, k0] = stage_range(l, n);
  std::vector<GateBlock> out;
  // wall K sits exactly at n + K - 1 with its neighbourhood undisturbed
  for (int v = std::max(1, kmin); v <= k0; ++v) {
    const auto cj = conjoin({site_is(l, n + v - 1, (v - 1) % 2), site_is(l, n + v, v % 2), site_is(l, n + v + 1, v % 2)}, ws);
    if (!cj) continue;
    auto pre = cj->pre;
    pre.push_back(make_x(a));
    if (cj->control < 0) {
      out.push_back(block(pre, {GateBlock::single(make_cswap(a, l.slot(v - 1), l.slot(v)))}));
      continue;
    }
    pre.push_back(make_toffoli(cj->control, a, l.spare()));
    out.push_back(block(pre, {GateBlock::single(make_cswap(l.spare(), l.slot(v - 1), l.slot(v)))}));
  }
  // one-hot to thermometer, then shift the prefix [1, n + K] two sites left
  std::vector<Gate> therm;
  for (int v = k1 - 1; v >= 1; --v) therm.push_back(make_cnot(l.slot(v + 1), l.slot(v)));
  std::vector<GateBlock> rot;
  for (int i = 1; i <= n - 2; ++i) rot.push_back(GateBlock::single(build_move(i, l, a)));
  for (int c = 1; c <= k1; ++c) {
    const int i = n + c - 2;
    if (i < 1 || i + 2 > N) continue;
    if (c <= kmin)
      rot.push_back(GateBlock::single(build_move(i, l, a)));
    else
      rot.push_back(block({make_toffoli(a, l.slot(c), ws[0])}, {GateBlock::single(build_move(i, l, ws[0]))}));
  }
  out.push_back(block(therm, std::move(rot)));
  (void)D;
  return out;
}

std::vector<GateBlock> build_insert(int n, const VdLayout& l) {
  check_stage(l, n);
  const int N = l.n_sites;
  const int a = l.aux(n), r = l.r0(0);
  const auto [kmin, k1, k0] = stage_range(l, n);
  (void)k0;
  std::vector<GateBlock> out;
  for (int c = kmin; c <= k1; ++c) {
    const int p = n + c;
    if (p > N) continue;
    std::vector<GateBlock> body{GateBlock::single(make_cnot(r, l.phys(p)))};
    if (p + 1 <= N && p - 1 >= 1) {
      body.push_back(GateBlock::single(make_toffoli(r, l.phys(p + 1), l.phys(p - 1))));
      body.push_back(GateBlock::single(make_toffoli(r, l.phys(p + 1), l.phys(p))));
    }
    out.push_back(block({make_toffoli(a, l.slot(c), r)}, std::move(body)));
  }
  return out;
}

std::vector<GateBlock> build_reset(int n, const VdLayout& l) {
  check_stage(l, n);
  const int N = l.n_sites;
  const int a = l.aux(n);
  const std::array<int, 2> ws{l.r0(0), l.r0(1)};
  const auto [kmin, k1, k0] = stage_range(l, n);
  (void)k0;
  std::vector<GateBlock> out;
  // an isolated flipped site at n + K
  for (int c = kmin; c <= k1; ++c) {
    const int p = n + c;
    if (p > N) continue;
    const auto cj = conjoin({site_is(l, p - 1, c % 2), site_is(l, p, 1 - c % 2), site_is(l, p + 1, c % 2)}, ws);
    if (!cj) continue;
    Gate g = cj->control < 0 ? make_cnot(l.slot(c), a) : make_toffoli(cj->control, l.slot(c), a);
    out.push_back(block(cj->pre, {GateBlock::single(g)}));
  }
  return out;
}

std::vector<GateBlock> build_count_release(const VdLayout& l) {
  l.validate();
  if (l.n_walls == 0) return {};
  const int r = l.r0(0);
  if (l.n_sites < 2) return {};
  return {block({make_toffoli(l.phys(1), l.phys(2), r)}, {GateBlock::single(make_cswap(r, l.slot(0), l.slot(1)))})};
}

std::vector<GateBlock> build_vd_blocks(const VdLayout& l) {
  l.validate();
  std::vector<GateBlock> out;
  if (l.n_walls == 0) return out;
  auto add = [&](std::vector<GateBlock> v) { std::move(v.begin(), v.end(), std::back_inserter(out)); };
  add(build_count_setup(l));
  for (int n = l.aux_size(); n >= 1; --n) {
    add(build_relocation_stage(n, l));
    add(build_insert(n, l));
    add(build_reset(n, l));
  }
  add(build_count_release(l));
  return out;
}

namespace {

using State = std::vector<std::uint8_t>;

State to_state(const Bits& b) {
  State s(b.size());
  for (size_t i = 0; i < b.size(); ++i) s[i] = b[i] == '1';
  return s;
}

Bits to_bits(const State& s) {
  Bits b(s.size(), '0');
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i]) b[i] = '1';
  return b;
}

// Returns whether the gate changed the state.
bool apply_bit(const Gate& g, State& s) {
  const auto& q = g.qubits;
  switch (g.kind) {
    case GateKind::X:
      s[q[0]] ^= 1;
      return true;
    case GateKind::CNOT:
      if (!s[q[0]]) return false;
      s[q[1]] ^= 1;
      return true;
    case GateKind::Toffoli:
      if (!(s[q[0]] && s[q[1]])) return false;
      s[q[2]] ^= 1;
      return true;
    case GateKind::SWAP:
      if (s[q[0]] == s[q[1]]) return false;
      std::swap(s[q[0]], s[q[1]]);
      return true;
    case GateKind::CSWAP:
      if (!s[q[0]] || s[q[1]] == s[q[2]]) return false;
      std::swap(s[q[1]], s[q[2]]);
      return true;
    default:
      throw ValidationError("non-classical gate in a classical trace");
  }
}

void walk(const std::vector<GateBlock>& blocks, State& s, std::vector<int>& path, std::set<std::vector<int>>& used) {
  for (size_t i = 0; i < blocks.size(); ++i) {
    path.push_back(static_cast<int>(i));
    const auto& b = blocks[i];
    if (!b.leaf.empty()) {
      if (apply_bit(b.leaf.front(), s)) used.insert(path);
    } else {
      for (const auto& g : b.pre) apply_bit(g, s);
      walk(b.body, s, path, used);
      for (auto it = b.pre.rbegin(); it != b.pre.rend(); ++it) apply_bit(*it, s);
    }
    path.pop_back();
  }
}

std::vector<GateBlock> rebuild(const std::vector<GateBlock>& blocks, std::vector<int>& path,
                               const std::set<std::vector<int>>& used) {
  std::vector<GateBlock> out;
  for (size_t i = 0; i < blocks.size(); ++i) {
    path.push_back(static_cast<int>(i));
    const auto& b = blocks[i];
    if (!b.leaf.empty()) {
      if (used.count(path)) out.push_back(b);
    } else {
      auto body = rebuild(b.body, path, used);
      if (!body.empty()) out.push_back(block(b.pre, std::move(body)));
    }
    path.pop_back();
  }
  return out;
}

void wall_sets(int n, int d, int lo, int first, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (static_cast<int>(cur.size()) == d) {
    f(cur);
    return;
  }
  for (int w = first; w <= n; ++w) {
    if (cur.empty() && w < lo) continue;
    cur.push_back(w);
    wall_sets(n, d, lo, w + 2, cur, f);
    cur.pop_back();
  }
}

}  // namespace

std::vector<GateBlock> prune_blocks(const std::vector<GateBlock>& blocks, const std::vector<Bits>& inputs) {
  std::set<std::vector<int>> used;
  std::vector<int> path;
  for (const auto& in : inputs) {
    State s = to_state(in);
    walk(blocks, s, path, used);
  }
  return rebuild(blocks, path, used);
}

std::vector<VdCase> vd_cases(const VdLayout& l, int max_magnons) {
  l.validate();
  const int N = l.n_sites, D = l.n_walls;
  const Circuit regs = vd_registers(l);
  const Bits base = regs.initial_bits();
  std::vector<VdCase> out;
  for (int m = 1; max_magnons < 0 || m <= max_magnons; ++m) {
    const int n0 = N + 1 - m - D;
    if (n0 < m) break;
    std::vector<int> cur;
    wall_sets(N, D, 2 * m, 1, cur, [&](const std::vector<int>& walls) {
      const Bits phys = reference_walls(N, walls);
      for (const auto& x : combinations(n0, m)) {
        VdCase c{base, base};
        c.input.replace(0, N, phys);
        for (int a = 0; a < m; ++a) c.input[l.aux(x[a] + a)] = '1';
        c.expected.replace(0, N, domainwall_relocate(x, DomainWallConfig{walls, m}, N));
        out.push_back(std::move(c));
      }
    });
  }
  return out;
}

Circuit build_vd(const VdLayout& l, const std::vector<int>& walls, const VdOptions& opt) {
  Circuit c = vd_registers(l, walls);
  auto blocks = build_vd_blocks(l);
  if (opt.prune && !blocks.empty()) {
    const auto cases = vd_cases(l);
    if (static_cast<long long>(cases.size()) <= opt.prune_limit) {
      std::vector<Bits> inputs;
      inputs.reserve(cases.size());
      for (const auto& k : cases) inputs.push_back(k.input);
      blocks = prune_blocks(blocks, inputs);
    }
  }
  c.append_gates(flatten(blocks));
  return c;
}

VdBounds vd_gate_bounds(int n_sites, int n_walls) {
  const double N = n_sites, D = n_walls;
  VdBounds b;
  b.cnot = (N - D - 1) * (3.5 * D + 3 * N - 15) + (N - D) * D + 2 + 4 * (N - D - 1) + 2;
  b.toffoli = (N - D - 1) * (5 * D + 4 * N - 17) + (N - D - 1) * (D + 4) + D + 2 + 2 * (N * N - 7 * N + 5) +
              D * (7 * N - 9 * D + 3);
  b.cswap = (N - D) * (2 * D * D + D * N - 7 * D + 4) / 4 + D * (N * N + 5 * N - D * N - 6 * D - 6) / 8;
  return b;
}

// ---- two walls, one magnon ----

namespace {

struct D2Regs {
  int n;
  int phys(int i) const { return i - 1; }
  int aux(int k) const { return n + k - 1; }
  int w() const { return 2 * n - 2; }
  int rc(int i) const { return 2 * n - 1 + i; }
  int size() const { return 2 * n + 1; }
};

struct D2Input {
  int d1, d2, m;
  State s;
};

using Literal = std::pair<int, std::uint8_t>;  // qubit, required value
using Term = std::vector<Literal>;

bool holds(const State& s, const Term& t) {
  for (const auto& [q, v] : t)
    if (s[q] != v) return false;
  return true;
}

// Smallest conjunction equal to `want` on every sample.
std::optional<Term> synth_single(const std::vector<const State*>& states, const std::vector<bool>& want,
                                 const std::vector<Literal>& lits, int max_size) {
  const int L = static_cast<int>(lits.size());
  std::optional<Term> found;
  std::function<bool(int, Term&, int)> rec = [&](int start, Term& t, int size) -> bool {
    if (static_cast<int>(t.size()) == size) {
      for (size_t i = 0; i < states.size(); ++i)
        if (holds(*states[i], t) != want[i]) return false;
      found = t;
      return true;
    }
    for (int k = start; k < L; ++k) {
      bool clash = false;
      for (const auto& [q, v] : t) clash = clash || q == lits[k].first;
      if (clash) continue;
      t.push_back(lits[k]);
      if (rec(k + 1, t, size)) return true;
      t.pop_back();
    }
    return false;
  };
  for (int size = 0; size <= max_size; ++size) {
    Term t;
    if (rec(0, t, size)) return found;
  }
  return std::nullopt;
}

// Two conjunctions that never hold together and whose union is `want`.
std::optional<std::vector<Term>> synth_pair(const std::vector<const State*>& states, const std::vector<bool>& want,
                                            const std::vector<Literal>& lits, int max_size) {
  std::vector<size_t> pos;
  for (size_t i = 0; i < states.size(); ++i)
    if (want[i]) pos.push_back(i);
  struct Cand {
    Term t;
    std::vector<bool> cover;
  };
  std::vector<Cand> cands;
  std::function<void(int, Term&, int)> rec = [&](int start, Term& t, int size) {
    if (static_cast<int>(t.size()) == size) {
      for (size_t i = 0; i < states.size(); ++i)
        if (!want[i] && holds(*states[i], t)) return;
      Cand c{t, std::vector<bool>(pos.size())};
      bool any = false;
      for (size_t j = 0; j < pos.size(); ++j) any |= c.cover[j] = holds(*states[pos[j]], t);
      if (any) cands.push_back(std::move(c));
      return;
    }
    for (int k = start; k < static_cast<int>(lits.size()); ++k) {
      bool clash = false;
      for (const auto& [q, v] : t) clash = clash || q == lits[k].first;
      if (clash) continue;
      t.push_back(lits[k]);
      rec(k + 1, t, size);
      t.pop_back();
    }
  };
  for (int size = 1; size <= max_size; ++size) {
    Term t;
    rec(0, t, size);
  }
  std::optional<std::vector<Term>> best;
  size_t best_cost = 0;
  for (size_t i = 0; i < cands.size(); ++i)
    for (size_t j = i + 1; j < cands.size(); ++j) {
      bool ok = true;
      for (size_t k = 0; k < pos.size() && ok; ++k) ok = cands[i].cover[k] != cands[j].cover[k];
      const size_t cost = cands[i].t.size() + cands[j].t.size();
      if (ok && (!best || cost < best_cost)) {
        best = std::vector<Term>{cands[i].t, cands[j].t};
        best_cost = cost;
      }
    }
  return best;
}

void emit_term(std::vector<Gate>& out, const Term& t, int target, int work, const std::string& label) {
  std::vector<Gate> g;
  for (const auto& [q, v] : t)
    if (!v) g.push_back(make_x(q));
  const size_t nx = g.size();
  switch (t.size()) {
    case 0:
      g.push_back(make_x(target));
      break;
    case 1:
      g.push_back(make_cnot(t[0].first, target));
      break;
    case 2:
      g.push_back(make_toffoli(t[0].first, t[1].first, target));
      break;
    case 3:
      g.push_back(make_toffoli(t[0].first, t[1].first, work));
      g.push_back(make_toffoli(work, t[2].first, target));
      g.push_back(make_toffoli(t[0].first, t[1].first, work));
      break;
    default:
      throw std::logic_error("term too wide");
  }
  for (size_t k = 0; k < nx; ++k) g.push_back(g[k]);
  for (auto& x : g) {
    x.label = label;
    out.push_back(std::move(x));
  }
}

struct Update {
  int target;
  std::function<bool(const D2Input&, const State&)> flip;
  const char* module;
};

}  // namespace

Circuit build_vd_d2(int N, const std::vector<int>& walls) {
  if (walls.size() != 2) throw ValidationError("the two-wall circuit needs exactly two walls");
  if (N < 4) throw ValidationError("the two-wall circuit needs at least four sites");
  DomainWallConfig{walls, 1}.validate(N);
  const D2Regs R{N};
  Circuit c;
  c.add_register("phys", N, reference_walls(N, walls));
  c.add_register("aux", N - 2);
  c.add_register("w", 1);
  c.add_register("rc", 2);

  std::vector<D2Input> inputs;
  for (int d1 = 2; d1 <= N; ++d1)
    for (int d2 = d1 + 2; d2 <= N; ++d2)
      for (int m = 1; m <= N - 2; ++m) {
        D2Input in{d1, d2, m, to_state(Bits(R.size(), '0'))};
        const Bits ref = reference_walls(N, {d1, d2});
        for (int i = 0; i < N; ++i) in.s[i] = ref[i] == '1';
        in.s[R.aux(m)] = 1;
        inputs.push_back(std::move(in));
      }

  std::vector<Gate> gates;
  for (int n = N - 2; n >= 1; --n) {
    auto k_of = [n](const D2Input& in) { return int(in.d1 <= n) + int(in.d2 <= n + 1); };
    std::vector<Update> ups;
    ups.push_back({R.rc(0), [n](const D2Input& in, const State&) { return in.m == n && in.d1 <= n; }, "red"});
    for (int i = 1; i <= n; ++i)
      ups.push_back({R.phys(i),
                     [n, i](const D2Input& in, const State&) {
                       return in.m == n && in.d1 <= n && (i == in.d1 - 1 || i == in.d1);
                     },
                     "red"});
    ups.push_back({R.rc(1), [n](const D2Input& in, const State&) { return in.m == n && in.d2 <= n + 1; }, "green"});
    for (int i = 1; i <= std::min(N, n + 1); ++i)
      ups.push_back({R.phys(i),
                     [n, i](const D2Input& in, const State&) {
                       return in.m == n && in.d2 <= n + 1 && (i == in.d2 - 1 || i == in.d2);
                     },
                     "green"});
    for (int i = n; i <= std::min(N, n + 2); ++i)
      ups.push_back({R.phys(i), [n, i, k_of](const D2Input& in, const State&) { return in.m == n && n + k_of(in) == i; },
                     "insert"});
    for (int t : {R.rc(1), R.rc(0), R.aux(n)})
      ups.push_back({t, [t](const D2Input&, const State& s) { return s[t] == 1; }, "reset"});

    for (const auto& u : ups) {
      std::vector<const State*> states;
      std::vector<bool> want;
      bool any = false;
      for (const auto& in : inputs) {
        states.push_back(&in.s);
        want.push_back(u.flip(in, in.s));
        any = any || want.back();
      }
      if (!any) continue;
      std::set<int> sites;
      for (int o = -3; o <= 4; ++o) sites.insert(n + o);
      if (u.target < N)
        for (int o = -2; o <= 2; ++o) sites.insert(u.target + 1 + o);
      std::vector<Literal> lits;
      for (int i : sites)
        if (i >= 1 && i <= N && R.phys(i) != u.target) {
          lits.push_back({R.phys(i), 1});
          lits.push_back({R.phys(i), 0});
        }
      for (int q : {R.aux(n), R.rc(0), R.rc(1)})
        if (q != u.target) {
          lits.push_back({q, 1});
          lits.push_back({q, 0});
        }
      std::vector<Term> terms;
      if (auto t = synth_single(states, want, lits, 3))
        terms.push_back(*t);
      else if (auto p = synth_pair(states, want, lits, 3))
        terms = *p;
      else
        throw ValidationError("no two-wall circuit found for N = " + std::to_string(N));
      const std::string label = std::string(u.module) + ":" + std::to_string(n);
      for (const auto& t : terms) emit_term(gates, t, u.target, R.w(), label);
      for (size_t i = 0; i < inputs.size(); ++i)
        if (want[i]) inputs[i].s[u.target] ^= 1;
    }
  }
  c.append_gates(gates);
  return c;
}

std::array<Bits, 4> vd_d2_trace(const Circuit& circuit, int N, int n) {
  if (n < 1 || n > N - 2) throw ValidationError("stage index out of range");
  const D2Regs R{N};
  State s = to_state(circuit.initial_bits());
  if (static_cast<int>(s.size()) != R.size()) throw ValidationError("not a two-wall circuit");
  s[R.aux(n)] = 1;
  auto snap = [&] { return to_bits(State(s.begin(), s.begin() + N)) + char('0' + s[R.rc(0)]) + char('0' + s[R.rc(1)]); };
  // key of a gate: (stage descending, module order)
  auto key = [](const Gate& g) {
    const auto colon = g.label.find(':');
    const std::string mod = g.label.substr(0, colon);
    const int stage = std::stoi(g.label.substr(colon + 1));
    const int order = mod == "red" ? 0 : mod == "green" ? 1 : mod == "insert" ? 2 : 3;
    return std::pair{-stage, order};
  };
  std::array<Bits, 4> out;
  size_t next = 0;
  const auto& gates = circuit.gates();
  for (int col = 0; col < 4; ++col) {
    const std::pair<int, int> limit{-n, col - 1};
    while (next < gates.size() && key(gates[next]) <= limit) apply_bit(gates[next++], s);
    out[col] = snap();
  }
  return out;
}

}  // namespace fxxz
