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

#include "fxxz/abc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace fxxz {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

double minor_det(const Eigen::MatrixXcd& c, int a) {
  if (a == 0) return 1.0;
  const double d = c.topLeftCorner(a, a).determinant().real();
  if (d < 1e-14) throw ValidationError("singular Gram minor (coincident momenta?)");
  return d;
}

cplx replaced_minor(Eigen::MatrixXcd c, int a) {
  c.row(a - 1).setOnes();
  return c.topLeftCorner(a, a).determinant();
}

size_t index_of(const Bits& b) {
  size_t i = 0;
  for (char ch : b) i = (i << 1) | static_cast<size_t>(ch == '1');
  return i;
}

}  // namespace

DoubledMomenta DoubledMomenta::from(const std::vector<double>& p) {
  DoubledMomenta d;
  for (double pa : p) {
    d.q.push_back(pa);
    d.q.push_back(-pa);
  }
  for (double qa : d.q) d.y.push_back(std::exp(kI * qa));
  for (size_t a = 0; a < d.y.size(); ++a)
    for (size_t b = 0; b < a; ++b)
      if (std::abs(d.y[a] - d.y[b]) < 1e-12) throw ValidationError("coincident doubled momenta");
  return d;
}

Eigen::MatrixXcd gram_matrix(int k, const DoubledMomenta& dm, int order) {
  if (k < 0) throw ValidationError("gram_matrix needs k >= 0");
  const int L = order < 0 ? std::min(k, dm.size()) : order;
  if (L > dm.size()) throw ValidationError("gram order exceeds number of momenta");
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(L, L);
  for (int step = 0; step < k; ++step)
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b) c(a, b) = std::conj(dm.y[a]) * dm.y[b] * c(a, b) + 1.0;
  return c;
}

MatchgateParams matchgate_params(int k, int a, const DoubledMomenta& dm) {
  const int L = std::min(k, dm.size());
  if (a < 1 || a > L) throw ValidationError("matchgate index out of range");
  const int L1 = std::min(k + 1, dm.size());
  const Eigen::MatrixXcd ck = gram_matrix(k, dm, L1);
  const Eigen::MatrixXcd ck1 = gram_matrix(k + 1, dm, L1);
  cplx pre = (a % 2 == 1) ? 1.0 : -1.0;
  for (int b = 0; b < a - 1; ++b) pre /= std::conj(dm.y[b]);
  MatchgateParams m;
  m.u = pre * replaced_minor(ck1, a) / std::sqrt(minor_det(ck, a - 1) * minor_det(ck1, a));
  m.v = dm.y[a - 1] *
        std::sqrt(minor_det(ck, a) * minor_det(ck1, a - 1) / (minor_det(ck, a - 1) * minor_det(ck1, a)));
  return m;
}

cplx phase_factor(int k, const DoubledMomenta& dm) {
  if (k < 1 || k >= dm.size()) throw ValidationError("phase gate needs 1 <= k < 2M");
  cplx r = 1.0;
  for (int a = 0; a < k; ++a) {
    const cplx den = std::conj(dm.y[k]) - std::conj(dm.y[a]);
    if (std::abs(den) < 1e-14) throw ValidationError("momentum collision in phase gate");
    r *= std::sqrt((dm.y[k] - dm.y[a]) / den);
  }
  return r;
}

Gate phase_gate(int k, const DoubledMomenta& dm, int qubit) {
  return make_phase(qubit, std::arg(phase_factor(k, dm)));
}

std::vector<Gate> build_pk(int k, const DoubledMomenta& dm, int first) {
  const int L = std::min(k, dm.size());
  const int L1 = std::min(k + 1, dm.size());
  std::vector<Gate> out;
  if (L1 > L) out.push_back(phase_gate(k, dm, first + L));
  for (int a = L; a >= 1; --a) {
    const auto m = matchgate_params(k, a, dm);
    const double n = std::sqrt(std::norm(m.u) + std::norm(m.v));
    out.push_back(make_matchgate(first + a - 1, first + a, m.u / n, m.v / n));
  }
  return out;
}

std::vector<Gate> build_staircase(const DoubledMomenta& dm, int n0) {
  std::vector<Gate> out;
  if (dm.size() == 0) return out;
  for (int k = n0 - 1; k >= 1; --k) {
    const auto layer = build_pk(k, dm, n0 - 1 - k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<cplx> to_dense(const Amplitudes& a, int n) {
  std::vector<cplx> v(size_t{1} << n);
  for (const auto& [b, c] : a) {
    if (static_cast<int>(b.size()) != n) throw ValidationError("state length mismatch");
    v[index_of(b)] = c;
  }
  return v;
}

Amplitudes from_dense(const std::vector<cplx>& v, int n, double cutoff) {
  Amplitudes a;
  for (size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > cutoff) a[bits_of(i, n)] = v[i];
  return a;
}

std::vector<cplx> run_gates(const std::vector<Gate>& gates, const Bits& init) {
  const int n = static_cast<int>(init.size());
  std::vector<cplx> s(size_t{1} << n);
  s[index_of(init)] = 1.0;
  for (const auto& g : gates) apply_gate(s, n, g);
  return s;
}

Amplitudes target_boundary_state(const MomentumSet& ms) {
  ms.validate();
  const int m = static_cast<int>(ms.modes.size());
  const int n0 = ms.n0;
  if (n0 < 2 * m) throw ValidationError("boundary state needs n0 >= 2M");
  if (m == 0) return {{"", 1.0}};
  const auto dm = DoubledMomenta::from(ms.momenta());
  Circuit stair;
  stair.add_register("phys", n0);
  stair.append_gates(build_staircase(dm, n0));
  const Circuit back = inverse(stair);
  std::vector<cplx> s = to_dense(normalized(xx_open_eigenstate(ms)), n0);
  for (const auto& g : back.gates()) apply_gate(s, n0, g);
  const size_t low = size_t{1} << (n0 - 2 * m);
  double outside = 0.0;
  Amplitudes out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i % low != 0) {
      outside += std::norm(s[i]);
    } else if (std::abs(s[i]) > 1e-14) {
      out[bits_of(i / low, 2 * m)] = s[i];
    }
  }
  if (outside > 1e-8) throw ValidationError("boundary state leaks outside the first 2M qubits");
  return normalized(out);
}

// ---------------------------------------------------------------- boundary

int boundary_gate_count(int magnons) {
  if (magnons <= 2) return 2 * magnons - 1;
  return (magnons - 2) * (2 * magnons + 1);
}

std::vector<std::pair<int, int>> boundary_layout(int magnons, int extra_layers) {
  std::vector<std::pair<int, int>> out;
  const int n = 2 * magnons;
  if (magnons <= 0) return out;
  if (magnons == 1) {
    out.push_back({0, 1});
    return out;
  }
  const int base = boundary_gate_count(magnons);
  int parity = 1;
  while (static_cast<int>(out.size()) < base) {
    for (int i = parity; i + 1 < n && static_cast<int>(out.size()) < base; i += 2) out.push_back({i, i + 1});
    parity ^= 1;
  }
  // continue the brick after a possibly truncated layer
  for (int e = 0; e < extra_layers; ++e) {
    for (int i = parity; i + 1 < n; i += 2) out.push_back({i, i + 1});
    parity ^= 1;
  }
  return out;
}

namespace {

struct Block {
  cplx u, v;
};

Gate block_gate(int a, int b, const Block& w) { return make_matchgate(a, b, w.u, w.v); }
Gate block_gate_dag(int a, int b, const Block& w) { return make_matchgate(a, b, std::conj(w.u), -w.v); }

double infidelity(const std::vector<cplx>& t, const std::vector<cplx>& s) {
  cplx ov = 0.0;
  for (size_t i = 0; i < t.size(); ++i) ov += std::conj(t[i]) * s[i];
  return 1.0 - std::norm(ov);
}

// Best local block given forward state s and back-propagated target t.
Block optimal_block(const std::vector<cplx>& s, const std::vector<cplx>& t, int n, int qa, int qb) {
  const size_t ba = size_t{1} << (n - 1 - qa), bb = size_t{1} << (n - 1 - qb);
  cplx c0 = 0.0, e[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (size_t i = 0; i < s.size(); ++i) {
    if (i & (ba | bb)) continue;
    const size_t i01 = i | bb, i10 = i | ba, i11 = i | ba | bb;
    c0 += std::conj(t[i]) * s[i] + std::conj(t[i11]) * s[i11];
    const size_t blk[2] = {i01, i10};
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) e[x][y] += std::conj(t[blk[x]]) * s[blk[y]];
  }
  const cplx w[4] = {e[0][0] + e[1][1], -kI * e[0][0] + kI * e[1][1], e[0][1] - e[1][0], kI * e[0][1] + kI * e[1][0]};
  // Re(exp(-ig) z) = cos g Re z + sin g Im z
  double A = 0.0, B = 0.0, C = 0.0;
  for (const cplx& wi : w) {
    A += wi.real() * wi.real();
    B += wi.real() * wi.imag();
    C += wi.imag() * wi.imag();
  }
  auto value = [&](double g) {
    const double c = std::cos(g), s = std::sin(g);
    const double q = A * c * c + 2 * B * c * s + C * s * s;
    return c * c0.real() + s * c0.imag() + std::sqrt(std::max(q, 0.0));
  };
  double best = -1e300, bg = 0.0;
  const int grid = 96;
  for (int i = 0; i < grid; ++i) {
    const double g = 2 * kPi * i / grid;
    const double f = value(g);
    if (f > best) {
      best = f;
      bg = g;
    }
  }
  double lo = bg - 2 * kPi / grid, hi = bg + 2 * kPi / grid;
  for (int it = 0; it < 70; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (value(m1) < value(m2))
      lo = m1;
    else
      hi = m2;
  }
  const double g = 0.5 * (lo + hi), c = std::cos(g), sn = std::sin(g);
  double x[4];
  for (int i = 0; i < 4; ++i) x[i] = c * w[i].real() + sn * w[i].imag();
  const double nn = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  if (nn < 1e-300) return {1.0, 0.0};
  return {cplx{x[0], x[1]} / nn, cplx{x[2], x[3]} / nn};
}

double optimize(std::vector<Block>& w, const std::vector<std::pair<int, int>>& lay, const std::vector<cplx>& target,
                const std::vector<cplx>& init, int n, int max_sweeps) {
  const size_t g = lay.size();
  std::vector<std::vector<cplx>> back(g);
  double inf = 1.0, checkpoint = 1.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    back[g - 1] = target;
    for (size_t j = g - 1; j > 0; --j) {
      back[j - 1] = back[j];
      apply_gate(back[j - 1], n, block_gate_dag(lay[j].first, lay[j].second, w[j]));
    }
    std::vector<cplx> s = init;
    for (size_t j = 0; j < g; ++j) {
      w[j] = optimal_block(s, back[j], n, lay[j].first, lay[j].second);
      apply_gate(s, n, block_gate(lay[j].first, lay[j].second, w[j]));
    }
    inf = infidelity(target, s);
    if (inf < 1e-13) break;
    if (sweep % 100 == 99) {
      if (inf > 0.98 * checkpoint) break;
      checkpoint = inf;
    }
  }
  return std::max(inf, 0.0);
}

}  // namespace

BoundaryCircuit synthesize_boundary(const Amplitudes& target, int magnons, const BoundaryOptions& opt) {
  BoundaryCircuit out;
  if (magnons == 0) {
    out.infidelity = 0.0;
    return out;
  }
  const int n = 2 * magnons;
  Bits init;
  for (int a = 0; a < magnons; ++a) init += "10";
  const std::vector<cplx> t = to_dense(normalized(target), n);
  std::vector<cplx> s0(t.size());
  s0[index_of(init)] = 1.0;

  auto emit = [&](const std::vector<std::pair<int, int>>& lay, const std::vector<Block>& w) {
    out.gates.clear();
    for (size_t j = 0; j < lay.size(); ++j) {
      const Gate g = block_gate(lay[j].first, lay[j].second, w[j]);
      out.gates.push_back(make_unitary(g.qubits, g.matrix(), "B"));
    }
  };

  if (magnons == 1) {
    const cplx a = t[index_of("10")], b = t[index_of("01")];
    const double nn = std::sqrt(std::norm(a) + std::norm(b));
    emit({{0, 1}}, {{a / nn, b / nn}});
    out.infidelity = infidelity(t, run_gates(out.gates, init));
    return out;
  }

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal;
  double best = 2.0;
  std::vector<Block> best_w;
  std::vector<std::pair<int, int>> best_lay;
  for (int extra = 0; extra <= opt.max_extra_layers; ++extra) {
    const auto lay = boundary_layout(magnons, extra);
    for (int r = 0; r < opt.restarts; ++r) {
      std::vector<Block> w(lay.size());
      for (auto& b : w) {
        double x[4], nn = 0.0;
        for (double& xi : x) {
          xi = normal(rng);
          nn += xi * xi;
        }
        nn = std::sqrt(nn);
        b = {cplx{x[0], x[1]} / nn, cplx{x[2], x[3]} / nn};
      }
      const double inf = optimize(w, lay, t, s0, n, opt.max_sweeps);
      ++out.restarts_used;
      if (inf < best) {
        best = inf;
        best_w = w;
        best_lay = lay;
        out.extra_layers = extra;
      }
      if (best <= 1e-2 * opt.tolerance) break;
    }
    if (best <= opt.tolerance) break;
  }
  if (best > opt.tolerance) throw ValidationError("boundary synthesis did not reach tolerance");
  emit(best_lay, best_w);
  out.infidelity = infidelity(t, run_gates(out.gates, init));
  return out;
}

AbcCircuit build_abc(const MomentumSet& ms, const BoundaryOptions& opt) {
  ms.validate();
  const int m = static_cast<int>(ms.modes.size());
  if (ms.n0 < 2 * m) throw ValidationError("ABC needs n0 >= 2M");
  AbcCircuit out;
  Bits init;
  for (int a = 0; a < m; ++a) init += "10";
  init += Bits(ms.n0 - 2 * m, '0');
  out.circuit.add_register("phys", ms.n0, init);
  if (m == 0) {
    out.boundary.infidelity = 0.0;
    return out;
  }
  out.boundary = synthesize_boundary(target_boundary_state(ms), m, opt);
  out.circuit.append_gates(out.boundary.gates);
  out.circuit.append_gates(build_staircase(DoubledMomenta::from(ms.momenta()), ms.n0));
  return out;
}

}  // namespace fxxz
