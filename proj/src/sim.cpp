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


#include "fxxz/sim.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include "fxxz/oracle.hpp"

namespace fxxz {

namespace {

size_t basis_index(const Bits& b) {
  size_t i = 0;
  for (char ch : b) i = (i << 1) | (ch == '1');
  return i;
}

Bits index_bits(size_t i, int n) {
  Bits b(n, '0');
  for (int q = n - 1; q >= 0; --q, i >>= 1)
    if (i & 1) b[q] = '1';
  return b;
}

void check_qubits(int n, int limit, const char* what) {
  if (n > limit)
    throw ValidationError(std::string(what) + " supports at most " + std::to_string(limit) + " qubits, got " +
                          std::to_string(n));
}

// The same gate acting on the column half of a vectorised density matrix.
Gate column_gate(const Gate& g, int n) {
  Gate out = g;
  for (auto& q : out.qubits) q += n;
  switch (g.kind) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::SWAP:
    case GateKind::Toffoli:
    case GateKind::CSWAP:
      return out;
    case GateKind::RZ:
    case GateKind::Phase1Q:
      out.params[0] = -out.params[0];
      return out;
    default:
      return make_unitary(out.qubits, g.matrix().conjugate(), g.label);
  }
}

void depolarize2(std::vector<cplx>& v, int n, int a, int b, double lambda) {
  const int w = 2 * n;
  const size_t ra = size_t{1} << (w - 1 - a), rb = size_t{1} << (w - 1 - b);
  const size_t ca = size_t{1} << (n - 1 - a), cb = size_t{1} << (n - 1 - b);
  const size_t row[4] = {0, rb, ra, ra | rb}, col[4] = {0, cb, ca, ca | cb};
  const size_t mask = ra | rb | ca | cb;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i & mask) continue;
    cplx tr = 0.0;
    for (int s = 0; s < 4; ++s) tr += v[i | row[s] | col[s]];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        cplx& x = v[i | row[r] | col[c]];
        x *= 1.0 - lambda;
        if (r == c) x += lambda / 4.0 * tr;
      }
  }
}

void depolarize1(std::vector<cplx>& v, int n, int a, double lambda) {
  const size_t r1 = size_t{1} << (2 * n - 1 - a), c1 = size_t{1} << (n - 1 - a);
  for (size_t i = 0; i < v.size(); ++i) {
    if (i & (r1 | c1)) continue;
    const cplx tr = v[i] + v[i | r1 | c1];
    for (size_t r : {size_t{0}, r1})
      for (size_t c : {size_t{0}, c1}) {
        cplx& x = v[i | r | c];
        x *= 1.0 - lambda;
        if ((r != 0) == (c != 0)) x += lambda / 2.0 * tr;
      }
  }
}

// Noise slot: a channel applied after gate `gate` on `qubits`.
struct Slot {
  int gate;
  std::vector<int> qubits;
  double lambda;
};

std::vector<Slot> noise_slots(const Circuit& c, const NoiseModel& noise) {
  std::vector<Slot> out;
  const auto& gates = c.gates();
  std::vector<int> two;
  if (noise.lambda2 > 0) two = channel_sites(c, noise.matched_channels);
  size_t t = 0;
  for (int i = 0; i < static_cast<int>(gates.size()); ++i) {
    if (noise.lambda1 > 0 && gates[i].qubits.size() == 1) out.push_back({i, gates[i].qubits, noise.lambda1});
    for (; t < two.size() && two[t] == i; ++t) out.push_back({i, gates[i].qubits, noise.lambda2});
  }
  return out;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based uniform draw in [0, 1) for (seed, trajectory, slot, stream).
double draw(std::uint64_t seed, std::uint64_t traj, std::uint64_t slot, std::uint64_t stream) {
  const std::uint64_t h = splitmix(seed ^ splitmix(traj ^ splitmix(slot * 4 + stream)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

void apply_pauli(std::vector<cplx>& s, int n, int q, int p) {
  if (p == 0) return;
  if (p == 3 || p == 2) apply_gate(s, n, make_phase(q, std::numbers::pi));  // Z
  if (p == 1 || p == 2) apply_gate(s, n, make_x(q));                        // X, and XZ ~ Y
}

// Gate list with runs of single-qubit gates fused into 2x2 matrices and the
// noise channels interleaved.
struct Op {
  enum Kind { Apply, Mat, Noise } kind;
  Gate gate;
  int q = -1;
  std::array<cplx, 4> m{};
  int slot = -1;
};

std::vector<Op> program(const Circuit& c, const std::vector<Slot>& slots, bool fuse) {
  const int n = c.num_qubits();
  std::vector<std::optional<std::array<cplx, 4>>> pending(n);
  std::vector<Op> ops;
  auto flush = [&](int q) {
    if (!pending[q]) return;
    ops.push_back({Op::Mat, {}, q, *pending[q], -1});
    pending[q].reset();
  };
  const auto& gates = c.gates();
  size_t s = 0;
  for (int i = 0; i < static_cast<int>(gates.size()); ++i) {
    const Gate& g = gates[i];
    if (fuse && g.qubits.size() == 1) {
      const Eigen::MatrixXcd m = g.matrix();
      const int q = g.qubits[0];
      std::array<cplx, 4> cur = pending[q].value_or(std::array<cplx, 4>{1.0, 0.0, 0.0, 1.0});
      pending[q] = std::array<cplx, 4>{m(0, 0) * cur[0] + m(0, 1) * cur[2], m(0, 0) * cur[1] + m(0, 1) * cur[3],
                                       m(1, 0) * cur[0] + m(1, 1) * cur[2], m(1, 0) * cur[1] + m(1, 1) * cur[3]};
    } else {
      for (int q : g.qubits) flush(q);
      ops.push_back({Op::Apply, g, -1, {}, -1});
    }
    for (; s < slots.size() && slots[s].gate == i; ++s) {
      for (int q : slots[s].qubits) flush(q);
      ops.push_back({Op::Noise, {}, -1, {}, static_cast<int>(s)});
    }
  }
  for (int q = 0; q < n; ++q) flush(q);
  return ops;
}

void run_op(std::vector<cplx>& psi, int n, const Op& op) {
  if (op.kind == Op::Apply)
    apply_gate(psi, n, op.gate);
  else if (op.kind == Op::Mat)
    apply_1q_matrix(psi, n, op.q, op.m.data());
}

struct Event {
  int slot;
  int pauli;  // 1..4^k - 1
};

struct TrajOut {
  std::vector<double> obs;
  double fid = 0.0;
};

}  // namespace

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

StateVector run_statevector(const Circuit& c) {
  const int n = c.num_qubits();
  check_qubits(n, kMaxStatevectorQubits, "the statevector backend");
  StateVector sv{n, std::vector<cplx>(size_t{1} << n)};
  sv.amps[basis_index(c.initial_bits())] = 1.0;
  for (const auto& g : c.gates()) apply_gate(sv.amps, n, g);
  return sv;
}

Amplitudes run_sparse(const Circuit& c, double cutoff) {
  Amplitudes state{{c.initial_bits(), 1.0}};
  for (const auto& g : c.gates()) {
    const Eigen::MatrixXcd m = g.matrix();
    const int k = static_cast<int>(g.qubits.size());
    Amplitudes out;
    for (const auto& [b, a] : state) {
      int l = 0;
      for (int q : g.qubits) l = (l << 1) | (b[q] == '1');
      Bits key = b;
      for (int j = 0; j < (1 << k); ++j) {
        const cplx x = m(j, l);
        if (x == 0.0) continue;
        for (int t = 0; t < k; ++t) key[g.qubits[t]] = ((j >> (k - 1 - t)) & 1) ? '1' : '0';
        out[key] += x * a;
      }
    }
    state.clear();
    for (auto& [b, a] : out)
      if (std::abs(a) > cutoff) state.emplace(b, a);
  }
  return state;
}

void NoiseModel::validate() const {
  if (!(lambda2 >= 0 && lambda2 <= 1) || !(lambda1 >= 0 && lambda1 <= 1))
    throw ValidationError("depolarizing rates must lie in [0, 1]");
  if (backend == Backend::Trajectories && trajectories < 1) throw ValidationError("need at least one trajectory");
  if (matched_channels < 0) throw ValidationError("matched channel count must be non-negative");
}

NoiseModel parse_backend(const std::string& spec, double lambda2) {
  NoiseModel m;
  m.lambda2 = lambda2;
  if (spec == "density") {
    m.backend = Backend::Density;
  } else if (spec.rfind("traj", 0) == 0) {
    m.backend = Backend::Trajectories;
    size_t pos = spec.find(':');
    if (pos != std::string::npos) {
      const size_t next = spec.find(':', pos + 1);
      m.trajectories = std::stoi(spec.substr(pos + 1, next - pos - 1));
      if (next != std::string::npos) {
        std::string s = spec.substr(next + 1);
        if (s.rfind("seed", 0) == 0) s = s.substr(4);
        m.seed = std::stoull(s);
      }
    }
  } else {
    throw ValidationError("unknown backend '" + spec + "' (use density or traj:<count>:seed<s>)");
  }
  m.validate();
  return m;
}

std::vector<int> channel_sites(const Circuit& c, int matched) {
  std::vector<int> two;
  for (int i = 0; i < static_cast<int>(c.gates().size()); ++i)
    if (c.gates()[i].qubits.size() == 2) two.push_back(i);
  if (matched <= 0) return two;
  if (two.empty()) throw ValidationError("count-matched noise needs at least one two-qubit gate");
  std::vector<int> out(matched);
  for (int k = 0; k < matched; ++k) out[k] = two[static_cast<size_t>(k) * two.size() / matched];
  return out;
}

Observable parse_observable(const std::string& name) {
  Observable o;
  o.name = name;
  if (name == "H") {
    o.kind = Observable::Kind::H;
  } else if (name == "Q1") {
    o.kind = Observable::Kind::Q1;
  } else if (name == "Q2") {
    o.kind = Observable::Kind::Q2;
  } else {
    // "c*PAULI+c*PAULI", coefficient optional
    o.kind = Observable::Kind::Pauli;
    size_t start = 0;
    while (start < name.size()) {
      size_t end = name.find('+', start);
      if (end == std::string::npos) end = name.size();
      const std::string term = name.substr(start, end - start);
      const size_t star = term.find('*');
      const double coef = star == std::string::npos ? 1.0 : std::stod(term.substr(0, star));
      const std::string p = star == std::string::npos ? term : term.substr(star + 1);
      if (p.empty() || p.find_first_not_of("IXYZ") != std::string::npos)
        throw ValidationError("unknown observable '" + name + "' (use H, Q1, Q2 or a Pauli sum)");
      o.terms.push_back({coef, p});
      start = end + 1;
    }
  }
  return o;
}

Eigen::MatrixXcd observable_matrix(const Observable& o, int n) {
  check_qubits(n, 12, "observable_matrix");
  const size_t dim = size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const ChainSpec chain{n};
  for (size_t j = 0; j < dim; ++j) {
    const Bits full = with_boundaries(index_bits(j, n));
    switch (o.kind) {
      case Observable::Kind::H:
        for (const auto& [b, a] : hamiltonian_apply({{full, 1.0}}, chain))
          if (b.front() == '0' && b.back() == '0') m(basis_index(strip_boundaries(b)), j) += a;
        break;
      case Observable::Kind::Q1:
        m(j, j) = charge_q1(full);
        break;
      case Observable::Kind::Q2:
        m(j, j) = charge_q2(full);
        break;
      case Observable::Kind::Pauli:
        for (const auto& [coef, p] : o.terms) {
          if (static_cast<int>(p.size()) != n) throw ValidationError("Pauli string length differs from the register");
          size_t i = 0;
          cplx amp = coef;
          for (int q = 0; q < n; ++q) {
            const bool bit = (j >> (n - 1 - q)) & 1;
            bool out = bit;
            switch (p[q]) {
              case 'X':
                out = !bit;
                break;
              case 'Y':
                out = !bit;
                amp *= bit ? cplx{0, -1} : cplx{0, 1};
                break;
              case 'Z':
                if (bit) amp = -amp;
                break;
              default:
                break;
            }
            i = (i << 1) | out;
          }
          m(i, j) += amp;
        }
        break;
    }
  }
  return m;
}

Eigen::MatrixXcd reduce(const std::vector<cplx>& psi, int n, int k) {
  const Eigen::Index keep = Eigen::Index{1} << k, rest = Eigen::Index{1} << (n - k);
  using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> a(psi.data(), keep, rest);
  return a * a.adjoint();
}

Eigen::MatrixXcd reduce(const Eigen::MatrixXcd& rho, int n, int k) {
  const Eigen::Index keep = Eigen::Index{1} << k, rest = Eigen::Index{1} << (n - k);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep, keep);
  for (Eigen::Index r = 0; r < keep; ++r)
    for (Eigen::Index c = 0; c < keep; ++c)
      for (Eigen::Index e = 0; e < rest; ++e) out(r, c) += rho(r * rest + e, c * rest + e);
  return out;
}

double expval(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op) {
  if (rho.rows() != op.rows()) throw ValidationError("observable support differs from the state");
  return (rho * op).trace().real();
}

double fidelity(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw ValidationError("state dimensions differ");
  cplx s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::norm(s);
}

double fidelity(const std::vector<cplx>& pure, const Eigen::MatrixXcd& rho) {
  if (static_cast<Eigen::Index>(pure.size()) != rho.rows()) throw ValidationError("state dimensions differ");
  Eigen::Map<const Eigen::VectorXcd> v(pure.data(), pure.size());
  return std::clamp(v.dot(rho * v).real(), 0.0, 1.0);
}

double fidelity(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2) {
  if (rho1.rows() != rho2.rows()) throw ValidationError("state dimensions differ");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho1);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXcd s = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(s * rho2 * s, Eigen::EigenvaluesOnly);
  const double t = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(t * t, 0.0, 1.0);
}

std::vector<cplx> permute_qubits(const std::vector<cplx>& psi, int n, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != n || psi.size() != (size_t{1} << n)) throw ValidationError("permutation size mismatch");
  std::vector<cplx> out(psi.size());
  for (size_t i = 0; i < psi.size(); ++i) {
    size_t j = 0;
    for (int k = 0; k < n; ++k) j = (j << 1) | ((i >> (n - 1 - order[k])) & 1);
    out[j] = psi[i];
  }
  return out;
}

Eigen::MatrixXcd permute_qubits(const Eigen::MatrixXcd& rho, int n, const std::vector<int>& order) {
  const size_t dim = size_t{1} << n;
  if (static_cast<int>(order.size()) != n || static_cast<size_t>(rho.rows()) != dim)
    throw ValidationError("permutation size mismatch");
  std::vector<Eigen::Index> map(dim);
  for (size_t i = 0; i < dim; ++i) {
    size_t j = 0;
    for (int k = 0; k < n; ++k) j = (j << 1) | ((i >> (n - 1 - order[k])) & 1);
    map[i] = static_cast<Eigen::Index>(j);
  }
  Eigen::MatrixXcd out(dim, dim);
  for (size_t r = 0; r < dim; ++r)
    for (size_t c = 0; c < dim; ++c) out(map[r], map[c]) = rho(r, c);
  return out;
}

Eigen::MatrixXcd run_density(const Circuit& c, const NoiseModel& noise) {
  noise.validate();
  const int n = c.num_qubits();
  check_qubits(n, kMaxDensityQubits, "the density backend");
  const size_t dim = size_t{1} << n;
  std::vector<cplx> v(dim * dim);
  const size_t i0 = basis_index(c.initial_bits());
  v[i0 * dim + i0] = 1.0;
  const auto slots = noise_slots(c, noise);
  for (const auto& op : program(c, slots, noise.lambda1 == 0)) {
    switch (op.kind) {
      case Op::Apply:
        apply_gate(v, 2 * n, op.gate);
        apply_gate(v, 2 * n, column_gate(op.gate, n));
        break;
      case Op::Mat: {
        const cplx cm[4] = {std::conj(op.m[0]), std::conj(op.m[1]), std::conj(op.m[2]), std::conj(op.m[3])};
        apply_1q_matrix(v, 2 * n, op.q, op.m.data());
        apply_1q_matrix(v, 2 * n, op.q + n, cm);
        break;
      }
      case Op::Noise: {
        const auto& sl = slots[op.slot];
        if (sl.qubits.size() == 2)
          depolarize2(v, n, sl.qubits[0], sl.qubits[1], sl.lambda);
        else
          depolarize1(v, n, sl.qubits[0], sl.lambda);
        break;
      }
    }
  }
  using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMat>(v.data(), dim, dim);
}

NoisyResult run_noisy(const Circuit& c, const NoiseModel& noise, const NoisyOptions& opt) {
  noise.validate();
  const int n = c.num_qubits();
  const int np = opt.n_phys;
  if (np < 0 || np > n) throw ValidationError("physical register larger than the circuit");
  if (!opt.reference.empty() && opt.reference.size() != (size_t{1} << n))
    throw ValidationError("reference state dimension differs from the circuit");
  std::vector<Eigen::MatrixXcd> ops;
  for (const auto& o : opt.observables) ops.push_back(observable_matrix(o, np));
  NoisyResult res;
  const auto slots = noise_slots(c, noise);
  res.channels = static_cast<long long>(slots.size());

  if (!opt.readout.empty() && static_cast<int>(opt.readout.size()) != n)
    throw ValidationError("readout order size differs from the circuit");
  if (noise.backend == Backend::Density) {
    res.rho_full = run_density(c, noise);
    if (!opt.readout.empty()) res.rho_full = permute_qubits(res.rho_full, n, opt.readout);
    res.rho_phys = reduce(res.rho_full, n, np);
    for (const auto& op : ops) res.observables.push_back({expval(res.rho_phys, op), 0.0});
    if (!opt.reference.empty()) res.fidelity = {fidelity(opt.reference, res.rho_full), 0.0};
    return res;
  }

  check_qubits(n, kMaxStatevectorQubits, "the trajectory backend");
  if (opt.keep_full_density) check_qubits(n, kMaxDensityQubits, "keep_full_density");
  const int T = noise.trajectories;
  const size_t dim = size_t{1} << n;
  const Eigen::Index dp = Eigen::Index{1} << np;
  const Eigen::Index df = opt.keep_full_density ? static_cast<Eigen::Index>(dim) : 0;
  const auto prog = program(c, slots, noise.lambda1 == 0);
  std::vector<int> slot_op(slots.size());
  for (int i = 0; i < static_cast<int>(prog.size()); ++i)
    if (prog[i].kind == Op::Noise) slot_op[prog[i].slot] = i;
  std::vector<double> p_err(slots.size()), first_cdf(slots.size());
  double clean_prob = 1.0;
  for (size_t k = 0; k < slots.size(); ++k) {
    const int npauli = slots[k].qubits.size() == 2 ? 15 : 3;
    p_err[k] = slots[k].lambda * npauli / (npauli + 1.0);
    clean_prob *= 1.0 - p_err[k];
    first_cdf[k] = 1.0 - clean_prob;
  }

  auto measure = [&](const std::vector<cplx>& raw, TrajOut& out, Eigen::MatrixXcd& acc_phys, Eigen::MatrixXcd& acc_full) {
    const std::vector<cplx> psi = opt.readout.empty() ? raw : permute_qubits(raw, n, opt.readout);
    const Eigen::MatrixXcd r = reduce(psi, n, np);
    acc_phys += r;
    out.obs.clear();
    for (const auto& op : ops) out.obs.push_back(expval(r, op));
    if (!opt.reference.empty()) out.fid = fidelity(opt.reference, psi);
    if (opt.keep_full_density) {
      Eigen::Map<const Eigen::VectorXcd> v(psi.data(), dim);
      acc_full += v * v.adjoint();
    }
  };

  // The error-free branch has known weight clean_prob and is run once; the
  // trajectories sample the complementary branch, conditioned on an error.
  std::vector<cplx> clean_state(dim);
  clean_state[basis_index(c.initial_bits())] = 1.0;
  for (const auto& op : prog) run_op(clean_state, n, op);
  TrajOut clean;
  Eigen::MatrixXcd clean_phys = Eigen::MatrixXcd::Zero(dp, dp), clean_full = Eigen::MatrixXcd::Zero(df, df);
  measure(clean_state, clean, clean_phys, clean_full);

  const bool noisy = clean_prob < 1.0;
  constexpr int kBlock = 64;
  const int n_blocks = noisy ? (T + kBlock - 1) / kBlock : 0;
  std::vector<Eigen::MatrixXcd> block_phys(n_blocks), block_full(n_blocks);
  std::vector<TrajOut> outs(noisy ? T : 0);

  auto run_block = [&](int blk) {
    Eigen::MatrixXcd acc_phys = Eigen::MatrixXcd::Zero(dp, dp), acc_full = Eigen::MatrixXcd::Zero(df, df);
    const int t0 = blk * kBlock, t1 = std::min(T, t0 + kBlock);
    std::vector<std::vector<Event>> events(t1 - t0);
    std::vector<int> order;
    for (int t = t0; t < t1; ++t) {
      auto& ev = events[t - t0];
      const double u = draw(noise.seed, t, slots.size(), 2) * first_cdf.back();
      const int first = static_cast<int>(std::upper_bound(first_cdf.begin(), first_cdf.end(), u) - first_cdf.begin());
      for (int k = first; k < static_cast<int>(slots.size()); ++k) {
        if (k > first && draw(noise.seed, t, k, 0) >= p_err[k]) continue;
        const int npauli = slots[k].qubits.size() == 2 ? 15 : 3;
        ev.push_back({k, 1 + std::min(npauli - 1, static_cast<int>(draw(noise.seed, t, k, 1) * npauli))});
      }
      order.push_back(t);
    }
    auto first_op = [&](int t) { return slot_op[events[t - t0].front().slot]; };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return first_op(a) < first_op(b); });
    std::vector<cplx> base(dim), psi;
    base[basis_index(c.initial_bits())] = 1.0;
    int done = 0;
    for (int t : order) {
      const auto& ev = events[t - t0];
      const int f = first_op(t);
      for (; done < f; ++done) run_op(base, n, prog[done]);
      psi = base;
      size_t e = 0;
      for (int i = f; i < static_cast<int>(prog.size()); ++i) {
        const Op& op = prog[i];
        if (op.kind != Op::Noise) {
          run_op(psi, n, op);
          continue;
        }
        if (e >= ev.size() || ev[e].slot != op.slot) continue;
        const auto& q = slots[op.slot].qubits;
        if (q.size() == 2) {
          apply_pauli(psi, n, q[0], ev[e].pauli / 4);
          apply_pauli(psi, n, q[1], ev[e].pauli % 4);
        } else {
          apply_pauli(psi, n, q[0], ev[e].pauli);
        }
        ++e;
      }
      measure(psi, outs[t], acc_phys, acc_full);
    }
    block_phys[blk] = std::move(acc_phys);
    block_full[blk] = std::move(acc_full);
  };

  const int workers = std::max(1, std::min<int>(n_blocks, static_cast<int>(std::thread::hardware_concurrency())));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int b = next++; b < n_blocks; b = next++) run_block(b);
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const double w_err = noisy ? 1.0 - clean_prob : 0.0;
  res.trajectories = T;
  Eigen::MatrixXcd sum_phys = Eigen::MatrixXcd::Zero(dp, dp), sum_full = Eigen::MatrixXcd::Zero(df, df);
  for (int b = 0; b < n_blocks; ++b) {
    sum_phys += block_phys[b];
    if (opt.keep_full_density) sum_full += block_full[b];
  }
  res.rho_phys = (1.0 - w_err) * clean_phys + (noisy ? w_err / T : 0.0) * sum_phys;
  if (opt.keep_full_density) res.rho_full = (1.0 - w_err) * clean_full + (noisy ? w_err / T : 0.0) * sum_full;
  auto estimate = [&](double clean_value, auto get) {
    if (!noisy) return Estimate{clean_value, 0.0};
    double s = 0.0, s2 = 0.0;
    for (const auto& o : outs) s += get(o);
    const double mean = s / T;
    for (const auto& o : outs) s2 += (get(o) - mean) * (get(o) - mean);
    const double se = T > 1 ? std::sqrt(s2 / (T - 1) / T) : 0.0;
    return Estimate{(1.0 - w_err) * clean_value + w_err * mean, w_err * se};
  };
  for (size_t k = 0; k < ops.size(); ++k)
    res.observables.push_back(estimate(clean.obs[k], [k](const TrajOut& o) { return o.obs[k]; }));
  if (!opt.reference.empty()) res.fidelity = estimate(clean.fid, [](const TrajOut& o) { return o.fid; });
  return res;
}

}  // namespace fxxz
