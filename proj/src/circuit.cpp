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

#include "fxxz/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <json.hpp>

namespace fxxz {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

struct KindInfo {
  GateKind kind;
  const char* name;
  int arity;
};

constexpr KindInfo kKinds[] = {
    {GateKind::X, "X", 1},
    {GateKind::RZ, "RZ", 1},
    {GateKind::RX90, "RX90", 1},
    {GateKind::CNOT, "CNOT", 2},
    {GateKind::SWAP, "SWAP", 2},
    {GateKind::Toffoli, "Toffoli", 3},
    {GateKind::CSWAP, "CSWAP", 3},
    {GateKind::Matchgate, "Matchgate", 2},
    {GateKind::Phase1Q, "Phase1Q", 1},
    {GateKind::GenericUnitary, "GenericUnitary", 0},
};

double wrap_angle(double t) {
  double r = std::remainder(t, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

bool near_zero_angle(double t) { return std::abs(wrap_angle(t)) < 1e-13; }

}  // namespace

std::string kind_name(GateKind k) {
  for (const auto& e : kKinds)
    if (e.kind == k) return e.name;
  throw ValidationError("unknown gate kind");
}

GateKind kind_from_name(const std::string& name) {
  for (const auto& e : kKinds)
    if (name == e.name) return e.kind;
  throw ValidationError("unknown gate kind: " + name);
}

int kind_arity(GateKind k) {
  for (const auto& e : kKinds)
    if (e.kind == k) return e.arity;
  throw ValidationError("unknown gate kind");
}

// ---------------------------------------------------------------- gates

Gate make_x(int q) { return {GateKind::X, {q}, {}, {}}; }
Gate make_rz(int q, double theta) { return {GateKind::RZ, {q}, {theta}, {}}; }
Gate make_rx90(int q) { return {GateKind::RX90, {q}, {}, {}}; }
Gate make_cnot(int c, int t) { return {GateKind::CNOT, {c, t}, {}, {}}; }
Gate make_swap(int a, int b) { return {GateKind::SWAP, {a, b}, {}, {}}; }
Gate make_toffoli(int c1, int c2, int t) { return {GateKind::Toffoli, {c1, c2, t}, {}, {}}; }
Gate make_cswap(int c, int a, int b) { return {GateKind::CSWAP, {c, a, b}, {}, {}}; }

Gate make_matchgate(int a, int b, cplx u, cplx v) {
  return {GateKind::Matchgate, {a, b}, {u.real(), u.imag(), v.real(), v.imag()}, {}};
}

Gate make_phase(int q, double phi) { return {GateKind::Phase1Q, {q}, {phi}, {}}; }

Gate make_unitary(const std::vector<int>& qubits, const Eigen::MatrixXcd& m, const std::string& label) {
  Gate g{GateKind::GenericUnitary, qubits, {}, label};
  g.params.reserve(2 * m.size());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      g.params.push_back(m(r, c).real());
      g.params.push_back(m(r, c).imag());
    }
  return g;
}

bool Gate::is_elementary() const {
  return kind == GateKind::X || kind == GateKind::RZ || kind == GateKind::RX90 || kind == GateKind::CNOT;
}

Eigen::MatrixXcd Gate::matrix() const {
  const int k = static_cast<int>(qubits.size());
  const int dim = 1 << k;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  auto perm = [&](int a, int b) {
    m = Eigen::MatrixXcd::Identity(dim, dim);
    m(a, a) = m(b, b) = 0.0;
    m(a, b) = m(b, a) = 1.0;
  };
  switch (kind) {
    case GateKind::X:
      perm(0, 1);
      break;
    case GateKind::RZ:
      m(0, 0) = std::exp(-kI * params[0] / 2.0);
      m(1, 1) = std::exp(kI * params[0] / 2.0);
      break;
    case GateKind::RX90: {
      const double s = 1.0 / std::sqrt(2.0);
      m << s, -kI * s, -kI * s, s;
      break;
    }
    case GateKind::CNOT:
      perm(2, 3);
      break;
    case GateKind::SWAP:
      perm(1, 2);
      break;
    case GateKind::Toffoli:
      perm(6, 7);
      break;
    case GateKind::CSWAP:
      perm(5, 6);
      break;
    case GateKind::Matchgate: {
      const cplx u{params[0], params[1]}, v{params[2], params[3]};
      m(0, 0) = m(3, 3) = 1.0;
      m(1, 1) = std::conj(u);
      m(1, 2) = v;
      m(2, 1) = -std::conj(v);
      m(2, 2) = u;
      break;
    }
    case GateKind::Phase1Q:
      m(0, 0) = 1.0;
      m(1, 1) = std::exp(kI * params[0]);
      break;
    case GateKind::GenericUnitary:
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
          const size_t i = 2 * static_cast<size_t>(r * dim + c);
          m(r, c) = cplx{params[i], params[i + 1]};
        }
      break;
  }
  return m;
}

// ---------------------------------------------------------------- circuit

int Circuit::add_register(const std::string& name, int size, const Bits& init) {
  if (size <= 0) throw ValidationError("register size must be positive");
  if (has_register(name)) throw ValidationError("duplicate register " + name);
  if (name.find(':') != std::string::npos) throw ValidationError("register name may not contain ':'");
  Bits b = init.empty() ? Bits(size, '0') : init;
  if (static_cast<int>(b.size()) != size || b.find_first_not_of("01") != std::string::npos)
    throw ValidationError("bad initial state for register " + name);
  const int off = num_qubits_;
  registers_.push_back({name, size, b});
  num_qubits_ += size;
  return off;
}

bool Circuit::has_register(const std::string& name) const {
  return std::any_of(registers_.begin(), registers_.end(), [&](const Register& r) { return r.name == name; });
}

const Register& Circuit::reg(const std::string& name) const {
  for (const auto& r : registers_)
    if (r.name == name) return r;
  throw ValidationError("no register " + name);
}

int Circuit::offset(const std::string& name) const {
  int off = 0;
  for (const auto& r : registers_) {
    if (r.name == name) return off;
    off += r.size;
  }
  throw ValidationError("no register " + name);
}

int Circuit::qubit(const std::string& name, int index) const {
  const Register& r = reg(name);
  if (index < 0 || index >= r.size) throw ValidationError("qubit index out of range in " + name);
  return offset(name) + index;
}

std::string Circuit::qubit_name(int global) const {
  int off = 0;
  for (const auto& r : registers_) {
    if (global < off + r.size) return r.name + ":" + std::to_string(global - off);
    off += r.size;
  }
  throw ValidationError("qubit out of range");
}

Bits Circuit::initial_bits() const {
  Bits b;
  for (const auto& r : registers_) b += r.init;
  return b;
}

void Circuit::add(Gate g) {
  const int arity = kind_arity(g.kind);
  const int k = static_cast<int>(g.qubits.size());
  if (arity != 0 && k != arity) throw ValidationError("wrong number of qubits for " + kind_name(g.kind));
  if (k == 0) throw ValidationError("gate without qubits");
  std::set<int> seen;
  for (int q : g.qubits) {
    if (q < 0 || q >= num_qubits_) throw ValidationError("qubit outside declared registers");
    if (!seen.insert(q).second) throw ValidationError("repeated qubit in gate");
  }
  switch (g.kind) {
    case GateKind::RZ:
    case GateKind::Phase1Q:
      if (g.params.size() != 1) throw ValidationError("rotation needs one angle");
      break;
    case GateKind::Matchgate: {
      if (g.params.size() != 4) throw ValidationError("matchgate needs four parameters");
      const double n2 = g.params[0] * g.params[0] + g.params[1] * g.params[1] + g.params[2] * g.params[2] +
                        g.params[3] * g.params[3];
      if (std::abs(n2 - 1.0) > 1e-12) throw ValidationError("matchgate requires |u|^2+|v|^2 = 1");
      break;
    }
    case GateKind::GenericUnitary: {
      const size_t dim = size_t{1} << k;
      if (g.params.size() != 2 * dim * dim) throw ValidationError("unitary matrix has wrong size");
      const Eigen::MatrixXcd m = g.matrix();
      const double err = (m.adjoint() * m - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
      if (err > 1e-10) throw ValidationError("matrix is not unitary");
      break;
    }
    default:
      if (!g.params.empty()) throw ValidationError(kind_name(g.kind) + " takes no parameters");
  }
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.registers_.size() != registers_.size()) throw ValidationError("register layout mismatch");
  for (size_t i = 0; i < registers_.size(); ++i)
    if (registers_[i].name != other.registers_[i].name || registers_[i].size != other.registers_[i].size)
      throw ValidationError("register layout mismatch");
  append_gates(other.gates_);
}

void Circuit::append_gates(const std::vector<Gate>& gates) {
  for (const auto& g : gates) add(g);
}

// ---------------------------------------------------------------- kernels

namespace {

size_t bit_of(int n, int q) { return size_t{1} << (n - 1 - q); }

// Plain real arithmetic; std::complex products take a slow NaN-checking path.
inline cplx mul_add(cplx x, cplx a, cplx y, cplx b) {
  return {x.real() * a.real() - x.imag() * a.imag() + y.real() * b.real() - y.imag() * b.imag(),
          x.real() * a.imag() + x.imag() * a.real() + y.real() * b.imag() + y.imag() * b.real()};
}

void apply_1q(std::vector<cplx>& s, int n, int q, const cplx m[4]) {
  const size_t stride = bit_of(n, q);
  const size_t dim = s.size();
  for (size_t base = 0; base < dim; base += 2 * stride)
    for (size_t i = base; i < base + stride; ++i) {
      const cplx a = s[i], b = s[i + stride];
      s[i] = mul_add(m[0], a, m[1], b);
      s[i + stride] = mul_add(m[2], a, m[3], b);
    }
}

// Applies a swap of two basis indices of the gate's local space.
void apply_local_swap(std::vector<cplx>& s, int n, const std::vector<int>& qs, unsigned la, unsigned lb) {
  const int k = static_cast<int>(qs.size());
  size_t mask = 0, pa = 0, pb = 0;
  for (int j = 0; j < k; ++j) {
    const size_t b = bit_of(n, qs[j]);
    mask |= b;
    if ((la >> (k - 1 - j)) & 1u) pa |= b;
    if ((lb >> (k - 1 - j)) & 1u) pb |= b;
  }
  const size_t dim = s.size();
  for (size_t i = 0; i < dim; ++i)
    if ((i & mask) == pa) std::swap(s[i], s[(i & ~mask) | pb]);
}

void apply_dense(std::vector<cplx>& s, int n, const std::vector<int>& qs, const Eigen::MatrixXcd& m) {
  const int k = static_cast<int>(qs.size());
  const size_t ldim = size_t{1} << k;
  std::vector<size_t> offs(ldim, 0);
  size_t mask = 0;
  for (int j = 0; j < k; ++j) mask |= bit_of(n, qs[j]);
  for (size_t l = 0; l < ldim; ++l)
    for (int j = 0; j < k; ++j)
      if ((l >> (k - 1 - j)) & 1u) offs[l] |= bit_of(n, qs[j]);
  std::vector<cplx> in(ldim), out(ldim);
  const size_t dim = s.size();
  for (size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    for (size_t l = 0; l < ldim; ++l) in[l] = s[i | offs[l]];
    for (size_t r = 0; r < ldim; ++r) {
      cplx acc = 0.0;
      for (size_t c = 0; c < ldim; ++c) acc += m(r, c) * in[c];
      out[r] = acc;
    }
    for (size_t l = 0; l < ldim; ++l) s[i | offs[l]] = out[l];
  }
}

}  // namespace

void apply_1q_matrix(std::vector<cplx>& s, int n, int q, const cplx m[4]) { apply_1q(s, n, q, m); }

void apply_gate(std::vector<cplx>& s, int n, const Gate& g) {
  switch (g.kind) {
    case GateKind::X:
      apply_local_swap(s, n, g.qubits, 0, 1);
      return;
    case GateKind::CNOT:
      apply_local_swap(s, n, g.qubits, 2, 3);
      return;
    case GateKind::SWAP:
      apply_local_swap(s, n, g.qubits, 1, 2);
      return;
    case GateKind::Toffoli:
      apply_local_swap(s, n, g.qubits, 6, 7);
      return;
    case GateKind::CSWAP:
      apply_local_swap(s, n, g.qubits, 5, 6);
      return;
    case GateKind::Matchgate: {
      const cplx u{g.params[0], g.params[1]}, v{g.params[2], g.params[3]};
      const cplx cu = std::conj(u), cv = -std::conj(v);
      const size_t ba = bit_of(n, g.qubits[0]), bb = bit_of(n, g.qubits[1]);
      const size_t dim = s.size();
      for (size_t i = 0; i < dim; ++i) {
        if (i & (ba | bb)) continue;
        const cplx x = s[i | bb], y = s[i | ba];
        s[i | bb] = mul_add(cu, x, v, y);
        s[i | ba] = mul_add(cv, x, u, y);
      }
      return;
    }
    case GateKind::RZ:
    case GateKind::Phase1Q:
    case GateKind::RX90: {
      const Eigen::MatrixXcd m = g.matrix();
      const cplx a[4] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
      apply_1q(s, n, g.qubits[0], a);
      return;
    }
    default:
      apply_dense(s, n, g.qubits, g.matrix());
  }
}

Eigen::MatrixXcd dense_unitary(const Circuit& c) {
  const int n = c.num_qubits();
  if (n > 12) throw ValidationError("dense_unitary supports at most 12 qubits");
  const size_t dim = size_t{1} << n;
  Eigen::MatrixXcd u(dim, dim);
  std::vector<cplx> col(dim);
  for (size_t j = 0; j < dim; ++j) {
    std::fill(col.begin(), col.end(), cplx{});
    col[j] = 1.0;
    for (const auto& g : c.gates()) apply_gate(col, n, g);
    for (size_t i = 0; i < dim; ++i) u(i, j) = col[i];
  }
  return u;
}

Bits apply_classical(const std::vector<Gate>& gates, Bits bits) {
  const int n = static_cast<int>(bits.size());
  auto on = [&](int q) { return bits[q] == '1'; };
  for (const auto& g : gates) {
    for (int q : g.qubits)
      if (q < 0 || q >= n) throw ValidationError("gate qubit outside the basis string");
    const auto& q = g.qubits;
    switch (g.kind) {
      case GateKind::X:
        bits[q[0]] ^= 1;
        break;
      case GateKind::CNOT:
        if (on(q[0])) bits[q[1]] ^= 1;
        break;
      case GateKind::SWAP:
        std::swap(bits[q[0]], bits[q[1]]);
        break;
      case GateKind::Toffoli:
        if (on(q[0]) && on(q[1])) bits[q[2]] ^= 1;
        break;
      case GateKind::CSWAP:
        if (on(q[0])) std::swap(bits[q[1]], bits[q[2]]);
        break;
      default:
        throw ValidationError("gate " + kind_name(g.kind) + " is not a basis permutation");
    }
  }
  return bits;
}

double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, cplx* phase) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("shape mismatch");
  cplx ph = 1.0;
  for (Eigen::Index j = 0; j < b.size(); ++j)
    if (std::abs(b.data()[j]) > 1e-8) {
      ph = a.data()[j] / b.data()[j];
      ph /= std::abs(ph);
      break;
    }
  if (phase) *phase = ph;
  return (a - ph * b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------- decompositions

namespace {

// RY(x) = RX90^dag RZ(x) RX90, with RX90^dag written as X RX90 up to phase.
void emit_ry(std::vector<Gate>& out, int q, double x) {
  if (near_zero_angle(x)) return;
  out.push_back(make_rx90(q));
  out.push_back(make_rz(q, x));
  out.push_back(make_rx90(q));
  out.push_back(make_x(q));
}

void emit_rz(std::vector<Gate>& out, int q, double x) {
  if (near_zero_angle(x)) return;
  out.push_back(make_rz(q, wrap_angle(x)));
}

void emit_h(std::vector<Gate>& out, int q) {
  out.push_back(make_rz(q, kPi / 2));
  out.push_back(make_rx90(q));
  out.push_back(make_rz(q, kPi / 2));
}

}  // namespace

std::vector<Gate> decompose_toffoli(const Gate& g) {
  if (g.kind != GateKind::Toffoli) throw ValidationError("decompose_toffoli expects a Toffoli gate");
  const int a = g.qubits[0], b = g.qubits[1], t = g.qubits[2];
  const double T = kPi / 4;
  std::vector<Gate> o;
  emit_h(o, t);
  o.push_back(make_cnot(b, t));
  o.push_back(make_rz(t, -T));
  o.push_back(make_cnot(a, t));
  o.push_back(make_rz(t, T));
  o.push_back(make_cnot(b, t));
  o.push_back(make_rz(t, -T));
  o.push_back(make_cnot(a, t));
  o.push_back(make_rz(b, T));
  o.push_back(make_rz(t, T));
  emit_h(o, t);
  o.push_back(make_cnot(a, b));
  o.push_back(make_rz(a, T));
  o.push_back(make_rz(b, -T));
  o.push_back(make_cnot(a, b));
  return o;
}

std::vector<Gate> decompose_cswap(const Gate& g) {
  if (g.kind != GateKind::CSWAP) throw ValidationError("decompose_cswap expects a CSWAP gate");
  const int c = g.qubits[0], a = g.qubits[1], b = g.qubits[2];
  std::vector<Gate> o{make_cnot(b, a)};
  for (auto& x : decompose_toffoli(make_toffoli(c, a, b))) o.push_back(x);
  o.push_back(make_cnot(b, a));
  return o;
}

std::vector<Gate> decompose_swap(const Gate& g) {
  if (g.kind != GateKind::SWAP) throw ValidationError("decompose_swap expects a SWAP gate");
  const int a = g.qubits[0], b = g.qubits[1];
  return {make_cnot(a, b), make_cnot(b, a), make_cnot(a, b)};
}

std::vector<Gate> decompose_matchgate(const Gate& g) {
  if (g.kind != GateKind::Matchgate) throw ValidationError("decompose_matchgate expects a Matchgate");
  const cplx u{g.params[0], g.params[1]}, v{g.params[2], g.params[3]};
  if (std::abs(std::norm(u) + std::norm(v) - 1.0) > 1e-10) throw ValidationError("matchgate is not unitary");
  const double theta = std::atan2(std::abs(v), std::abs(u));
  const double phi = std::abs(u) > 1e-14 ? std::arg(u) : 0.0;
  const double chi = std::abs(v) > 1e-14 ? std::arg(v) : 0.0;
  const double a = (phi - chi) / 2, b = (phi + chi) / 2;
  const int q0 = g.qubits[0], q1 = g.qubits[1];
  std::vector<Gate> o;
  emit_rz(o, q0, b);
  emit_rz(o, q1, -b);
  if (!near_zero_angle(theta)) {
    emit_ry(o, q1, kPi / 2);
    o.push_back(make_cnot(q1, q0));
    emit_ry(o, q0, theta);
    emit_ry(o, q1, theta);
    o.push_back(make_cnot(q1, q0));
    emit_ry(o, q1, -kPi / 2);
  }
  emit_rz(o, q0, a);
  emit_rz(o, q1, -a);
  return o;
}

bool matchgate_form(const Eigen::MatrixXcd& m, cplx& u, cplx& v, double tol) {
  if (m.rows() != 4 || m.cols() != 4) return false;
  const cplx ph = m(0, 0);
  if (std::abs(std::abs(ph) - 1.0) > tol) return false;
  const Eigen::MatrixXcd w = m / ph;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const bool odd = (r == 1 || r == 2) && (c == 1 || c == 2);
      const bool diag_even = r == c && (r == 0 || r == 3);
      const cplx want = diag_even ? cplx{1.0} : cplx{0.0};
      if (!odd && std::abs(w(r, c) - want) > tol) return false;
    }
  u = w(2, 2);
  v = w(1, 2);
  if (std::abs(w(1, 1) - std::conj(u)) > tol || std::abs(w(2, 1) + std::conj(v)) > tol) return false;
  const double n = std::sqrt(std::norm(u) + std::norm(v));
  u /= n;
  v /= n;
  return true;
}

Circuit compile(const Circuit& c) {
  Circuit out;
  for (const auto& r : c.registers()) out.add_register(r.name, r.size, r.init);
  std::vector<Gate> buf;
  for (const auto& g : c.gates()) {
    buf.clear();
    switch (g.kind) {
      case GateKind::X:
      case GateKind::RZ:
      case GateKind::RX90:
      case GateKind::CNOT:
        buf.push_back(g);
        break;
      case GateKind::SWAP:
        buf = decompose_swap(g);
        break;
      case GateKind::Toffoli:
        buf = decompose_toffoli(g);
        break;
      case GateKind::CSWAP:
        buf = decompose_cswap(g);
        break;
      case GateKind::Matchgate:
        buf = decompose_matchgate(g);
        break;
      case GateKind::Phase1Q:
        emit_rz(buf, g.qubits[0], g.params[0]);
        break;
      case GateKind::GenericUnitary: {
        cplx u, v;
        if (g.qubits.size() != 2 || !matchgate_form(g.matrix(), u, v))
          throw ValidationError("generic unitary '" + g.label + "' is not of matchgate form");
        buf = decompose_matchgate(make_matchgate(g.qubits[0], g.qubits[1], u, v));
        break;
      }
    }
    out.append_gates(buf);
  }
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit out;
  for (const auto& r : c.registers()) out.add_register(r.name, r.size, r.init);
  const auto& gs = c.gates();
  for (auto it = gs.rbegin(); it != gs.rend(); ++it) {
    const Gate& g = *it;
    switch (g.kind) {
      case GateKind::RZ:
        out.add(make_rz(g.qubits[0], -g.params[0]));
        break;
      case GateKind::Phase1Q:
        out.add(make_phase(g.qubits[0], -g.params[0]));
        break;
      case GateKind::RX90:
        out.add(make_x(g.qubits[0]));
        out.add(make_rx90(g.qubits[0]));
        break;
      case GateKind::Matchgate:
        out.add(make_matchgate(g.qubits[0], g.qubits[1], {g.params[0], -g.params[1]},
                               {-g.params[2], -g.params[3]}));
        break;
      case GateKind::GenericUnitary:
        out.add(make_unitary(g.qubits, g.matrix().adjoint(), g.label));
        break;
      default:
        out.add(g);
    }
  }
  return out;
}

// ---------------------------------------------------------------- census

bool is_clifford_angle(double theta) {
  const double r = std::remainder(theta, kPi / 2);
  return std::abs(r) < 1e-9;
}

int circuit_depth(const Circuit& c) {
  std::vector<int> front(c.num_qubits(), 0);
  int depth = 0;
  for (const auto& g : c.gates()) {
    int layer = 0;
    for (int q : g.qubits) layer = std::max(layer, front[q]);
    ++layer;
    for (int q : g.qubits) front[q] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

GateCensus census(const Circuit& c) {
  GateCensus k;
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::RZ:
        (is_clifford_angle(g.params[0]) ? k.rz_clifford : k.rz_nonclifford)++;
        break;
      case GateKind::RX90:
        ++k.rx90;
        break;
      case GateKind::X:
        ++k.x;
        break;
      case GateKind::CNOT:
        ++k.cnot;
        break;
      default:
        throw ValidationError("census needs a compiled circuit; found " + kind_name(g.kind));
    }
  }
  k.depth = circuit_depth(c);
  return k;
}

std::map<GateKind, int> kind_counts(const Circuit& c) {
  std::map<GateKind, int> m;
  for (const auto& g : c.gates()) ++m[g.kind];
  return m;
}

// ---------------------------------------------------------------- json

std::string to_json(const Circuit& c, int indent) {
  using nlohmann::json;
  json j;
  j["registers"] = json::array();
  for (const auto& r : c.registers()) j["registers"].push_back({{"name", r.name}, {"size", r.size}, {"init", r.init}});
  j["gates"] = json::array();
  for (const auto& g : c.gates()) {
    json jg;
    jg["kind"] = kind_name(g.kind);
    jg["qubits"] = json::array();
    for (int q : g.qubits) jg["qubits"].push_back(c.qubit_name(q));
    jg["params"] = g.params;
    if (!g.label.empty()) jg["label"] = g.label;
    j["gates"].push_back(std::move(jg));
  }
  return j.dump(indent);
}

Circuit circuit_from_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid circuit json: ") + e.what());
  }
  Circuit c;
  try {
    for (const auto& r : j.at("registers"))
      c.add_register(r.at("name").get<std::string>(), r.at("size").get<int>(), r.value("init", std::string{}));
    for (const auto& jg : j.at("gates")) {
      Gate g;
      g.kind = kind_from_name(jg.at("kind").get<std::string>());
      for (const auto& q : jg.at("qubits")) {
        const auto s = q.get<std::string>();
        const auto colon = s.rfind(':');
        if (colon == std::string::npos) throw ValidationError("qubit reference must be 'reg:idx': " + s);
        c.qubit(s.substr(0, colon), 0);
        g.qubits.push_back(c.qubit(s.substr(0, colon), std::stoi(s.substr(colon + 1))));
      }
      if (jg.contains("params")) g.params = jg["params"].get<std::vector<double>>();
      g.label = jg.value("label", std::string{});
      c.add(std::move(g));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid circuit json: ") + e.what());
  }
  return c;
}

}  // namespace fxxz
