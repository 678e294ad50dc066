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

#include "fxxz/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace fxxz {

namespace {

constexpr double kPi = std::numbers::pi;

void check_bits(const Bits& b) {
  for (char c : b)
    if (c != '0' && c != '1') throw ValidationError("basis string must contain only 0 and 1");
}

void check_full(const Bits& full, int n_bulk) {
  check_bits(full);
  if (static_cast<int>(full.size()) != n_bulk + 2)
    throw ValidationError("basis length " + std::to_string(full.size()) + " does not match chain length " +
                          std::to_string(n_bulk + 2));
  if (full.front() != '0' || full.back() != '0') throw ValidationError("boundary bits must be 0");
}

int transition_sum(const Bits& s) {
  int t = 0;
  for (size_t j = 0; j + 1 < s.size(); ++j)
    if (s[j] != s[j + 1]) t += static_cast<int>(j);
  return t;
}

}  // namespace

std::vector<double> MomentumSet::momenta() const {
  std::vector<double> p;
  p.reserve(modes.size());
  for (int m : modes) p.push_back(kPi * m / (n0 + 1));
  return p;
}

void MomentumSet::validate() const {
  if (n0 < 0) throw ValidationError("effective length must be non-negative");
  for (size_t a = 0; a < modes.size(); ++a) {
    if (modes[a] < 1 || modes[a] > n0) throw ValidationError("mode integer out of range 1..n0");
    if (a > 0 && modes[a] == modes[a - 1]) throw ValidationError("duplicate mode integers give a vanishing state");
    if (a > 0 && modes[a] < modes[a - 1]) throw ValidationError("mode integers must be increasing");
  }
}

void DomainWallConfig::validate(int n_bulk) const {
  if (walls.size() % 2 != 0) throw ValidationError("number of domain walls must be even");
  if (magnons < 0) throw ValidationError("negative magnon count");
  for (size_t a = 0; a < walls.size(); ++a) {
    if (a == 0 && walls[a] < 2 * magnons) throw ValidationError("first wall must satisfy d1 >= 2M");
    if (a > 0 && walls[a] - walls[a - 1] < 2) throw ValidationError("walls must be at least two sites apart");
  }
  if (!walls.empty() && walls.back() > n_bulk) throw ValidationError("last wall beyond the chain");
}

Bits bits_of(unsigned long long value, int length) {
  Bits b(length, '0');
  for (int i = 0; i < length; ++i)
    if (value >> (length - 1 - i) & 1ULL) b[i] = '1';
  return b;
}

Bits with_boundaries(const Bits& bulk) { return "0" + bulk + "0"; }

Bits strip_boundaries(const Bits& full) {
  if (full.size() < 2) throw ValidationError("string too short to carry boundaries");
  return full.substr(1, full.size() - 2);
}

double norm(const Amplitudes& a) {
  double s = 0;
  for (const auto& [k, v] : a) s += std::norm(v);
  return std::sqrt(s);
}

Amplitudes normalized(const Amplitudes& a) {
  double n = norm(a);
  if (n == 0) throw ValidationError("cannot normalize a zero state");
  Amplitudes out;
  for (const auto& [k, v] : a) out[k] = v / n;
  return out;
}

cplx overlap(const Amplitudes& a, const Amplitudes& b) {
  cplx s = 0;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it != b.end()) s += std::conj(v) * it->second;
  }
  return s;
}

Amplitudes add_boundaries(const Amplitudes& bulk) {
  Amplitudes out;
  for (const auto& [k, v] : bulk) out[with_boundaries(k)] = v;
  return out;
}

std::vector<Bits> hop_neighbors(const Bits& full) {
  std::vector<Bits> out;
  for (size_t j = 0; j + 3 < full.size(); ++j) {
    std::string_view w(full.data() + j, 4);
    const char* to = nullptr;
    if (w == "0100") to = "0010";
    else if (w == "0010") to = "0100";
    else if (w == "1011") to = "1101";
    else if (w == "1101") to = "1011";
    if (to) {
      Bits n = full;
      n.replace(j, 4, to);
      out.push_back(std::move(n));
    }
  }
  return out;
}

Amplitudes hamiltonian_apply(const Amplitudes& state, const ChainSpec& chain) {
  Amplitudes out;
  for (const auto& [k, v] : state) {
    check_full(k, chain.n_bulk);
    for (const auto& n : hop_neighbors(k)) out[n] += -0.5 * v;
  }
  return out;
}

int charge_q1(const Bits& full) { return static_cast<int>(std::count(full.begin(), full.end(), '1')); }

int charge_q2(const Bits& full) {
  int q = 0;
  for (size_t j = 0; j + 1 < full.size(); ++j) q += full[j] != full[j + 1];
  return q;
}

double expectation_h(const Amplitudes& full_state) {
  if (full_state.empty()) return 0.0;
  ChainSpec chain{static_cast<int>(full_state.begin()->first.size()) - 2};
  return overlap(full_state, hamiltonian_apply(full_state, chain)).real();
}

std::vector<Bits> bfs_closure(const Bits& full) {
  check_bits(full);
  std::vector<Bits> order{full};
  std::unordered_set<Bits> seen{full};
  for (size_t i = 0; i < order.size(); ++i)
    for (auto& n : hop_neighbors(order[i]))
      if (seen.insert(n).second) order.push_back(n);
  std::sort(order.begin(), order.end());
  return order;
}

Bits fragment_label(const Bits& full) {
  auto members = bfs_closure(full);
  // every hop shifts the transition-position sum by two, and the packed
  // configuration is its unique minimizer
  return *std::min_element(members.begin(), members.end(), [](const Bits& a, const Bits& b) {
    int ta = transition_sum(a), tb = transition_sum(b);
    return ta != tb ? ta < tb : a < b;
  });
}

std::vector<Bits> enumerate_fragment(const Bits& label) {
  if (fragment_label(label) != label) throw ValidationError("input is not a fragment label: " + label);
  return bfs_closure(label);
}

Bits reference_walls(int n_bulk, const std::vector<int>& walls) {
  Bits bulk(n_bulk, '0');
  for (size_t i = 0; i + 1 < walls.size(); i += 2)
    for (int s = walls[i] + 1; s <= walls[i + 1]; ++s) bulk.at(s - 1) = '1';
  return bulk;
}

Bits label_from(int n_bulk, int magnons, const std::vector<int>& walls) {
  DomainWallConfig{walls, magnons}.validate(n_bulk);
  if (2 * magnons - 1 > n_bulk) throw ValidationError("too many magnons for the chain");
  Bits bulk = reference_walls(n_bulk, walls);
  for (int a = 0; a < magnons; ++a) bulk.at(2 * a) = '1';
  return with_boundaries(bulk);
}

LabelInfo parse_label(const Bits& label) {
  check_bits(label);
  if (label.size() < 2 || label.front() != '0' || label.back() != '0')
    throw ValidationError("label must carry zero boundaries");
  LabelInfo info;
  info.n_bulk = static_cast<int>(label.size()) - 2;
  int m = 0;
  while (2 * m + 2 < static_cast<int>(label.size()) && label[2 * m + 1] == '1' && label[2 * m + 2] == '0') ++m;
  std::vector<int> walls;
  for (int d = 2 * m; d + 1 < static_cast<int>(label.size()); ++d)
    if (label[d] != label[d + 1]) walls.push_back(d);
  info.magnons = m;
  info.walls = DomainWallConfig{walls, m};
  if (label_from(info.n_bulk, m, walls) != label) throw ValidationError("not a label state: " + label);
  return info;
}

cplx slater_amplitude(const std::vector<int>& positions, const std::vector<double>& momenta) {
  const auto m = static_cast<Eigen::Index>(momenta.size());
  if (static_cast<Eigen::Index>(positions.size()) != m) throw ValidationError("positions and momenta differ in count");
  if (m == 0) return 1.0;
  Eigen::MatrixXcd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = std::exp(cplx(0, momenta[i] * positions[j]));
  return a.determinant();
}

cplx open_xx_amplitude(const std::vector<int>& x, const std::vector<double>& momenta) {
  // sum over reflections eps_a of prod(eps) det[exp(i eps_a p_a x_b)],
  // collapsed row by row into det[exp(i p x) - exp(-i p x)]
  const auto m = static_cast<Eigen::Index>(momenta.size());
  if (m == 0) return 1.0;
  Eigen::MatrixXcd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = cplx(0, 2 * std::sin(momenta[i] * x[j]));
  return a.determinant();
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<int>> combinations(int n, int m) {
  std::vector<std::vector<int>> out;
  if (m < 0 || m > n) return out;
  std::vector<int> c(m);
  for (int i = 0; i < m; ++i) c[i] = i + 1;
  while (true) {
    out.push_back(c);
    int i = m - 1;
    while (i >= 0 && c[i] == n - m + i + 1) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

Amplitudes xx_open_eigenstate(const MomentumSet& ms) {
  ms.validate();
  auto p = ms.momenta();
  const int m = static_cast<int>(p.size());
  Amplitudes out;
  for (const auto& x : combinations(ms.n0, m)) {
    Bits b(ms.n0, '0');
    for (int s : x) b[s - 1] = '1';
    cplx v = open_xx_amplitude(x, p);
    if (v != 0.0) out[b] = v;
  }
  return normalized(out);
}

Bits domainwall_relocate(const std::vector<int>& x, const DomainWallConfig& cfg, int n_bulk) {
  const int m = static_cast<int>(x.size());
  const int d_count = cfg.count();
  const int n0 = n_bulk + 1 - m - d_count;
  for (int a = 0; a < m; ++a) {
    if (x[a] < 1 || x[a] > n0) throw ValidationError("free coordinate out of range");
    if (a > 0 && x[a] <= x[a - 1]) throw ValidationError("free coordinates must be increasing");
  }
  DomainWallConfig{cfg.walls, m}.validate(n_bulk);
  Bits bulk = reference_walls(n_bulk, cfg.walls);
  std::vector<int> d = cfg.walls;
  auto flip = [&](int site) {
    if (site < 1 || site > n_bulk) throw std::logic_error("relocation touched a boundary site");
    bulk[site - 1] = bulk[site - 1] == '0' ? '1' : '0';
  };
  for (int a = m - 1; a >= 0; --a) {
    const int n = x[a] + a;  // hard-rod coordinate x_a + a - 1, 1-based a
    int k = 0;
    while (k < d_count && d[k] <= n + k) ++k;
    for (int b = 0; b < k; ++b) {
      flip(d[b] - 1);
      flip(d[b]);
      d[b] -= 2;
    }
    flip(n + k);
  }
  return bulk;
}

Amplitudes folded_eigenstate(const MomentumSet& ms, const DomainWallConfig& walls, const ChainSpec& chain) {
  ms.validate();
  const int m = static_cast<int>(ms.modes.size());
  if (walls.magnons != m && walls.magnons != 0 && !walls.walls.empty())
    throw ValidationError("wall configuration magnon count differs from momenta");
  if (ms.n0 != chain.n_bulk + 1 - m - walls.count())
    throw ValidationError("inconsistent (N, M, D): n0 must equal N + 1 - M - D");
  DomainWallConfig cfg{walls.walls, m};
  cfg.validate(chain.n_bulk);
  auto p = ms.momenta();
  Amplitudes out;
  for (const auto& x : combinations(ms.n0, m)) {
    cplx v = open_xx_amplitude(x, p);
    if (v != 0.0) out[with_boundaries(domainwall_relocate(x, cfg, chain.n_bulk))] = v;
  }
  if (out.empty()) out[Bits(chain.full_length(), '0')] = 1.0;
  return normalized(out);
}

Amplitudes magnonic_eigenstate(const MomentumSet& ms, const ChainSpec& chain) {
  const int m = static_cast<int>(ms.modes.size());
  if (m > (chain.n_bulk + 1) / 2) throw ValidationError("too many magnons for a hard-rod configuration");
  return folded_eigenstate(ms, DomainWallConfig{{}, m}, chain);
}

double energy_of(const MomentumSet& ms, double c) {
  double e = 0;
  for (double p : ms.momenta()) e -= c * std::cos(p);
  return e;
}

Spectrum exact_diagonalize_fragment(const Bits& label) {
  auto members = enumerate_fragment(label);
  const auto dim = static_cast<Eigen::Index>(members.size());
  if (dim > 4096) throw ValidationError("fragment too large for dense diagonalization");
  std::unordered_map<Bits, Eigen::Index> index;
  for (Eigen::Index i = 0; i < dim; ++i) index[members[i]] = i;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (const auto& n : hop_neighbors(members[i])) h(index.at(n), i) += -0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Spectrum s;
  for (Eigen::Index j = 0; j < dim; ++j) {
    s.eigenvalues.push_back(es.eigenvalues()(j));
    Amplitudes v;
    for (Eigen::Index i = 0; i < dim; ++i)
      if (es.eigenvectors()(i, j) != 0.0) v[members[i]] = es.eigenvectors()(i, j);
    s.eigenvectors.push_back(std::move(v));
  }
  return s;
}

cplx XXZParams::scattering(cplx ya, cplx yb) const {
  return (1.0 + ya * yb - 2.0 * delta * yb) * (1.0 + yb / ya - 2.0 * delta / ya) / yb;
}

cplx XXZParams::self_scattering(cplx ya) const { return 1.0 - delta / ya; }

Amplitudes mps_bethe_state(const std::vector<double>& momenta, const XXZParams& params, int n_sites) {
  const int m = static_cast<int>(momenta.size());
  const int k = 2 * m;
  if (n_sites < k) throw ValidationError("need at least 2M sites");
  std::vector<cplx> y;
  for (double p : momenta) {
    y.push_back(std::exp(cplx(0, p)));
    y.push_back(std::exp(cplx(0, -p)));
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (std::abs(y[a] - y[b]) < 1e-12) throw ValidationError("coincident doubled momenta");
  auto occ = [k](unsigned s, int a) { return (s >> (k - 1 - a)) & 1U; };

  // boundary vector: prod_a (y alpha |10> - y alpha |01>) on ancilla pairs
  std::map<unsigned, cplx> init;
  for (unsigned mask = 0; mask < (1U << m); ++mask) {
    unsigned s = 0;
    cplx c = 1;
    for (int a = 0; a < m; ++a) {
      const int slot = (mask >> a & 1U) ? 2 * a + 1 : 2 * a;
      s |= 1U << (k - 1 - slot);
      const cplx w = y[slot] * params.self_scattering(y[slot]);
      c *= (mask >> a & 1U) ? -w : w;
    }
    init[s] += c;
  }
  std::vector<std::vector<cplx>> bmat(k, std::vector<cplx>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b) bmat[a][b] = params.scattering(y[a], y[b]);

  Amplitudes out;
  for (const auto& pos : combinations(n_sites, m)) {
    std::map<unsigned, cplx> st = init;
    size_t next = 0;
    for (int site = 1; site <= n_sites; ++site) {
      std::map<unsigned, cplx> nx;
      const bool one = next < pos.size() && pos[next] == site;
      for (const auto& [s, c] : st) {
        if (!one) {
          cplx f = 1;
          for (int a = 0; a < k; ++a)
            if (occ(s, a)) f *= y[a];
          nx[s] += c * f;
        } else {
          for (int a = 0; a < k; ++a) {
            if (!occ(s, a)) continue;
            cplx f = 1;
            for (int b = 0; b < a; ++b)
              if (occ(s, b)) f *= -bmat[b][a] * y[b];
            for (int b = a + 1; b < k; ++b)
              if (occ(s, b)) f *= bmat[b][a] * y[b];
            nx[s & ~(1U << (k - 1 - a))] += c * f;
          }
        }
      }
      if (one) ++next;
      st = std::move(nx);
    }
    Bits b(n_sites, '0');
    for (int s : pos) b[s - 1] = '1';
    auto it = st.find(0U);
    if (it != st.end() && it->second != 0.0) out[b] = it->second;
  }
  return out;
}

Amplitudes xxz_apply(const Amplitudes& state, int n_sites, double delta) {
  Amplitudes out;
  for (const auto& [b, v] : state) {
    if (static_cast<int>(b.size()) != n_sites) throw ValidationError("length mismatch");
    double diag = 0;
    for (int j = 0; j + 1 < n_sites; ++j) {
      if (b[j] != b[j + 1]) {
        Bits f = b;
        std::swap(f[j], f[j + 1]);
        out[f] += 2.0 * v;
        diag -= delta;
      } else {
        diag += delta;
      }
    }
    out[b] += diag * v;
  }
  return out;
}

namespace {

Eigen::VectorXd xxz_residual(const std::vector<double>& p, int n_sites, double delta) {
  auto psi = normalized(mps_bethe_state(p, XXZParams{delta}, n_sites));
  auto hpsi = xxz_apply(psi, n_sites, delta);
  double e = overlap(psi, hpsi).real();
  for (const auto& [b, v] : psi) hpsi[b] -= e * v;
  const auto sector = combinations(n_sites, static_cast<int>(p.size()));
  Eigen::VectorXd r(2 * static_cast<Eigen::Index>(sector.size()));
  Eigen::Index i = 0;
  for (const auto& pos : sector) {
    Bits b(n_sites, '0');
    for (int s : pos) b[s - 1] = '1';
    auto it = hpsi.find(b);
    cplx v = it == hpsi.end() ? cplx(0) : it->second;
    r(i++) = v.real();
    r(i++) = v.imag();
  }
  return r;
}

}  // namespace

std::vector<double> solve_open_bethe(const std::vector<int>& modes, int n_sites, double delta) {
  std::vector<double> p;
  for (int m : modes) p.push_back(kPi * m / (n_sites + 1));
  if (delta == 0.0) return p;
  const int steps = 40;
  for (int s = 1; s <= steps; ++s) {
    const double d = delta * s / steps;
    for (int it = 0; it < 60; ++it) {
      Eigen::VectorXd r = xxz_residual(p, n_sites, d);
      Eigen::MatrixXd jac(r.size(), static_cast<Eigen::Index>(p.size()));
      for (size_t a = 0; a < p.size(); ++a) {
        auto q = p;
        q[a] += 1e-7;
        Eigen::VectorXd r2 = xxz_residual(q, n_sites, d);
        jac.col(static_cast<Eigen::Index>(a)) = (r2 - r) / 1e-7;
      }
      Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
      for (size_t a = 0; a < p.size(); ++a) p[a] += step(static_cast<Eigen::Index>(a));
      if (step.norm() < 1e-13) break;
    }
  }
  return p;
}

Amplitudes constrained_dicke(int magnons, int n_sites) {
  if (magnons > (n_sites + 1) / 2) throw ValidationError("too many magnons for a constrained Dicke state");
  std::vector<Bits> support;
  for (const auto& x : combinations(n_sites - magnons + 1, magnons)) {
    Bits free(n_sites - magnons + 1, '0');
    for (int s : x) free[s - 1] = '1';
    support.push_back(hardrod_shift(free, magnons));
  }
  Amplitudes out;
  for (const auto& b : support) out[b] = 1.0 / std::sqrt(static_cast<double>(support.size()));
  return out;
}

Bits hardrod_shift(const Bits& free_bits, int magnons) {
  Bits out(free_bits.size() + std::max(magnons - 1, 0), '0');
  int a = 0;
  for (size_t s = 0; s < free_bits.size(); ++s)
    if (free_bits[s] == '1') out[s + a++] = '1';
  if (a != magnons) throw ValidationError("magnon count mismatch in hard-rod shift");
  return out;
}

}  // namespace fxxz
