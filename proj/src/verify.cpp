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


#include "fxxz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace fxxz {

namespace {

double eigen_residual(const Amplitudes& psi, double e) {
  if (psi.empty()) return 0.0;
  auto hpsi = hamiltonian_apply(psi, ChainSpec{static_cast<int>(psi.begin()->first.size()) - 2});
  for (const auto& [b, v] : psi) hpsi[b] -= e * v;
  return norm(hpsi);
}

std::string join(const std::vector<int>& v) {
  std::ostringstream s;
  for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

}  // namespace

std::vector<Bits> all_fragment_labels(int n_bulk) {
  if (n_bulk < 1 || n_bulk > 20) throw ValidationError("bulk length must be in 1..20");
  std::vector<Bits> labels;
  std::set<Bits> seen;
  for (unsigned long long v = 0; v < (1ULL << n_bulk); ++v) {
    Bits l = fragment_label(with_boundaries(bits_of(v, n_bulk)));
    if (seen.insert(l).second) labels.push_back(l);
  }
  return labels;
}

CheckEntry check_eigenstate(int n_bulk, const std::vector<int>& modes, const std::vector<int>& walls, double tol,
                            bool corrupt) {
  CheckEntry e;
  e.suite = "eigenstate";
  e.name = "N=" + std::to_string(n_bulk) + " modes=" + join(modes) + " walls=" + join(walls);
  e.tolerance = tol;
  const DomainWallConfig dw{walls, static_cast<int>(modes.size())};
  dw.validate(n_bulk);
  const MomentumSet ms{modes, n_bulk + 1 - dw.magnons - dw.count()};
  Amplitudes psi = folded_eigenstate(ms, dw, ChainSpec{n_bulk});
  if (corrupt) {
    if (walls.empty()) throw ValidationError("corruption needs at least one wall");
    Amplitudes bad;
    for (const auto& [b, v] : psi) {
      Bits c = b;
      const int d = walls.front();
      std::swap(c[d], c[d + 1]);
      bad[c] += v;
    }
    psi = normalized(bad);
    e.name += " (corrupted)";
  }
  e.residual = eigen_residual(psi, energy_of(ms));
  e.pass = e.residual <= tol;
  return e;
}

std::vector<CheckEntry> verify_eigenstates(int n_bulk, double tol) {
  std::vector<CheckEntry> out;
  for (const auto& l : all_fragment_labels(n_bulk)) {
    const LabelInfo info = parse_label(l);
    CheckEntry res{"eigenstate", "fragment " + l, true, 0.0, tol, ""};
    std::vector<double> cba;
    for (const auto& modes : combinations(info.n0(), info.magnons)) {
      const MomentumSet ms{modes, info.n0()};
      const Amplitudes psi = folded_eigenstate(ms, info.walls, ChainSpec{n_bulk});
      res.residual = std::max(res.residual, eigen_residual(psi, energy_of(ms)));
      if (fragment_label(psi.begin()->first) != l) {
        res.pass = false;
        res.detail = "eigenstate leaves the fragment";
      }
      cba.push_back(energy_of(ms));
    }
    res.pass = res.pass && res.residual <= tol;
    res.detail += std::to_string(cba.size()) + " grids";
    out.push_back(res);

    CheckEntry spec{"spectrum", "fragment " + l, false, 0.0, tol, ""};
    const Spectrum ed = exact_diagonalize_fragment(l);
    std::sort(cba.begin(), cba.end());
    if (cba.size() != ed.eigenvalues.size()) {
      spec.residual = INFINITY;
      spec.detail = "grid count " + std::to_string(cba.size()) + " vs dimension " + std::to_string(ed.eigenvalues.size());
    } else {
      for (size_t i = 0; i < cba.size(); ++i) spec.residual = std::max(spec.residual, std::abs(cba[i] - ed.eigenvalues[i]));
      spec.pass = spec.residual <= tol;
    }
    out.push_back(spec);
  }
  return out;
}

std::vector<CheckEntry> verify_fragments(int n_bulk) {
  std::vector<CheckEntry> out;
  long long total = 0;
  int mismatched = 0, n_frag = 0;
  for (const auto& l : all_fragment_labels(n_bulk)) {
    const LabelInfo info = parse_label(l);
    const long long dim = static_cast<long long>(enumerate_fragment(l).size());
    if (dim != binomial(info.n0(), info.magnons)) ++mismatched;
    total += dim;
    ++n_frag;
  }
  const long long want = 1LL << n_bulk;
  out.push_back({"fragments", "dimension total N=" + std::to_string(n_bulk), total == want,
                 static_cast<double>(std::llabs(total - want)), 0.0,
                 std::to_string(n_frag) + " fragments, total " + std::to_string(total) + " of " + std::to_string(want)});
  out.push_back({"fragments", "grid counts N=" + std::to_string(n_bulk), mismatched == 0, static_cast<double>(mismatched),
                 0.0, std::to_string(mismatched) + " fragments differ from their grid count"});
  return out;
}

}  // namespace fxxz
