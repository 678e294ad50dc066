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

#include "fxxz/hardrod.hpp"

#include <algorithm>
#include <string>

namespace fxxz {

void U0Layout::validate() const {
  if (n_magnons < 1) throw ValidationError("U0 needs at least one magnon");
  if (free_sites() < n_magnons) throw ValidationError("too many magnons for the physical register");
}

std::vector<Gate> build_swap_module(int control, const U0Layout& layout) {
  layout.validate();
  if (control < 1 || control > layout.n_phys) throw ValidationError("control outside the physical register");
  std::vector<Gate> out;
  // top slot first so the pointer advances at most once
  for (int j = layout.n_magnons; j >= 1; --j)
    out.push_back(make_cswap(layout.phys_qubit(control), layout.aux_qubit(j), layout.aux_qubit(j + 1)));
  return out;
}

std::vector<Gate> build_shift_module(int base, const U0Layout& layout) {
  layout.validate();
  const int m = layout.n_magnons;
  if (base < 1 || base + m - 1 > layout.n_phys) throw ValidationError("shift window outside the physical register");
  std::vector<Gate> out;
  for (int j = 1; j <= m - 1; ++j)
    out.push_back(make_cswap(layout.aux_qubit(m + 1 - j), layout.phys_qubit(base), layout.phys_qubit(base + j)));
  return out;
}

Bits u0_aux_final(const U0Layout& layout) {
  Bits b(layout.aux_size(), '0');
  b.back() = '1';
  return b;
}

Circuit build_u0(const U0Layout& layout, bool trim) {
  layout.validate();
  const int m = layout.n_magnons;
  const int n0 = layout.free_sites();
  Circuit c;
  c.add_register("phys", layout.n_phys);
  Bits aux(layout.aux_size(), '0');
  aux[0] = '1';
  c.add_register("aux", layout.aux_size(), aux);
  for (int n = n0; n >= 1; --n) {
    // magnons already found to the right of n
    const int fmin = std::max(0, m - n);
    const int fmax = std::min(m, n0 - n);
    auto swaps = build_swap_module(n, layout);
    for (int j = m; j >= 1; --j) {
      const bool live = fmin <= j - 1 && j - 1 <= std::min(fmax, m - 1);
      if (!trim || live) c.add(swaps[m - j]);
    }
    auto shifts = build_shift_module(n, layout);
    for (int j = 1; j <= m - 1; ++j) {
      const bool live = fmin + 1 <= m - j && m - j <= fmax + 1;
      if (!trim || live) c.add(shifts[j - 1]);
    }
  }
  return c;
}

}  // namespace fxxz
