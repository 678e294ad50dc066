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


// Invariant suites over the classical oracle: eigen-residuals, spectra
// against exact diagonalisation, and fragment completeness.

#pragma once

#include <string>
#include <vector>

#include "fxxz/oracle.hpp"

namespace fxxz {

struct CheckEntry {
  std::string suite;
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Distinct fragment labels of the bulk length, in order of first appearance
// over the basis.
std::vector<Bits> all_fragment_labels(int n_bulk);

// ||H psi - E psi|| of one eigenstate; `corrupt` moves the first wall one
// site right in every basis string, as a negative control.
CheckEntry check_eigenstate(int n_bulk, const std::vector<int>& modes, const std::vector<int>& walls,
                            double tol = 1e-10, bool corrupt = false);

// Per fragment: the largest residual over every momentum grid, and the
// momentum-grid energies against the fragment's exact spectrum.
std::vector<CheckEntry> verify_eigenstates(int n_bulk, double tol = 1e-10);

// Fragment dimensions equal the grid counts and sum to 2^N.
std::vector<CheckEntry> verify_fragments(int n_bulk);

}  // namespace fxxz
