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

// Register traces of the two-wall circuits for N = 5 and N = 6: per stage n,
// rows of [input, after |01> wall, after |10> wall, after insertion], each
// phys bits followed by rc. Rows are transcribed as printed; `kErrata` lists
// cells whose printed value contradicts the rest of the table.

#pragma once

#include <string>
#include <vector>

namespace fxxz::gold {

struct TraceRow {
  int n_sites;
  int stage;
  std::string cells[4];
};

struct Erratum {
  int n_sites;
  int stage;
  int row;  // index within the stage block
  int column;
  std::string corrected;
};

inline const std::vector<TraceRow> kTraceRows = {
    {5, 3, {"0011000", "1111010", "1100011", "1100111"}},
    {5, 3, {"0011100", "1111110", "1111110", "1110110"}},
    {5, 3, {"0001100", "0111110", "0111110", "0110110"}},
    {5, 2, {"0011000", "1111010", "1111010", "1101010"}},
    {5, 2, {"0011100", "1111110", "1111110", "1101110"}},
    {5, 2, {"0001100", "0001100", "0001100", "0101100"}},
    {5, 1, {"0011000", "0011000", "0011000", "1011000"}},
    {5, 1, {"0011100", "0011100", "1011100", "1011100"}},
    {5, 1, {"0011000", "0001100", "0001100", "1001100"}},
    {6, 4, {"00110000", "11110010", "11000011", "11000111"}},
    {6, 4, {"00111000", "11111010", "11100011", "11100111"}},
    {6, 4, {"00111100", "11111110", "11111110", "11110110"}},
    {6, 4, {"00011000", "01111010", "01100011", "01100111"}},
    {6, 4, {"00011100", "01111110", "01111110", "01110110"}},
    {6, 4, {"00001100", "00111100", "00111110", "00110110"}},
    {6, 3, {"00110000", "11110010", "11000011", "11001011"}},
    {6, 3, {"00111000", "11111010", "11111011", "11101011"}},
    {6, 3, {"00111100", "11111110", "11111110", "11101110"}},
    {6, 3, {"00011000", "01111010", "01111011", "01101011"}},
    {6, 3, {"00011100", "01111110", "01111110", "01101110"}},
    {6, 3, {"00001100", "00001100", "00001110", "00110110"}},
    {6, 2, {"00110000", "11110010", "11110010", "11010010"}},
    {6, 2, {"00111000", "11111010", "11111010", "11011010"}},
    {6, 2, {"00111100", "11111110", "11111110", "11011110"}},
    {6, 2, {"00011000", "00011000", "00011000", "01011000"}},
    {6, 2, {"00011100", "00011100", "00011100", "01011100"}},
    {6, 2, {"00001100", "00001100", "00001100", "01001100"}},
    {6, 1, {"00110000", "00110000", "00110000", "10110000"}},
    {6, 1, {"00111000", "00111000", "00111000", "10111000"}},
    {6, 1, {"00111100", "00111100", "00111100", "10111100"}},
    {6, 1, {"00011000", "00011000", "00011000", "10011000"}},
    {6, 1, {"00011100", "00011100", "00011100", "10011100"}},
    {6, 1, {"00001100", "00001100", "00001100", "10001100"}},
};

inline const std::vector<Erratum> kErrata = {
    {5, 1, 1, 2, "0011100"},
    {5, 1, 2, 0, "0001100"},
    {6, 4, 5, 1, "00111110"},
    {6, 3, 1, 2, "11111010"},
    {6, 3, 1, 3, "11101010"},
    {6, 3, 3, 2, "01111010"},
    {6, 3, 3, 3, "01101010"},
    {6, 3, 5, 2, "00001100"},
    {6, 3, 5, 3, "00101100"},
};

}  // namespace fxxz::gold
