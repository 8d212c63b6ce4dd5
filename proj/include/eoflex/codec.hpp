#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "eoflex/array.hpp"
#include "eoflex/lane.hpp"

namespace eoflex {

// s[mu] = XOR over j=1..k-1 of the cell at row rows+mu-j (mod ring) of column j.
struct CommonBits {
    LaneBlock s;
};

struct Position {
    int row;
    int column;
    bool operator==(const Position&) const = default;
    auto operator<=>(const Position&) const = default;
};

CommonBits compute_common_bits(const CodeArray& array, XorCounter* counter = nullptr);

// Fills both parity columns from the information columns.
void encode(CodeArray& array, XorCounter* counter = nullptr);
void encode_row_parity(CodeArray& array, XorCounter* counter = nullptr);
void encode_diag_parity(CodeArray& array, XorCounter* counter = nullptr);

// Parity cells whose defining equation contains information cell (i, j), sorted.
std::vector<Position> parity_dependents(const CodeParams& params, int i, int j);

// Replaces cell (i, j) and patches the dependent parity cells by the XOR delta.
std::vector<Position> update_cell(CodeArray& array, int i, int j, const std::uint8_t* new_value);

}  // namespace eoflex
