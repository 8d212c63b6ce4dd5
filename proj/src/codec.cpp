#include "eoflex/codec.hpp"

#include <algorithm>
#include <string>

#include "eoflex/error.hpp"

namespace eoflex {

namespace {

// dst = XOR of the listed lanes; an empty list yields zero.
void fold(std::uint8_t* dst, const std::vector<const std::uint8_t*>& terms, std::size_t width, XorCounter* counter) {
    if (terms.empty()) {
        lane_zero(dst, width);
        return;
    }
    lane_copy(dst, terms[0], width);
    for (std::size_t n = 1; n < terms.size(); ++n) lane_xor(dst, terms[n], width, counter);
}

}  // namespace

CommonBits compute_common_bits(const CodeArray& array, XorCounter* counter) {
    const CodeParams& cp = array.params();
    const std::size_t w = array.lane_width();
    CommonBits bits{LaneBlock(static_cast<std::size_t>(cp.t), w)};
    std::vector<const std::uint8_t*> terms;
    for (int mu = 0; mu < cp.t; ++mu) {
        terms.clear();
        // Row rows+mu-j is stored only when mu < j.
        for (int j = mu + 1; j < cp.k; ++j) terms.push_back(array.cell(cp.rows + mu - j, j));
        fold(bits.s[static_cast<std::size_t>(mu)], terms, w, counter);
    }
    return bits;
}

void encode_row_parity(CodeArray& array, XorCounter* counter) {
    const CodeParams& cp = array.params();
    const std::size_t w = array.lane_width();
    std::vector<const std::uint8_t*> terms;
    for (int i = 0; i < cp.rows; ++i) {
        terms.clear();
        for (int j = 0; j < cp.k; ++j) terms.push_back(array.cell(i, j));
        fold(array.cell(i, cp.k), terms, w, counter);
    }
}

void encode_diag_parity(CodeArray& array, XorCounter* counter) {
    const CodeParams& cp = array.params();
    const std::size_t w = array.lane_width();
    const CommonBits common = compute_common_bits(array, counter);
    std::vector<const std::uint8_t*> terms;
    for (int i = 0; i < cp.rows; ++i) {
        terms.clear();
        for (int j = 0; j < cp.k; ++j) {
            const int r = mod_ring(cp, i - j);
            if (r < cp.rows) terms.push_back(array.cell(r, j));
        }
        std::uint8_t* dst = array.cell(i, cp.k + 1);
        fold(dst, terms, w, counter);
        if (i < cp.n_c) lane_xor(dst, common.s[static_cast<std::size_t>(i % cp.t)], w, counter);
    }
}

void encode(CodeArray& array, XorCounter* counter) {
    encode_row_parity(array, counter);
    encode_diag_parity(array, counter);
}

std::vector<Position> parity_dependents(const CodeParams& cp, int i, int j) {
    if (j < 0 || j >= cp.k + 2)
        throw CodeError(ErrorCode::ColumnOutOfRange, "column " + std::to_string(j) + " outside the array", j);
    if (j >= cp.k)
        throw CodeError(ErrorCode::ParityColumnNotUpdatable, "column " + std::to_string(j) + " is a parity column", j);
    if (i < 0 || i >= cp.rows)
        throw CodeError(ErrorCode::IndexOutOfRing, "row " + std::to_string(i) + " outside the array", i);
    std::vector<Position> out;
    out.push_back({i, cp.k});
    const int r = mod_ring(cp, i + j);
    if (r < cp.rows) {
        out.push_back({r, cp.k + 1});
    } else {
        const int mu = r - cp.rows;
        if (j >= 1 && mu < cp.t)
            for (int row = mu; row < cp.n_c; row += cp.t) out.push_back({row, cp.k + 1});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Position> update_cell(CodeArray& array, int i, int j, const std::uint8_t* new_value) {
    const std::vector<Position> touched = parity_dependents(array.params(), i, j);
    const std::size_t w = array.lane_width();
    std::vector<std::uint8_t> delta(array.cell(i, j), array.cell(i, j) + w);
    lane_xor(delta.data(), new_value, w, nullptr);
    lane_copy(array.cell(i, j), new_value, w);
    for (const Position& pos : touched) lane_xor(array.cell(pos.row, pos.column), delta.data(), w, nullptr);
    return touched;
}

}  // namespace eoflex
