#include "eoflex/array.hpp"

#include <algorithm>
#include <string>

#include "eoflex/error.hpp"

namespace eoflex {

int mod_ring(const CodeParams& params, std::int64_t x) {
    std::int64_t r = x % params.ring;
    if (r < 0) r += params.ring;
    return static_cast<int>(r);
}

CodeArray::CodeArray(const CodeParams& params, std::size_t lane_width)
    : params_(params), width_(lane_width) {
    if (lane_width == 0) throw CodeError(ErrorCode::ShapeMismatch, "lane width must be at least 1");
    bytes_.assign(static_cast<std::size_t>(params.rows) * static_cast<std::size_t>(params.k + 2) * width_, 0);
    zero_.assign(width_, 0);
}

const std::uint8_t* CodeArray::virtual_read(std::int64_t i, int j) const {
    if (i < 0 || i >= params_.ring || j < 0 || j >= params_.k)
        throw CodeError(ErrorCode::IndexOutOfRing,
                        "virtual_read(" + std::to_string(i) + ", " + std::to_string(j) + ") outside ring");
    if (i >= params_.rows) return zero_.data();
    return cell(static_cast<int>(i), j);
}

void CodeArray::clear_column(int j) {
    for (int i = 0; i < params_.rows; ++i) lane_zero(cell(i, j), width_);
}

bool CodeArray::column_equal(const CodeArray& other, int j) const {
    for (int i = 0; i < params_.rows; ++i)
        if (std::memcmp(cell(i, j), other.cell(i, j), width_) != 0) return false;
    return true;
}

bool CodeArray::bit(int i, int j, std::size_t b) const noexcept {
    return (cell(i, j)[b / 8] >> (b % 8)) & 1U;
}

void CodeArray::set_bit(int i, int j, bool value, std::size_t b) noexcept {
    std::uint8_t& byte = cell(i, j)[b / 8];
    const auto mask = static_cast<std::uint8_t>(1U << (b % 8));
    byte = value ? static_cast<std::uint8_t>(byte | mask) : static_cast<std::uint8_t>(byte & ~mask);
}

ErasurePattern::ErasurePattern(const CodeParams& params, std::vector<int> columns) : erased_(std::move(columns)) {
    if (erased_.size() > 2)
        throw CodeError(ErrorCode::TooManyErasures, std::to_string(erased_.size()) + " columns erased, at most 2 supported");
    for (int c : erased_)
        if (c < 0 || c > params.k + 1)
            throw CodeError(ErrorCode::ColumnOutOfRange, "column " + std::to_string(c) + " outside [0, k+1]", c);
    std::sort(erased_.begin(), erased_.end());
    if (erased_.size() == 2 && erased_[0] == erased_[1])
        throw CodeError(ErrorCode::InvalidPattern, "duplicate column " + std::to_string(erased_[0]));
}

bool ErasurePattern::contains(int column) const noexcept {
    return std::find(erased_.begin(), erased_.end(), column) != erased_.end();
}

}  // namespace eoflex
