#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "eoflex/lane.hpp"
#include "eoflex/params.hpp"

namespace eoflex {

// Canonical representative of x modulo tau*p.
int mod_ring(const CodeParams& params, std::int64_t x);

// rows x (k+2) grid of lanes, row-major. Rows rows..ring-1 of the information
// columns read as zero through virtual_read.
class CodeArray {
public:
    static constexpr std::size_t kDefaultLaneWidth = 64;

    explicit CodeArray(const CodeParams& params, std::size_t lane_width = kDefaultLaneWidth);

    const CodeParams& params() const noexcept { return params_; }
    std::size_t lane_width() const noexcept { return width_; }
    int rows() const noexcept { return params_.rows; }
    int columns() const noexcept { return params_.k + 2; }

    std::uint8_t* cell(int i, int j) noexcept { return bytes_.data() + offset(i, j); }
    const std::uint8_t* cell(int i, int j) const noexcept { return bytes_.data() + offset(i, j); }

    // Information-column read with the virtual zero rows; i must lie in [0, ring).
    const std::uint8_t* virtual_read(std::int64_t i, int j) const;
    bool is_virtual_row(int i) const noexcept { return i >= params_.rows; }
    const std::uint8_t* zero_lane() const noexcept { return zero_.data(); }

    void clear_column(int j);
    bool column_equal(const CodeArray& other, int j) const;

    // Bit b of the lane at (i, j); lane_width=1 with bit 0 gives single-bit semantics.
    bool bit(int i, int j, std::size_t b = 0) const noexcept;
    void set_bit(int i, int j, bool value, std::size_t b = 0) noexcept;

    std::vector<std::uint8_t>& bytes() noexcept { return bytes_; }
    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

    bool operator==(const CodeArray& other) const {
        return params_ == other.params_ && width_ == other.width_ && bytes_ == other.bytes_;
    }

private:
    std::size_t offset(int i, int j) const noexcept {
        return (static_cast<std::size_t>(i) * static_cast<std::size_t>(params_.k + 2) + static_cast<std::size_t>(j)) * width_;
    }

    CodeParams params_;
    std::size_t width_;
    std::vector<std::uint8_t> bytes_;
    std::vector<std::uint8_t> zero_;
};

// Distinct column indices in [0, k+1], at most two.
class ErasurePattern {
public:
    ErasurePattern() = default;
    ErasurePattern(const CodeParams& params, std::vector<int> columns);
    ErasurePattern(const CodeParams& params, std::initializer_list<int> columns)
        : ErasurePattern(params, std::vector<int>(columns)) {}

    const std::vector<int>& erased() const noexcept { return erased_; }
    std::size_t size() const noexcept { return erased_.size(); }
    bool empty() const noexcept { return erased_.empty(); }
    bool contains(int column) const noexcept;

private:
    std::vector<int> erased_;  // sorted ascending
};

}  // namespace eoflex
