#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <vector>

namespace eoflex {

// Counts lane XORs. Each measured run owns one; pass nullptr to skip counting.
class XorCounter {
public:
    void add(std::uint64_t n = 1) noexcept { count_ += n; }
    std::uint64_t count() const noexcept { return count_; }
    void reset() noexcept { count_ = 0; }

private:
    std::uint64_t count_ = 0;
};

// dst ^= src over `width` bytes; one counted XOR.
inline void lane_xor(std::uint8_t* dst, const std::uint8_t* src, std::size_t width, XorCounter* counter) {
    for (std::size_t b = 0; b < width; ++b) dst[b] ^= src[b];
    if (counter) counter->add();
}

inline void lane_copy(std::uint8_t* dst, const std::uint8_t* src, std::size_t width) {
    std::memcpy(dst, src, width);
}

inline void lane_zero(std::uint8_t* dst, std::size_t width) {
    std::memset(dst, 0, width);
}

inline bool lane_is_zero(const std::uint8_t* lane, std::size_t width) {
    for (std::size_t b = 0; b < width; ++b)
        if (lane[b]) return false;
    return true;
}

// A contiguous run of equal-width lanes.
class LaneBlock {
public:
    LaneBlock() = default;
    LaneBlock(std::size_t count, std::size_t width) : count_(count), width_(width), bytes_(count * width, 0) {}

    std::size_t size() const noexcept { return count_; }
    std::size_t width() const noexcept { return width_; }
    std::uint8_t* operator[](std::size_t i) noexcept { return bytes_.data() + i * width_; }
    const std::uint8_t* operator[](std::size_t i) const noexcept { return bytes_.data() + i * width_; }
    std::vector<std::uint8_t>& bytes() noexcept { return bytes_; }
    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

    bool operator==(const LaneBlock&) const = default;

private:
    std::size_t count_ = 0;
    std::size_t width_ = 0;
    std::vector<std::uint8_t> bytes_;
};

}  // namespace eoflex
