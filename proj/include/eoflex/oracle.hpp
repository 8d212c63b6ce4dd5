#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "eoflex/array.hpp"

namespace eoflex {

// Dense GF(2) matrix with word-packed rows.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const noexcept { return (row(r)[c / 64] >> (c % 64)) & 1U; }
    void set(std::size_t r, std::size_t c, bool v) noexcept;
    void flip(std::size_t r, std::size_t c) noexcept { row(r)[c / 64] ^= std::uint64_t{1} << (c % 64); }
    void xor_row(std::size_t dst, std::size_t src) noexcept;
    void swap_rows(std::size_t a, std::size_t b) noexcept;
    std::size_t row_weight(std::size_t r) const noexcept;

    std::size_t rank() const;

    // Matrix-vector product over GF(2); v has cols() entries of 0/1.
    std::vector<std::uint8_t> multiply(const std::vector<std::uint8_t>& v) const;

    bool operator==(const BinaryMatrix&) const = default;

private:
    std::uint64_t* row(std::size_t r) noexcept { return words_.data() + r * stride_; }
    const std::uint64_t* row(std::size_t r) const noexcept { return words_.data() + r * stride_; }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> words_;
};

// Bit positions: codeword index j*rows + i for cell (i, j); information index j*rows + i for j < k.
std::size_t codeword_index(const CodeParams& params, int i, int j);

// (k+2)*rows by k*rows generator built from the diagonal-membership description of each
// information cell, independently of the encoder.
BinaryMatrix generator_matrix(const CodeParams& params);

// Codeword computed from the generator, lane by lane.
CodeArray generator_encode(const CodeArray& info);

// Solves for the erased information columns from the surviving parity equations and fills
// every erased column. Throws Underdetermined if the system is rank deficient.
CodeArray gaussian_decode(const CodeArray& received, const ErasurePattern& pattern);

// Rank test: can the erased pair (a, b) be recovered at all?
bool pair_recoverable(const CodeParams& params, const BinaryMatrix& generator, int a, int b);

struct PairResult {
    int a = 0;
    int b = 0;
    int trials = 0;
    int failures = 0;
    bool underdetermined = false;
};

struct MdsReport {
    CodeParams params;
    std::vector<PairResult> pairs;
    int pairs_tested() const { return static_cast<int>(pairs.size()); }
    int failing_pairs() const;
};

MdsReport mds_exhaustive_check(const CodeParams& params, int trials, std::uint64_t seed, std::size_t lane_width = 1);

void write_csv(std::ostream& out, const MdsReport& report);

}  // namespace eoflex
