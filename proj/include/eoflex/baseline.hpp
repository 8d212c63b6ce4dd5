#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eoflex/lane.hpp"
#include "eoflex/ratio.hpp"

namespace eoflex {

// Classic EVENODD: (p-1) x (k+2), p prime, p >= k.
struct EvenoddParams {
    int p = 0;
    int k = 0;
    int rows() const { return p - 1; }
    bool operator==(const EvenoddParams&) const = default;
};

EvenoddParams validate_evenodd(std::int64_t p, std::int64_t k);

class EvenoddArray {
public:
    EvenoddArray(const EvenoddParams& params, std::size_t lane_width = 1);

    const EvenoddParams& params() const noexcept { return params_; }
    std::size_t lane_width() const noexcept { return width_; }
    std::uint8_t* cell(int i, int j) noexcept { return bytes_.data() + offset(i, j); }
    const std::uint8_t* cell(int i, int j) const noexcept { return bytes_.data() + offset(i, j); }
    bool operator==(const EvenoddArray&) const = default;

private:
    std::size_t offset(int i, int j) const noexcept {
        return (static_cast<std::size_t>(i) * static_cast<std::size_t>(params_.k + 2) + static_cast<std::size_t>(j)) * width_;
    }
    EvenoddParams params_;
    std::size_t width_;
    std::vector<std::uint8_t> bytes_;
};

// Row parity in column k; common bit plus diagonal parity in every row of column k+1.
void evenodd_encode(EvenoddArray& array, XorCounter* counter = nullptr);

// Average number of parity cells that change when one information bit flips.
Ratio evenodd_update_complexity(const EvenoddParams& params);
Ratio evenodd_update_formula(const EvenoddParams& params);

// Reference formulas of the tau=1 construction (normalized per information bit).
struct EvenoddPlusReference {
    Ratio encode;
    Ratio decode;
    Ratio update;
};
EvenoddPlusReference evenodd_plus_reference(int p, int k);

struct Tau1Check {
    bool pass = false;
    int threshold = 0;                // common-row threshold of the (1,p,k) instance
    int common_bits = 0;              // distinct row sets fed by common-bit participants
    std::vector<int> fed_rows;        // rows of column k+1 fed by the common bit
    bool generator_matches = false;   // entrywise equality with the reference generator
    bool encode_matches = false;      // random encodes agree with the reference
    std::string detail;
};

Tau1Check tau1_equivalence_check(int p, int k, int trials, std::uint64_t seed = 1);

}  // namespace eoflex
