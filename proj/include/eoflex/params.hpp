#pragma once

#include <cstdint>
#include <string>

namespace eoflex {

// TauGE: tau >= k-1, TauLT: tau < k-1.
enum class Regime { TauGE, TauLT };

const char* to_string(Regime regime);

// Validated code geometry. Build through validate_params only.
struct CodeParams {
    int tau = 0;
    int p = 0;
    int k = 0;
    int t = 0;       // number of common bits, min(k-1, tau)
    int n_c = 0;     // leading rows of the diagonal parity column that carry a common bit
    Regime regime = Regime::TauGE;
    int rows = 0;    // tau*(p-1) stored rows
    int ring = 0;    // tau*p, modulus for row subscripts

    int columns() const { return k + 2; }
    int row_parity_column() const { return k; }
    int diag_parity_column() const { return k + 1; }
    int info_bits() const { return k * rows; }

    bool operator==(const CodeParams&) const = default;
};

CodeParams validate_params(std::int64_t tau, std::int64_t p, std::int64_t k);

// 2*floor(k/2)*t for both regimes.
int common_row_threshold(const CodeParams& params);

// Smallest divisor of p greater than 1, by trial division.
std::int64_t smallest_divisor(std::int64_t p);

std::string to_string(const CodeParams& params);

}  // namespace eoflex
