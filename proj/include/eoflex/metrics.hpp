#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eoflex/decoder.hpp"
#include "eoflex/params.hpp"
#include "eoflex/ratio.hpp"

namespace eoflex {

// Closed-form encode XOR count for the regime of `params`.
std::int64_t encode_formula(const CodeParams& params);
// XORs performed by one encode (data independent).
std::uint64_t count_encode_xors(const CodeParams& params);

enum class DecodeCase {
    GeStepEqualDivisible,
    GeStepEqualNonDivisible,
    GeStepLessDivisible,
    GeStepLessNonDivisible,
    LtStepEqual,
    LtStepLessDivisible,
    LtStepLessNonDivisible,
    LtStepGreaterDivisible,
    LtStepGreaterNonDivisible,
};

const char* to_string(DecodeCase c);

struct DecodeFormula {
    DecodeCase decode_case = DecodeCase::GeStepEqualDivisible;
    std::int64_t sum_part = 0;    // 2*rows - 1
    std::int64_t chain_part = 0;
    std::int64_t total() const { return sum_part + chain_part; }
};

DecodeFormula decode_formula(const CodeParams& params, int f, int g);

struct DecodeMeasurement {
    int f = 0;
    int g = 0;
    bool stalled = false;
    PlanInfo plan;
    std::uint64_t sum_xors = 0;
    std::uint64_t chain_xors = 0;
    std::uint64_t syndrome_xors = 0;
    DecodeFormula formula;

    std::uint64_t total() const { return sum_xors + chain_xors; }
    // Schedules other than the walkthrough are allowed formula + t.
    bool within_allowance(int t) const;
};

DecodeMeasurement count_decode_xors(const CodeParams& params, int f, int g);

struct UpdateComplexity {
    Ratio measured;    // average of update_cell touch counts
    Ratio exact;       // combinatorial expression
    Ratio formula;     // closed form
    Ratio lower_bound; // 2 + (1/p)(1 - 1/k)
};

UpdateComplexity measure_update_complexity(const CodeParams& params);
Ratio exact_update_complexity(const CodeParams& params);
Ratio update_formula(const CodeParams& params);

struct ComplexityReport {
    CodeParams params;
    std::uint64_t encode_xors = 0;
    std::int64_t encode_formula = 0;
    std::vector<DecodeMeasurement> decode;
    UpdateComplexity update;
    Ratio evenodd_plus_encode;
    Ratio evenodd_plus_decode;
    Ratio evenodd_plus_update;
    Ratio tau1_update;                         // exact value at (1, p, k)
    std::optional<Ratio> classic_update;       // classic EVENODD, when p is prime and p >= k
    std::optional<Ratio> classic_update_formula;

    std::int64_t info_bits() const { return params.info_bits(); }
};

std::vector<ComplexityReport> complexity_report(const std::vector<CodeParams>& params);

// Decode cases that exceed formula + t or stall, one line each.
std::vector<std::string> decode_deviations(const std::vector<ComplexityReport>& reports);

// Columns: params, metric, measured, formula, normalized-measured, normalized-formula.
void write_csv(std::ostream& out, const std::vector<ComplexityReport>& reports);
void write_text(std::ostream& out, const std::vector<ComplexityReport>& reports);

}  // namespace eoflex
