#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "eoflex/array.hpp"
#include "eoflex/lane.hpp"

namespace eoflex {

// Reduced equations for two erased information columns f < g:
//   row_syn[i]  = b[i][f] ^ b[i][g]
//   diag_syn[i] = b[i-f][f] ^ b[i-g][g] (^ s_prime[i mod t] for i < n_c)
struct SyndromePair {
    int f = 0;
    int g = 0;
    LaneBlock row_syn;
    LaneBlock diag_syn;
    LaneBlock s_prime;                // filled by decode_two_info
    std::vector<bool> s_prime_known;
    std::vector<std::uint8_t> sum_s;  // XOR of all common bits
    std::vector<std::uint8_t> sum_s_prime;
};

// How the two-information-column plan was scheduled.
//   Walkthrough: step g-f = k-1 dividing the row count with tau >= k-1; every chain is
//                walked forward from its virtual start, common bits fixed up afterwards.
//   Interleaved: tau < k-1 and g-f = tau; each row residue class mod tau is an independent
//                single-common-bit problem.
//   Unified:     everything else; chain segments are walked either with known common bits
//                or symbolically, whichever set of choices is cheapest.
enum class Schedule { Walkthrough, Interleaved, Unified };

const char* to_string(Schedule schedule);

struct PlanInfo {
    Schedule schedule = Schedule::Unified;
    int f = 0;
    int g = 0;
    std::size_t xor_ops = 0;       // counted XORs per stripe, excluding sum_s
    int segments = 0;
    int symbolic_segments = 0;
    bool uses_sum = false;          // whether the common-bit sum enters the solve
};

// Split of the XORs spent on a two-information decode.
struct DecodeCounters {
    XorCounter syndromes;  // parity minus surviving contributions
    XorCounter sum;        // XOR of all parity lanes
    XorCounter chain;      // chain solve
    std::uint64_t counted() const noexcept { return sum.count() + chain.count(); }
};

// Restores every erased column in place.
CodeArray& decode(CodeArray& array, const ErasurePattern& pattern, DecodeCounters* counters = nullptr);

void decode_info_via_row_parity(CodeArray& array, int f, const ErasurePattern& pattern, XorCounter* counter = nullptr);
void decode_info_with_diag_parity(CodeArray& array, int f, const ErasurePattern& pattern, XorCounter* counter = nullptr);

// XOR of all 2*rows parity lanes; equals the XOR of all common bits.
std::vector<std::uint8_t> sum_common_bits(const CodeArray& array, XorCounter* counter = nullptr);

SyndromePair build_syndromes(const CodeArray& array, int f, int g, DecodeCounters* counters = nullptr);

void decode_two_info(CodeArray& array, int f, int g, DecodeCounters* counters = nullptr);

// Compiles (without running) the plan for erased information columns f < g.
PlanInfo describe_two_info_plan(const CodeParams& params, int f, int g);

// True when the chain system for (f, g) has full rank.
bool two_info_recoverable(const CodeParams& params, int f, int g);

}  // namespace eoflex
