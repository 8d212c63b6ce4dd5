#include "eoflex/params.hpp"

#include <algorithm>

#include "eoflex/error.hpp"

namespace eoflex {

namespace {

// Keeps tau*p and the derived byte counts comfortably inside int.
constexpr std::int64_t kMaxRing = std::int64_t{1} << 20;

}  // namespace

const char* to_string(Regime regime) {
    return regime == Regime::TauGE ? "TauGE" : "TauLT";
}

std::int64_t smallest_divisor(std::int64_t p) {
    if (p % 2 == 0) return 2;
    for (std::int64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return d;
    return p;
}

int common_row_threshold(const CodeParams& params) {
    return 2 * (params.k / 2) * params.t;
}

CodeParams validate_params(std::int64_t tau, std::int64_t p, std::int64_t k) {
    if (tau < 1)
        throw CodeError(ErrorCode::NonPositiveTau, "tau must be at least 1, got " + std::to_string(tau), tau);
    if (k < 2)
        throw CodeError(ErrorCode::KTooSmall, "k must be at least 2, got " + std::to_string(k), k);
    if (p < 3 || p % 2 == 0)
        throw CodeError(ErrorCode::PNotOdd, "p must be odd and at least 3, got " + std::to_string(p), p);
    const std::int64_t d = smallest_divisor(p);
    if (d <= k - 1)
        throw CodeError(ErrorCode::DivisorConditionViolated,
                        "p=" + std::to_string(p) + " has divisor " + std::to_string(d) +
                            " which does not exceed k-1=" + std::to_string(k - 1),
                        d);
    if (tau > kMaxRing / p || k > kMaxRing)
        throw CodeError(ErrorCode::InvalidParams, "array too large");

    CodeParams cp;
    cp.tau = static_cast<int>(tau);
    cp.p = static_cast<int>(p);
    cp.k = static_cast<int>(k);
    cp.t = static_cast<int>(std::min(k - 1, tau));
    cp.regime = tau >= k - 1 ? Regime::TauGE : Regime::TauLT;
    cp.rows = cp.tau * (cp.p - 1);
    cp.ring = cp.tau * cp.p;
    cp.n_c = common_row_threshold(cp);
    if (cp.n_c > cp.rows)
        throw CodeError(ErrorCode::CommonRowsExceedArray,
                        "n_c=" + std::to_string(cp.n_c) + " exceeds rows=" + std::to_string(cp.rows), cp.n_c);
    return cp;
}

std::string to_string(const CodeParams& params) {
    return "(" + std::to_string(params.tau) + "," + std::to_string(params.p) + "," + std::to_string(params.k) + ")";
}

}  // namespace eoflex
