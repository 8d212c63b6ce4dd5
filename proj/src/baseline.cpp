#include "eoflex/baseline.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "eoflex/codec.hpp"
#include "eoflex/error.hpp"
#include "eoflex/oracle.hpp"
#include "eoflex/params.hpp"

namespace eoflex {

EvenoddParams validate_evenodd(std::int64_t p, std::int64_t k) {
    if (k < 2) throw CodeError(ErrorCode::KTooSmall, "k must be at least 2", k);
    if (p < 3 || p < k) throw CodeError(ErrorCode::PTooSmall, "p must be at least max(3, k), got " + std::to_string(p), p);
    if (smallest_divisor(p) != p) throw CodeError(ErrorCode::PNotPrime, std::to_string(p) + " is not prime", p);
    return EvenoddParams{static_cast<int>(p), static_cast<int>(k)};
}

EvenoddArray::EvenoddArray(const EvenoddParams& params, std::size_t lane_width)
    : params_(params), width_(lane_width),
      bytes_(static_cast<std::size_t>(params.rows()) * static_cast<std::size_t>(params.k + 2) * lane_width, 0) {}

void evenodd_encode(EvenoddArray& a, XorCounter* counter) {
    const EvenoddParams& ep = a.params();
    const int p = ep.p, k = ep.k, R = ep.rows();
    const std::size_t w = a.lane_width();
    for (int i = 0; i < R; ++i) {
        std::uint8_t* dst = a.cell(i, k);
        lane_copy(dst, a.cell(i, 0), w);
        for (int j = 1; j < k; ++j) lane_xor(dst, a.cell(i, j), w, counter);
    }
    // Common bit: the diagonal through the virtual row p-1.
    std::vector<std::uint8_t> common(w, 0);
    for (int j = 1; j < k; ++j) {
        if (j == 1) lane_copy(common.data(), a.cell(p - 1 - j, j), w);
        else lane_xor(common.data(), a.cell(p - 1 - j, j), w, counter);
    }
    for (int i = 0; i < R; ++i) {
        std::uint8_t* dst = a.cell(i, k + 1);
        bool first = true;
        for (int j = 0; j < k; ++j) {
            const int r = ((i - j) % p + p) % p;
            if (r == p - 1) continue;
            if (first) lane_copy(dst, a.cell(r, j), w);
            else lane_xor(dst, a.cell(r, j), w, counter);
            first = false;
        }
        if (first) lane_copy(dst, common.data(), w);
        else lane_xor(dst, common.data(), w, counter);
    }
}

Ratio evenodd_update_complexity(const EvenoddParams& ep) {
    const int R = ep.rows(), k = ep.k;
    EvenoddArray base(ep, 1);
    evenodd_encode(base);
    std::int64_t touched = 0;
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < k; ++j) {
            EvenoddArray flipped = base;
            flipped.cell(i, j)[0] ^= 1;
            evenodd_encode(flipped);
            for (int r = 0; r < R; ++r)
                for (int c = k; c < k + 2; ++c)
                    if (flipped.cell(r, c)[0] != base.cell(r, c)[0]) ++touched;
        }
    return Ratio(touched, static_cast<std::int64_t>(k) * R);
}

Ratio evenodd_update_formula(const EvenoddParams& ep) {
    const std::int64_t p = ep.p, k = ep.k;
    return Ratio(3) - Ratio(p + k - 2, k * (p - 1));
}

EvenoddPlusReference evenodd_plus_reference(int p, int k) {
    const std::int64_t den = static_cast<std::int64_t>(k) * (p - 1);
    const std::int64_t half = 2 * (k / 2);
    return EvenoddPlusReference{
        Ratio(2) - Ratio(2 * p - k, den),
        Ratio(2) + Ratio(half - 1, den),
        Ratio(2) + Ratio((half - 1) * (k - 1), den),
    };
}

namespace {

// Single-common-bit construction over the ring Z_p: row parity, diagonal parity through
// virtual row p-1, and one common bit added to the first 2*floor(k/2) diagonal rows.
BinaryMatrix evenodd_plus_generator(int p, int k) {
    const std::size_t R = static_cast<std::size_t>(p - 1);
    const int threshold = 2 * (k / 2);
    BinaryMatrix G(R * static_cast<std::size_t>(k + 2), R * static_cast<std::size_t>(k));
    auto idx = [&](int i, int j) { return static_cast<std::size_t>(j) * R + static_cast<std::size_t>(i); };
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < p - 1; ++i) {
            const std::size_t bit = idx(i, j);
            G.set(idx(i, j), bit, true);
            G.set(idx(i, k), bit, true);
            const int d = (i + j) % p;
            if (d != p - 1) {
                G.set(idx(d, k + 1), bit, true);
            } else {
                for (int r = 0; r < threshold; ++r) G.set(idx(r, k + 1), bit, true);
            }
        }
    return G;
}

}  // namespace

Tau1Check tau1_equivalence_check(int p, int k, int trials, std::uint64_t seed) {
    Tau1Check out;
    const CodeParams cp = validate_params(1, p, k);
    out.threshold = cp.n_c;
    const BinaryMatrix G = generator_matrix(cp);
    const BinaryMatrix ref = evenodd_plus_generator(p, k);
    out.generator_matches = G == ref;

    // Every information bit feeding more than one diagonal-parity row is a common-bit participant.
    std::set<std::vector<int>> row_sets;
    for (std::size_t c = 0; c < G.cols(); ++c) {
        std::vector<int> rows;
        for (int r = 0; r < cp.rows; ++r)
            if (G.get(codeword_index(cp, r, cp.k + 1), c)) rows.push_back(r);
        if (rows.size() > 1) row_sets.insert(rows);
    }
    out.common_bits = static_cast<int>(row_sets.size());
    if (row_sets.size() == 1) out.fed_rows = *row_sets.begin();

    std::mt19937_64 rng(seed);
    out.encode_matches = true;
    for (int trial = 0; trial < trials && out.encode_matches; ++trial) {
        CodeArray a(cp, 1);
        for (int j = 0; j < cp.k; ++j)
            for (int i = 0; i < cp.rows; ++i) a.cell(i, j)[0] = static_cast<std::uint8_t>(rng());
        CodeArray b = a;
        encode(a);
        for (std::size_t bit = 0; bit < 8; ++bit) {
            std::vector<std::uint8_t> v(G.cols());
            for (int j = 0; j < cp.k; ++j)
                for (int i = 0; i < cp.rows; ++i) v[codeword_index(cp, i, j)] = b.bit(i, j, bit);
            const std::vector<std::uint8_t> word = ref.multiply(v);
            for (int j = 0; j < cp.k + 2; ++j)
                for (int i = 0; i < cp.rows; ++i)
                    if (a.bit(i, j, bit) != (word[codeword_index(cp, i, j)] != 0)) out.encode_matches = false;
        }
    }

    std::vector<int> expected(static_cast<std::size_t>(2 * (k / 2)));
    for (std::size_t r = 0; r < expected.size(); ++r) expected[r] = static_cast<int>(r);
    out.pass = cp.t == 1 && cp.n_c == 2 * (k / 2) && out.common_bits == 1 && out.fed_rows == expected &&
               out.generator_matches && out.encode_matches;
    out.detail = "t=" + std::to_string(cp.t) + " threshold=" + std::to_string(cp.n_c) +
                 " common_bits=" + std::to_string(out.common_bits) + " fed_rows=" + std::to_string(out.fed_rows.size());
    return out;
}

}  // namespace eoflex
