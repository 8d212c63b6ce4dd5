#include "eoflex/oracle.hpp"

#include <bit>
#include <ostream>
#include <random>
#include <string>

#include "eoflex/error.hpp"

namespace eoflex {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * stride_, 0) {}

void BinaryMatrix::set(std::size_t r, std::size_t c, bool v) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    if (v) row(r)[c / 64] |= bit;
    else row(r)[c / 64] &= ~bit;
}

void BinaryMatrix::xor_row(std::size_t dst, std::size_t src) noexcept {
    std::uint64_t* d = row(dst);
    const std::uint64_t* s = row(src);
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void BinaryMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a == b) return;
    std::uint64_t* x = row(a);
    std::uint64_t* y = row(b);
    for (std::size_t w = 0; w < stride_; ++w) std::swap(x[w], y[w]);
}

std::size_t BinaryMatrix::row_weight(std::size_t r) const noexcept {
    std::size_t n = 0;
    const std::uint64_t* x = row(r);
    for (std::size_t w = 0; w < stride_; ++w) n += static_cast<std::size_t>(std::popcount(x[w]));
    return n;
}

std::size_t BinaryMatrix::rank() const {
    BinaryMatrix m = *this;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        std::size_t piv = rank;
        while (piv < rows_ && !m.get(piv, c)) ++piv;
        if (piv == rows_) continue;
        m.swap_rows(piv, rank);
        for (std::size_t r = 0; r < rows_; ++r)
            if (r != rank && m.get(r, c)) m.xor_row(r, rank);
        ++rank;
    }
    return rank;
}

std::vector<std::uint8_t> BinaryMatrix::multiply(const std::vector<std::uint8_t>& v) const {
    std::vector<std::uint8_t> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint8_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) acc ^= v[c] & 1U;
        out[r] = acc;
    }
    return out;
}

std::size_t codeword_index(const CodeParams& params, int i, int j) {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(params.rows) + static_cast<std::size_t>(i);
}

BinaryMatrix generator_matrix(const CodeParams& cp) {
    const std::size_t R = static_cast<std::size_t>(cp.rows);
    BinaryMatrix G(R * static_cast<std::size_t>(cp.k + 2), R * static_cast<std::size_t>(cp.k));
    for (int c = 0; c < cp.k; ++c) {
        for (int r = 0; r < cp.rows; ++r) {
            const std::size_t info = codeword_index(cp, r, c);
            G.set(info, info, true);
            G.flip(codeword_index(cp, r, cp.k), info);
            // The cell sits on diagonal (r + c) mod ring.
            const int diag = (r + c) % cp.ring;
            if (diag < cp.rows) {
                G.flip(codeword_index(cp, diag, cp.k + 1), info);
            } else if (diag - cp.rows < cp.t) {
                // A diagonal ending in virtual row rows+mu defines common bit mu.
                const int mu = diag - cp.rows;
                for (int row = 0; row < cp.n_c; ++row)
                    if (row % cp.t == mu) G.flip(codeword_index(cp, row, cp.k + 1), info);
            }
        }
    }
    return G;
}

namespace {

// One bit-plane of the codeword as a 0/1 vector.
std::vector<std::uint8_t> plane(const CodeArray& a, int columns, std::size_t bit) {
    const CodeParams& cp = a.params();
    std::vector<std::uint8_t> v(static_cast<std::size_t>(cp.rows) * static_cast<std::size_t>(columns));
    for (int j = 0; j < columns; ++j)
        for (int i = 0; i < cp.rows; ++i) v[codeword_index(cp, i, j)] = a.bit(i, j, bit) ? 1 : 0;
    return v;
}

}  // namespace

CodeArray generator_encode(const CodeArray& info) {
    const CodeParams& cp = info.params();
    const BinaryMatrix G = generator_matrix(cp);
    CodeArray out(cp, info.lane_width());
    const std::size_t bits = info.lane_width() * 8;
    for (std::size_t b = 0; b < bits; ++b) {
        const std::vector<std::uint8_t> word = G.multiply(plane(info, cp.k, b));
        for (int j = 0; j < cp.k + 2; ++j)
            for (int i = 0; i < cp.rows; ++i) out.set_bit(i, j, word[codeword_index(cp, i, j)] != 0, b);
    }
    return out;
}

CodeArray gaussian_decode(const CodeArray& received, const ErasurePattern& pattern) {
    const CodeParams& cp = received.params();
    const std::size_t w = received.lane_width();
    const BinaryMatrix G = generator_matrix(cp);

    std::vector<std::size_t> unknown;
    for (int c : pattern.erased())
        if (c < cp.k)
            for (int i = 0; i < cp.rows; ++i) unknown.push_back(codeword_index(cp, i, c));
    std::vector<std::size_t> known;
    for (int c = 0; c < cp.k; ++c)
        if (!pattern.contains(c))
            for (int i = 0; i < cp.rows; ++i) known.push_back(codeword_index(cp, i, c));

    CodeArray out = received;
    if (!unknown.empty()) {
        // One equation per surviving parity cell.
        std::vector<std::pair<int, int>> eq_cells;
        for (int c = cp.k; c < cp.k + 2; ++c)
            if (!pattern.contains(c))
                for (int i = 0; i < cp.rows; ++i) eq_cells.emplace_back(i, c);

        BinaryMatrix A(eq_cells.size(), unknown.size());
        LaneBlock rhs(eq_cells.size(), w);
        for (std::size_t e = 0; e < eq_cells.size(); ++e) {
            const auto [i, c] = eq_cells[e];
            const std::size_t g_row = codeword_index(cp, i, c);
            lane_copy(rhs[e], received.cell(i, c), w);
            for (std::size_t u = 0; u < unknown.size(); ++u)
                if (G.get(g_row, unknown[u])) A.set(e, u, true);
            for (std::size_t kn : known)
                if (G.get(g_row, kn)) {
                    const int col = static_cast<int>(kn / static_cast<std::size_t>(cp.rows));
                    const int row = static_cast<int>(kn % static_cast<std::size_t>(cp.rows));
                    lane_xor(rhs[e], received.cell(row, col), w, nullptr);
                }
        }

        std::size_t rank = 0;
        std::vector<std::uint8_t> tmp(w);
        for (std::size_t u = 0; u < unknown.size(); ++u) {
            std::size_t piv = rank;
            while (piv < eq_cells.size() && !A.get(piv, u)) ++piv;
            if (piv == eq_cells.size())
                throw CodeError(ErrorCode::Underdetermined, "no pivot for unknown " + std::to_string(u) + " of " + to_string(cp));
            A.swap_rows(piv, rank);
            if (piv != rank) {
                lane_copy(tmp.data(), rhs[piv], w);
                lane_copy(rhs[piv], rhs[rank], w);
                lane_copy(rhs[rank], tmp.data(), w);
            }
            for (std::size_t r = 0; r < eq_cells.size(); ++r)
                if (r != rank && A.get(r, u)) {
                    A.xor_row(r, rank);
                    lane_xor(rhs[r], rhs[rank], w, nullptr);
                }
            ++rank;
        }
        for (std::size_t u = 0; u < unknown.size(); ++u) {
            const int col = static_cast<int>(unknown[u] / static_cast<std::size_t>(cp.rows));
            const int row = static_cast<int>(unknown[u] % static_cast<std::size_t>(cp.rows));
            lane_copy(out.cell(row, col), rhs[u], w);
        }
    }

    // Erased parity columns from the generator rows.
    for (int c = cp.k; c < cp.k + 2; ++c) {
        if (!pattern.contains(c)) continue;
        for (int i = 0; i < cp.rows; ++i) {
            std::uint8_t* dst = out.cell(i, c);
            lane_zero(dst, w);
            const std::size_t g_row = codeword_index(cp, i, c);
            for (int jc = 0; jc < cp.k; ++jc)
                for (int ir = 0; ir < cp.rows; ++ir)
                    if (G.get(g_row, codeword_index(cp, ir, jc))) lane_xor(dst, out.cell(ir, jc), w, nullptr);
        }
    }
    return out;
}

bool pair_recoverable(const CodeParams& cp, const BinaryMatrix& G, int a, int b) {
    std::vector<std::size_t> unknown;
    for (int c : {a, b})
        if (c < cp.k)
            for (int i = 0; i < cp.rows; ++i) unknown.push_back(codeword_index(cp, i, c));
    if (unknown.empty()) return true;
    std::vector<std::size_t> eqs;
    for (int c = cp.k; c < cp.k + 2; ++c)
        if (c != a && c != b)
            for (int i = 0; i < cp.rows; ++i) eqs.push_back(codeword_index(cp, i, c));
    BinaryMatrix A(eqs.size(), unknown.size());
    for (std::size_t e = 0; e < eqs.size(); ++e)
        for (std::size_t u = 0; u < unknown.size(); ++u)
            if (G.get(eqs[e], unknown[u])) A.set(e, u, true);
    return A.rank() == unknown.size();
}

int MdsReport::failing_pairs() const {
    int n = 0;
    for (const PairResult& p : pairs)
        if (p.failures > 0 || p.underdetermined) ++n;
    return n;
}

MdsReport mds_exhaustive_check(const CodeParams& cp, int trials, std::uint64_t seed, std::size_t lane_width) {
    MdsReport report{cp, {}};
    std::mt19937_64 rng(seed);
    for (int a = 0; a < cp.k + 2; ++a) {
        for (int b = a + 1; b < cp.k + 2; ++b) {
            PairResult pr{a, b, 0, 0, false};
            const ErasurePattern pattern(cp, {a, b});
            for (int trial = 0; trial < trials; ++trial) {
                CodeArray info(cp, lane_width);
                for (int j = 0; j < cp.k; ++j)
                    for (int i = 0; i < cp.rows; ++i)
                        for (std::size_t byte = 0; byte < lane_width; ++byte)
                            info.cell(i, j)[byte] = static_cast<std::uint8_t>(rng());
                const CodeArray word = generator_encode(info);
                CodeArray damaged = word;
                damaged.clear_column(a);
                damaged.clear_column(b);
                ++pr.trials;
                try {
                    if (!(gaussian_decode(damaged, pattern) == word)) ++pr.failures;
                } catch (const CodeError& e) {
                    if (e.code() != ErrorCode::Underdetermined) throw;
                    pr.underdetermined = true;
                    ++pr.failures;
                }
            }
            report.pairs.push_back(pr);
        }
    }
    return report;
}

void write_csv(std::ostream& out, const MdsReport& report) {
    out << "tau,p,k,col_a,col_b,trials,failures,status\n";
    for (const PairResult& p : report.pairs) {
        const char* status = p.underdetermined ? "underdetermined" : (p.failures ? "fail" : "pass");
        out << report.params.tau << ',' << report.params.p << ',' << report.params.k << ',' << p.a << ',' << p.b
            << ',' << p.trials << ',' << p.failures << ',' << status << '\n';
    }
}

}  // namespace eoflex
