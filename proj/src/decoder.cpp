#include "eoflex/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

#include "eoflex/codec.hpp"
#include "eoflex/error.hpp"

namespace eoflex {

const char* to_string(Schedule schedule) {
    switch (schedule) {
    case Schedule::Walkthrough: return "walkthrough";
    case Schedule::Interleaved: return "interleaved";
    case Schedule::Unified: return "unified";
    }
    return "unknown";
}

namespace {

// Subset of the t common-bit indices.
class Mask {
public:
    Mask() = default;
    explicit Mask(int bits) : words_(static_cast<std::size_t>((bits + 63) / 64), 0) {}

    void flip(int b) { words_[static_cast<std::size_t>(b / 64)] ^= std::uint64_t{1} << (b % 64); }
    bool test(int b) const { return (words_[static_cast<std::size_t>(b / 64)] >> (b % 64)) & 1U; }
    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }
    int count() const {
        int n = 0;
        for (std::uint64_t w : words_) n += std::popcount(w);
        return n;
    }
    int highest() const {
        for (std::size_t i = words_.size(); i-- > 0;)
            if (words_[i]) return static_cast<int>(i * 64) + std::bit_width(words_[i]) - 1;
        return -1;
    }
    Mask& operator^=(const Mask& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    bool operator==(const Mask&) const = default;
    bool operator<(const Mask& o) const { return words_ < o.words_; }

private:
    std::vector<std::uint64_t> words_;
};

struct PlanOp {
    enum Kind : std::uint8_t { Zero, Copy, Xor };
    Kind kind;
    std::uint32_t dst;
    std::uint32_t src;
};

// Fixed slot layout; temporaries are appended after fixed().
struct Layout {
    int R;
    int t;
    int rs(int i) const { return i; }
    int ds(int i) const { return R + i; }
    int sig() const { return 2 * R; }
    int x(int r) const { return 2 * R + 1 + r; }
    int y(int r) const { return 3 * R + 1 + r; }
    int sp(int mu) const { return 4 * R + 1 + mu; }
    int fixed() const { return 4 * R + 1 + t; }
};

struct Edge {
    int syn = -1;  // syndrome slot, -1 on a virtual diagonal
    int bit = -1;  // common-bit index carried by the equation, -1 for none
};

// Alternating chain y_v -> D -> x -> A -> y -> ... between two virtual positions.
// Node 0 and node M+1 are the virtual endpoints; edge j joins node j and node j+1.
struct Segment {
    std::vector<Edge> edges;
    std::vector<int> cells;
    Mask relation;
};

class Builder {
public:
    explicit Builder(int fixed_slots) : zero_(static_cast<std::size_t>(fixed_slots), 1), assigned_(zero_.size(), 0) {}

    void mark_input(int slot) {
        zero_[static_cast<std::size_t>(slot)] = 0;
        assigned_[static_cast<std::size_t>(slot)] = 1;
    }
    int alloc() {
        zero_.push_back(1);
        assigned_.push_back(0);
        return static_cast<int>(zero_.size()) - 1;
    }
    bool is_zero(int slot) const { return zero_[static_cast<std::size_t>(slot)] != 0; }
    bool assigned(int slot) const { return assigned_[static_cast<std::size_t>(slot)] != 0; }

    // dst = XOR of terms; negative and known-zero terms are dropped.
    void emit(int dst, std::initializer_list<int> terms) { emit(dst, std::vector<int>(terms)); }
    void emit(int dst, const std::vector<int>& terms) {
        std::vector<int> live;
        for (int s : terms)
            if (s >= 0 && !is_zero(s)) live.push_back(s);
        assigned_[static_cast<std::size_t>(dst)] = 1;
        if (live.empty()) {
            ops_.push_back({PlanOp::Zero, static_cast<std::uint32_t>(dst), 0});
            zero_[static_cast<std::size_t>(dst)] = 1;
            return;
        }
        auto self = std::find(live.begin(), live.end(), dst);
        if (self != live.end()) {
            live.erase(self);
        } else {
            ops_.push_back({PlanOp::Copy, static_cast<std::uint32_t>(dst), static_cast<std::uint32_t>(live.front())});
            live.erase(live.begin());
        }
        for (int s : live) ops_.push_back({PlanOp::Xor, static_cast<std::uint32_t>(dst), static_cast<std::uint32_t>(s)});
        zero_[static_cast<std::size_t>(dst)] = 0;
    }

    std::vector<PlanOp> take_ops() { return std::move(ops_); }
    std::size_t slots() const { return zero_.size(); }

private:
    std::vector<char> zero_;
    std::vector<char> assigned_;
    std::vector<PlanOp> ops_;
};

struct Plan {
    PlanInfo info;
    std::size_t slots = 0;
    std::vector<PlanOp> ops;
    std::vector<int> solved_sp;  // common-bit indices with a value in the SP slots
};

class Compiler {
public:
    Compiler(const CodeParams& cp, int f, int g) : cp_(cp), f_(f), g_(g), L_{cp.rows, cp.t} {
        for (int mu = 0; mu < cp_.t; ++mu)
            if (mu < g_) unknown_.push_back(mu);
        build_segments();
    }

    Plan compile() {
        const int d = g_ - f_;
        Schedule schedule = Schedule::Unified;
        if (cp_.regime == Regime::TauGE && d == cp_.k - 1 && cp_.rows % d == 0)
            schedule = Schedule::Walkthrough;
        else if (cp_.regime == Regime::TauLT && d == cp_.tau)
            schedule = Schedule::Interleaved;

        const std::size_t n = segs_.size();
        std::vector<int> q_sym(n), q_known(n), c_sym(n), c_known(n);
        for (std::size_t s = 0; s < n; ++s) {
            const int M = static_cast<int>(segs_[s].cells.size());
            if (schedule == Schedule::Walkthrough) {
                q_sym[s] = q_known[s] = M;
                c_sym[s] = simulate(segs_[s], M, false);
                c_known[s] = simulate(segs_[s], M, true);
            } else {
                best_split(segs_[s], false, q_sym[s], c_sym[s]);
                best_split(segs_[s], true, q_known[s], c_known[s]);
            }
        }

        Mask full(cp_.t);
        for (int mu : unknown_) full.flip(mu);

        std::vector<std::size_t> candidates;
        for (std::size_t s = 0; s < n; ++s)
            if (segs_[s].relation.any()) candidates.push_back(s);

        std::vector<std::size_t> symbolic;
        bool use_sum = false;
        if (schedule == Schedule::Walkthrough) {
            symbolic = candidates;
            std::vector<Mask> rows;
            for (std::size_t s : symbolic) rows.push_back(segs_[s].relation);
            if (schedule == Schedule::Walkthrough) rows.push_back(full);
            auto solved = solve_cost(rows);
            if (!solved) throw stall();
            use_sum = schedule == Schedule::Walkthrough && solved->second.back();
        } else {
            select_unified(candidates, full, c_sym, c_known, symbolic, use_sum);
        }

        Builder b(L_.fixed());
        for (int i = 0; i < cp_.rows; ++i) {
            b.mark_input(L_.rs(i));
            b.mark_input(L_.ds(i));
        }
        b.mark_input(L_.sig());

        std::vector<char> is_symbolic(n, 0);
        std::vector<std::pair<Mask, int>> relations;
        std::vector<std::pair<int, Mask>> fixups;
        for (std::size_t s : symbolic) {
            is_symbolic[s] = 1;
            emit_walk(b, segs_[s], q_sym[s], false, &relations, &fixups);
        }
        // Same row order as used during selection, so the same rows are kept.
        if (use_sum) {
            if (schedule != Schedule::Walkthrough) relations.insert(relations.begin(), {full, L_.sig()});
            else relations.emplace_back(full, L_.sig());
        }
        for (int mu = 0; mu < cp_.t; ++mu)
            if (mu >= g_) b.emit(L_.sp(mu), {});
        solve(b, relations);
        apply_fixups(b, fixups);
        for (std::size_t s = 0; s < n; ++s)
            if (!is_symbolic[s]) emit_walk(b, segs_[s], q_known[s], true, nullptr, nullptr);

        for (int r = 0; r < cp_.rows; ++r)
            if (!b.assigned(L_.x(r)) || !b.assigned(L_.y(r)))
                throw CodeError(ErrorCode::ChainStall, "row " + std::to_string(r) + " left unknown");

        Plan plan;
        plan.info.schedule = schedule;
        plan.info.f = f_;
        plan.info.g = g_;
        plan.info.segments = static_cast<int>(n);
        plan.info.symbolic_segments = static_cast<int>(symbolic.size());
        plan.info.uses_sum = use_sum;
        plan.slots = b.slots();
        plan.ops = b.take_ops();
        plan.info.xor_ops = static_cast<std::size_t>(
            std::count_if(plan.ops.begin(), plan.ops.end(), [](const PlanOp& op) { return op.kind == PlanOp::Xor; }));
        plan.solved_sp = unknown_;
        return plan;
    }

private:
    CodeError stall() const {
        return CodeError(ErrorCode::ChainStall, "common-bit system for columns " + std::to_string(f_) + "," +
                                                    std::to_string(g_) + " of " + to_string(cp_) + " is rank deficient");
    }

    void build_segments() {
        const int R = cp_.rows, N = cp_.ring, d = g_ - f_;
        for (int v = R; v < N; ++v) {
            Segment seg;
            seg.relation = Mask(cp_.t);
            int r = v;
            for (;;) {
                seg.edges.push_back(diag_edge((r + g_) % N));
                r = (r + d) % N;
                if (r >= R) break;
                seg.cells.push_back(L_.x(r));
                seg.edges.push_back(Edge{L_.rs(r), -1});
                seg.cells.push_back(L_.y(r));
            }
            for (const Edge& e : seg.edges)
                if (e.bit >= 0) seg.relation.flip(e.bit);
            segs_.push_back(std::move(seg));
        }
    }

    Edge diag_edge(int i) const {
        Edge e;
        if (i < cp_.rows) {
            e.syn = L_.ds(i);
            if (i < cp_.n_c) e.bit = i % cp_.t;
        } else if (i - cp_.rows < cp_.t) {
            e.bit = i - cp_.rows;
        }
        // Common bits whose two participants are both virtual are identically zero.
        if (e.bit >= g_) e.bit = -1;
        return e;
    }

    // Counted XORs of a walk meeting at edge q; known selects pre-solved common bits.
    int simulate(const Segment& seg, int q, bool known) const {
        const int M = static_cast<int>(seg.cells.size());
        std::vector<char> lz(static_cast<std::size_t>(M + 2), 1);
        std::vector<Mask> mask(static_cast<std::size_t>(M + 2), Mask(cp_.t));
        int cost = 0;
        auto live = [&](int j) { return j >= 1 && j <= M && !lz[static_cast<std::size_t>(j)]; };
        for (int j = 0; j < q; ++j) {
            const Edge& e = seg.edges[static_cast<std::size_t>(j)];
            int terms = (e.syn >= 0) + live(j);
            Mask m = mask[static_cast<std::size_t>(j)];
            if (e.bit >= 0) {
                if (known) ++terms;
                else m.flip(e.bit);
            }
            cost += std::max(0, terms - 1);
            lz[static_cast<std::size_t>(j + 1)] = terms == 0;
            mask[static_cast<std::size_t>(j + 1)] = m;
        }
        for (int j = M; j > q; --j) {
            const Edge& e = seg.edges[static_cast<std::size_t>(j)];
            int terms = (e.syn >= 0) + live(j + 1);
            Mask m = mask[static_cast<std::size_t>(j + 1)];
            if (e.bit >= 0) {
                if (known) ++terms;
                else m.flip(e.bit);
            }
            cost += std::max(0, terms - 1);
            lz[static_cast<std::size_t>(j)] = terms == 0;
            mask[static_cast<std::size_t>(j)] = m;
        }
        if (!known) {
            const Edge& e = seg.edges[static_cast<std::size_t>(q)];
            const int terms = (e.syn >= 0) + live(q) + live(q + 1);
            cost += std::max(0, terms - 1);
            for (int j = 1; j <= M; ++j)
                if (mask[static_cast<std::size_t>(j)].any() && !lz[static_cast<std::size_t>(j)]) ++cost;
        }
        return cost;
    }

    void best_split(const Segment& seg, bool known, int& q_out, int& c_out) const {
        const int M = static_cast<int>(seg.cells.size());
        q_out = 0;
        c_out = simulate(seg, 0, known);
        for (int q = 1; q <= M; ++q) {
            const int c = simulate(seg, q, known);
            if (c < c_out) {
                c_out = c;
                q_out = q;
            }
        }
    }

    // Picks independent rows in order; returns elimination cost and which rows were kept.
    std::optional<std::pair<int, std::vector<char>>> solve_cost(const std::vector<Mask>& rows) const {
        std::vector<std::optional<Mask>> basis(static_cast<std::size_t>(cp_.t));
        std::vector<char> kept(rows.size(), 0);
        std::vector<Mask> chosen;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            Mask m = rows[r];
            while (m.any()) {
                const int h = m.highest();
                auto& slot = basis[static_cast<std::size_t>(h)];
                if (slot) {
                    m ^= *slot;
                } else {
                    slot = m;
                    kept[r] = 1;
                    chosen.push_back(rows[r]);
                    break;
                }
            }
        }
        if (chosen.size() < unknown_.size()) return std::nullopt;
        int cost = 0;
        std::vector<char> used(chosen.size(), 0);
        for (int mu : unknown_) {
            const std::size_t piv = pick_pivot(chosen, used, mu);
            for (std::size_t i = 0; i < chosen.size(); ++i)
                if (i != piv && chosen[i].test(mu)) {
                    chosen[i] ^= chosen[piv];
                    ++cost;
                }
            used[piv] = 1;
        }
        return std::make_pair(cost, kept);
    }

    static std::size_t pick_pivot(const std::vector<Mask>& rows, const std::vector<char>& used, int mu) {
        std::size_t best = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (!used[i] && rows[i].test(mu) && (best == rows.size() || rows[i].count() < rows[best].count()))
                best = i;
        return best;
    }

    void select_unified(const std::vector<std::size_t>& candidates, const Mask& full, const std::vector<int>& c_sym,
                        const std::vector<int>& c_known, std::vector<std::size_t>& symbolic, bool& use_sum) const {
        int base = 0;
        for (int c : c_known) base += c;
        std::optional<int> best_cost;
        auto consider = [&](const std::vector<std::size_t>& subset) {
            std::vector<Mask> rows{full};
            for (std::size_t s : subset) rows.push_back(segs_[s].relation);
            auto solved = solve_cost(rows);
            if (!solved) return;
            int cost = base + solved->first;
            for (std::size_t s : subset) cost += c_sym[s] - c_known[s];
            if (!best_cost || cost < *best_cost) {
                best_cost = cost;
                symbolic = subset;
                use_sum = solved->second.front() != 0;
            }
        };
        constexpr std::size_t kExhaustiveLimit = 12;
        if (candidates.size() <= kExhaustiveLimit) {
            const std::size_t n = candidates.size();
            for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n); ++bits) {
                std::vector<std::size_t> subset;
                for (std::size_t i = 0; i < n; ++i)
                    if (bits >> i & 1U) subset.push_back(candidates[i]);
                consider(subset);
            }
        } else {
            std::vector<std::size_t> order = candidates;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return c_sym[a] - c_known[a] < c_sym[b] - c_known[b];
            });
            std::vector<std::size_t> subset;
            std::vector<Mask> rows{full};
            for (std::size_t s : order) {
                if (solve_cost(rows)) break;
                rows.push_back(segs_[s].relation);
                subset.push_back(s);
            }
            consider(subset);
        }
        if (!best_cost) throw stall();
    }

    void emit_walk(Builder& b, const Segment& seg, int q, bool known, std::vector<std::pair<Mask, int>>* relations,
                   std::vector<std::pair<int, Mask>>* fixups) const {
        const int M = static_cast<int>(seg.cells.size());
        auto node = [&](int j) { return (j >= 1 && j <= M) ? seg.cells[static_cast<std::size_t>(j - 1)] : -1; };
        std::vector<Mask> mask(static_cast<std::size_t>(M + 2), Mask(cp_.t));
        auto step = [&](int edge, int from, int to) {
            const Edge& e = seg.edges[static_cast<std::size_t>(edge)];
            Mask m = mask[static_cast<std::size_t>(from)];
            int common = -1;
            if (e.bit >= 0) {
                if (known) common = L_.sp(e.bit);
                else m.flip(e.bit);
            }
            b.emit(node(to), {e.syn, node(from), common});
            mask[static_cast<std::size_t>(to)] = m;
        };
        for (int j = 0; j < q; ++j) step(j, j, j + 1);
        for (int j = M; j > q; --j) step(j, j + 1, j);
        if (known) return;
        const Edge& e = seg.edges[static_cast<std::size_t>(q)];
        Mask rel = mask[static_cast<std::size_t>(q)];
        rel ^= mask[static_cast<std::size_t>(q + 1)];
        if (e.bit >= 0) rel.flip(e.bit);
        const int slot = b.alloc();
        b.emit(slot, {e.syn, node(q), node(q + 1)});
        relations->emplace_back(rel, slot);
        for (int j = 1; j <= M; ++j)
            if (mask[static_cast<std::size_t>(j)].any()) fixups->emplace_back(node(j), mask[static_cast<std::size_t>(j)]);
    }

    // Gauss-Jordan over the relation rows; each unknown common bit lands in its SP slot.
    void solve(Builder& b, const std::vector<std::pair<Mask, int>>& relations) const {
        std::vector<Mask> masks;
        for (const auto& r : relations) masks.push_back(r.first);
        auto solved = solve_cost(masks);
        if (!solved) throw stall();
        struct Row {
            Mask mask;
            int slot;
            bool owned;
        };
        std::vector<Row> work;
        for (std::size_t i = 0; i < relations.size(); ++i)
            if (solved->second[i]) work.push_back({relations[i].first, relations[i].second, false});
        std::vector<char> used(work.size(), 0);
        std::vector<Mask> rows;
        for (const Row& w : work) rows.push_back(w.mask);
        for (int mu : unknown_) {
            const std::size_t piv = pick_pivot(rows, used, mu);
            for (std::size_t i = 0; i < work.size(); ++i) {
                if (i == piv || !work[i].mask.test(mu)) continue;
                if (!work[i].owned) {
                    const int fresh = b.alloc();
                    b.emit(fresh, {work[i].slot, work[piv].slot});
                    work[i].slot = fresh;
                    work[i].owned = true;
                } else {
                    b.emit(work[i].slot, {work[i].slot, work[piv].slot});
                }
                work[i].mask ^= work[piv].mask;
                rows[i] = work[i].mask;
            }
            used[piv] = 1;
        }
        for (const Row& w : work) {
            const int mu = w.mask.highest();
            if (w.mask.count() != 1) throw stall();
            b.emit(L_.sp(mu), {w.slot});
        }
    }

    void apply_fixups(Builder& b, const std::vector<std::pair<int, Mask>>& fixups) const {
        std::map<Mask, int> combos;
        for (const auto& [slot, mask] : fixups) {
            int src;
            if (mask.count() == 1) {
                src = L_.sp(mask.highest());
            } else {
                auto it = combos.find(mask);
                if (it == combos.end()) {
                    std::vector<int> parts;
                    for (int mu = 0; mu < cp_.t; ++mu)
                        if (mask.test(mu)) parts.push_back(L_.sp(mu));
                    const int c = b.alloc();
                    b.emit(c, parts);
                    it = combos.emplace(mask, c).first;
                }
                src = it->second;
            }
            b.emit(slot, {slot, src});
        }
    }

    const CodeParams& cp_;
    int f_;
    int g_;
    Layout L_;
    std::vector<int> unknown_;
    std::vector<Segment> segs_;
};

using PlanKey = std::tuple<int, int, int, int, int>;

std::shared_ptr<const Plan> plan_for(const CodeParams& cp, int f, int g) {
    static std::mutex mu;
    static std::map<PlanKey, std::shared_ptr<const Plan>> cache;
    const PlanKey key{cp.tau, cp.p, cp.k, f, g};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto plan = std::make_shared<const Plan>(Compiler(cp, f, g).compile());
    std::lock_guard<std::mutex> lock(mu);
    constexpr std::size_t kMaxCached = 256;
    if (cache.size() >= kMaxCached) cache.clear();
    cache.emplace(key, plan);
    return plan;
}

void check_info_pair(const CodeParams& cp, int f, int g) {
    if (f < 0 || g >= cp.k || f >= g)
        throw CodeError(ErrorCode::InvalidPattern,
                        "expected information columns f < g < k, got " + std::to_string(f) + "," + std::to_string(g));
}

}  // namespace

std::vector<std::uint8_t> sum_common_bits(const CodeArray& array, XorCounter* counter) {
    const CodeParams& cp = array.params();
    const std::size_t w = array.lane_width();
    std::vector<std::uint8_t> acc(array.cell(0, cp.k), array.cell(0, cp.k) + w);
    for (int i = 0; i < cp.rows; ++i) {
        if (i > 0) lane_xor(acc.data(), array.cell(i, cp.k), w, counter);
        lane_xor(acc.data(), array.cell(i, cp.k + 1), w, counter);
    }
    return acc;
}

void decode_info_via_row_parity(CodeArray& array, int f, const ErasurePattern& pattern, XorCounter* counter) {
    const CodeParams& cp = array.params();
    if (f < 0 || f >= cp.k) throw CodeError(ErrorCode::ColumnOutOfRange, "column " + std::to_string(f) + " is not an information column", f);
    if (pattern.contains(cp.k)) throw CodeError(ErrorCode::RowParityMissing, "row parity column is erased");
    for (int c : pattern.erased())
        if (c != f && c < cp.k) throw CodeError(ErrorCode::InvalidPattern, "another information column is erased");
    const std::size_t w = array.lane_width();
    for (int i = 0; i < cp.rows; ++i) {
        std::uint8_t* dst = array.cell(i, f);
        lane_copy(dst, array.cell(i, cp.k), w);
        for (int j = 0; j < cp.k; ++j)
            if (j != f) lane_xor(dst, array.cell(i, j), w, counter);
    }
}

void decode_info_with_diag_parity(CodeArray& array, int f, const ErasurePattern& pattern, XorCounter* counter) {
    const CodeParams& cp = array.params();
    if (f < 0 || f >= cp.k) throw CodeError(ErrorCode::ColumnOutOfRange, "column " + std::to_string(f) + " is not an information column", f);
    if (pattern.contains(cp.k + 1)) throw CodeError(ErrorCode::DiagParityMissing, "diagonal parity column is erased");
    for (int c : pattern.erased())
        if (c != f && c < cp.k) throw CodeError(ErrorCode::InvalidPattern, "another information column is erased");
    const std::size_t w = array.lane_width();

    // Diagonal row i minus every surviving term, i.e. b[i-f][f] (+ S for i < n_c).
    auto reduced = [&](int i, std::uint8_t* dst) {
        lane_copy(dst, array.cell(i, cp.k + 1), w);
        for (int j = 0; j < cp.k; ++j) {
            if (j == f) continue;
            const int r = mod_ring(cp, i - j);
            if (r < cp.rows) lane_xor(dst, array.cell(r, j), w, counter);
        }
    };

    LaneBlock common(static_cast<std::size_t>(cp.t), w);
    if (f == 0) {
        common = compute_common_bits(array, counter).s;
    } else {
        std::vector<char> have(static_cast<std::size_t>(cp.t), 0);
        // Rows f-1 .. max(0, f-t) have a virtual column-f term, leaving only the common bit.
        for (int i = f - 1; i >= std::max(0, f - cp.t); --i) {
            const int mu = i % cp.t;
            reduced(i, common[static_cast<std::size_t>(mu)]);
            have[static_cast<std::size_t>(mu)] = 1;
        }
        for (int mu = 0; mu < cp.t; ++mu) {
            if (have[static_cast<std::size_t>(mu)]) continue;
            // mu >= f: the column-f participant is virtual, every other participant survives.
            std::uint8_t* dst = common[static_cast<std::size_t>(mu)];
            lane_zero(dst, w);
            bool first = true;
            for (int j = mu + 1; j < cp.k; ++j) {
                if (j == f) continue;
                if (first) lane_copy(dst, array.cell(cp.rows + mu - j, j), w);
                else lane_xor(dst, array.cell(cp.rows + mu - j, j), w, counter);
                first = false;
            }
        }
    }
    std::vector<std::uint8_t> scratch(w);
    for (int i = 0; i < cp.rows; ++i) {
        const int r = mod_ring(cp, i - f);
        if (r >= cp.rows) continue;
        reduced(i, scratch.data());
        if (i < cp.n_c) lane_xor(scratch.data(), common[static_cast<std::size_t>(i % cp.t)], w, counter);
        lane_copy(array.cell(r, f), scratch.data(), w);
    }
    // Column-f cells whose diagonal is virtual are participants of S_mu, mu < f.
    for (int mu = 0; mu < std::min(f, cp.t); ++mu) {
        std::uint8_t* dst = array.cell(cp.rows + mu - f, f);
        lane_copy(dst, common[static_cast<std::size_t>(mu)], w);
        for (int j = mu + 1; j < cp.k; ++j)
            if (j != f) lane_xor(dst, array.cell(cp.rows + mu - j, j), w, counter);
    }
}

SyndromePair build_syndromes(const CodeArray& array, int f, int g, DecodeCounters* counters) {
    const CodeParams& cp = array.params();
    check_info_pair(cp, f, g);
    const std::size_t w = array.lane_width();
    XorCounter* sc = counters ? &counters->syndromes : nullptr;

    SyndromePair sp;
    sp.f = f;
    sp.g = g;
    sp.row_syn = LaneBlock(static_cast<std::size_t>(cp.rows), w);
    sp.diag_syn = LaneBlock(static_cast<std::size_t>(cp.rows), w);
    sp.s_prime = LaneBlock(static_cast<std::size_t>(cp.t), w);
    sp.s_prime_known.assign(static_cast<std::size_t>(cp.t), false);

    // Surviving participants of each common bit.
    LaneBlock survivors(static_cast<std::size_t>(cp.t), w);
    std::vector<char> survivor_live(static_cast<std::size_t>(cp.t), 0);
    for (int mu = 0; mu < cp.t; ++mu)
        for (int j = mu + 1; j < cp.k; ++j) {
            if (j == f || j == g) continue;
            std::uint8_t* dst = survivors[static_cast<std::size_t>(mu)];
            if (survivor_live[static_cast<std::size_t>(mu)]) lane_xor(dst, array.cell(cp.rows + mu - j, j), w, sc);
            else lane_copy(dst, array.cell(cp.rows + mu - j, j), w);
            survivor_live[static_cast<std::size_t>(mu)] = 1;
        }

    for (int i = 0; i < cp.rows; ++i) {
        std::uint8_t* row = sp.row_syn[static_cast<std::size_t>(i)];
        lane_copy(row, array.cell(i, cp.k), w);
        for (int j = 0; j < cp.k; ++j)
            if (j != f && j != g) lane_xor(row, array.cell(i, j), w, sc);

        std::uint8_t* diag = sp.diag_syn[static_cast<std::size_t>(i)];
        lane_copy(diag, array.cell(i, cp.k + 1), w);
        for (int j = 0; j < cp.k; ++j) {
            if (j == f || j == g) continue;
            const int r = mod_ring(cp, i - j);
            if (r < cp.rows) lane_xor(diag, array.cell(r, j), w, sc);
        }
        const std::size_t mu = static_cast<std::size_t>(i % cp.t);
        if (i < cp.n_c && survivor_live[mu]) lane_xor(diag, survivors[mu], w, sc);
    }

    sp.sum_s = sum_common_bits(array, counters ? &counters->sum : nullptr);
    sp.sum_s_prime = sp.sum_s;
    for (int mu = 0; mu < cp.t; ++mu)
        if (survivor_live[static_cast<std::size_t>(mu)])
            lane_xor(sp.sum_s_prime.data(), survivors[static_cast<std::size_t>(mu)], w, sc);
    return sp;
}

void decode_two_info(CodeArray& array, int f, int g, DecodeCounters* counters) {
    const CodeParams& cp = array.params();
    check_info_pair(cp, f, g);
    const std::shared_ptr<const Plan> plan = plan_for(cp, f, g);
    SyndromePair sp = build_syndromes(array, f, g, counters);

    const std::size_t w = array.lane_width();
    const Layout L{cp.rows, cp.t};
    LaneBlock slots(plan->slots, w);
    for (int i = 0; i < cp.rows; ++i) {
        lane_copy(slots[static_cast<std::size_t>(L.rs(i))], sp.row_syn[static_cast<std::size_t>(i)], w);
        lane_copy(slots[static_cast<std::size_t>(L.ds(i))], sp.diag_syn[static_cast<std::size_t>(i)], w);
    }
    lane_copy(slots[static_cast<std::size_t>(L.sig())], sp.sum_s_prime.data(), w);

    XorCounter* cc = counters ? &counters->chain : nullptr;
    for (const PlanOp& op : plan->ops) {
        switch (op.kind) {
        case PlanOp::Zero: lane_zero(slots[op.dst], w); break;
        case PlanOp::Copy: lane_copy(slots[op.dst], slots[op.src], w); break;
        case PlanOp::Xor: lane_xor(slots[op.dst], slots[op.src], w, cc); break;
        }
    }

    for (int r = 0; r < cp.rows; ++r) {
        lane_copy(array.cell(r, f), slots[static_cast<std::size_t>(L.x(r))], w);
        lane_copy(array.cell(r, g), slots[static_cast<std::size_t>(L.y(r))], w);
    }

    // Every recovered common bit must agree with its two restored participants.
    std::vector<std::uint8_t> check(w);
    for (int mu = 0; mu < cp.t; ++mu) {
        lane_copy(sp.s_prime[static_cast<std::size_t>(mu)], slots[static_cast<std::size_t>(L.sp(mu))], w);
        sp.s_prime_known[static_cast<std::size_t>(mu)] = true;
        lane_copy(check.data(), array.virtual_read(cp.rows + mu - f, f), w);
        lane_xor(check.data(), array.virtual_read(cp.rows + mu - g, g), w, nullptr);
        if (std::memcmp(check.data(), sp.s_prime[static_cast<std::size_t>(mu)], w) != 0)
            throw CodeError(ErrorCode::ChainStall, "recovered common bit " + std::to_string(mu) + " fails its post-check");
    }
}

PlanInfo describe_two_info_plan(const CodeParams& params, int f, int g) {
    check_info_pair(params, f, g);
    return plan_for(params, f, g)->info;
}

bool two_info_recoverable(const CodeParams& params, int f, int g) {
    try {
        describe_two_info_plan(params, f, g);
        return true;
    } catch (const CodeError& e) {
        if (e.code() == ErrorCode::ChainStall) return false;
        throw;
    }
}

CodeArray& decode(CodeArray& array, const ErasurePattern& pattern, DecodeCounters* counters) {
    const CodeParams& cp = array.params();
    const int k = cp.k;
    XorCounter* chain = counters ? &counters->chain : nullptr;
    std::vector<int> info, parity;
    for (int c : pattern.erased()) (c < k ? info : parity).push_back(c);

    if (info.empty()) {
        for (int c : parity) {
            if (c == k) encode_row_parity(array, chain);
            else encode_diag_parity(array, chain);
        }
    } else if (info.size() == 2) {
        decode_two_info(array, info[0], info[1], counters);
    } else if (parity.empty() || parity[0] == k + 1) {
        decode_info_via_row_parity(array, info[0], pattern, chain);
        if (!parity.empty()) encode_diag_parity(array, chain);
    } else {
        decode_info_with_diag_parity(array, info[0], pattern, chain);
        encode_row_parity(array, chain);
    }
    return array;
}

}  // namespace eoflex
