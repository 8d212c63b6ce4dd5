#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "eoflex/array.hpp"
#include "eoflex/codec.hpp"
#include "eoflex/params.hpp"

namespace eoflex::testing {

inline const std::vector<std::array<int, 3>>& acceptance_sets() {
    static const std::vector<std::array<int, 3>> sets = {
        {1, 5, 3}, {2, 5, 3}, {3, 5, 3}, {1, 7, 4}, {2, 7, 4},
        {1, 7, 5}, {1, 9, 3}, {2, 9, 3}, {3, 9, 3}, {1, 11, 7},
    };
    return sets;
}

inline void fill_random_info(CodeArray& a, std::mt19937_64& rng) {
    const std::size_t w = a.lane_width();
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.params().k; ++j)
            for (std::size_t b = 0; b < w; ++b) a.cell(i, j)[b] = static_cast<std::uint8_t>(rng());
}

inline CodeArray random_encoded(const CodeParams& cp, std::size_t width, std::mt19937_64& rng) {
    CodeArray a(cp, width);
    fill_random_info(a, rng);
    encode(a);
    return a;
}

inline CodeArray single_bit(const CodeParams& cp, int i, int j) {
    CodeArray a(cp, 1);
    a.set_bit(i, j, true);
    return a;
}

// Parity cells of the (2,5,3) example array, transcribed cell by cell.
struct ParityCell {
    int row;
    int column;
    const char* expr;
};

inline const std::vector<ParityCell>& worked_example_cells() {
    static const std::vector<ParityCell> cells = {
        {0, 3, "b_{0,0}+b_{0,1}+b_{0,2}"}, {0, 4, "b_{0,0}+S_{0}"},
        {1, 3, "b_{1,0}+b_{1,1}+b_{1,2}"}, {1, 4, "b_{1,0}+b_{0,1}+S_{1}"},
        {2, 3, "b_{2,0}+b_{2,1}+b_{2,2}"}, {2, 4, "b_{2,0}+b_{1,1}+b_{0,2}+S_{0}"},
        {3, 3, "b_{3,0}+b_{3,1}+b_{3,2}"}, {3, 4, "b_{3,0}+b_{2,1}+b_{1,2}+S_{1}"},
        {4, 3, "b_{4,0}+b_{4,1}+b_{4,2}"}, {4, 4, "b_{4,0}+b_{3,1}+b_{2,2}"},
        {5, 3, "b_{5,0}+b_{5,1}+b_{5,2}"}, {5, 4, "b_{5,0}+b_{4,1}+b_{3,2}"},
        {6, 3, "b_{6,0}+b_{6,1}+b_{6,2}"}, {6, 4, "b_{6,0}+b_{5,1}+b_{4,2}"},
        {7, 3, "b_{7,0}+b_{7,1}+b_{7,2}"}, {7, 4, "b_{7,0}+b_{6,1}+b_{5,2}"},
    };
    return cells;
}

inline const std::vector<const char*>& worked_example_common_bits() {
    static const std::vector<const char*> s = {"b_{7,1}+b_{6,2}", "b_{7,2}"};
    return s;
}

// Information cell -> parity cells whose expanded expression holds it an odd number of times.
inline std::map<Position, std::set<Position>> worked_example_dependencies() {
    const std::regex term(R"(([bS])_\{(\d+)(?:,(\d+))?\})");
    auto expand = [&](const std::string& expr, auto&& self) -> std::map<Position, int> {
        std::map<Position, int> count;
        for (auto it = std::sregex_iterator(expr.begin(), expr.end(), term); it != std::sregex_iterator(); ++it) {
            const auto& m = *it;
            if (m[1] == "b") {
                ++count[Position{std::stoi(m[2]), std::stoi(m[3])}];
            } else {
                for (const auto& [pos, n] : self(worked_example_common_bits()[std::stoul(m[2])], self)) count[pos] += n;
            }
        }
        return count;
    };
    std::map<Position, std::set<Position>> deps;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 3; ++j) deps[Position{i, j}];
    for (const auto& cell : worked_example_cells())
        for (const auto& [pos, n] : expand(cell.expr, expand))
            if (n % 2 == 1) deps[pos].insert(Position{cell.row, cell.column});
    return deps;
}

}  // namespace eoflex::testing
