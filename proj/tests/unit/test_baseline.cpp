#include <doctest.h>

#include <array>

#include "eoflex/baseline.hpp"
#include "eoflex/error.hpp"

using namespace eoflex;

TEST_SUITE("baseline") {

TEST_CASE("parameter checks") {
    CHECK(validate_evenodd(5, 3).rows() == 4);
    auto code_of = [](std::int64_t p, std::int64_t k) {
        try {
            validate_evenodd(p, k);
        } catch (const CodeError& e) {
            return e.code();
        }
        return ErrorCode::InvalidParams;
    };
    CHECK(code_of(9, 3) == ErrorCode::PNotPrime);
    CHECK(code_of(5, 7) == ErrorCode::PTooSmall);
    CHECK(code_of(2, 2) == ErrorCode::PTooSmall);
    CHECK(code_of(5, 1) == ErrorCode::KTooSmall);
}

TEST_CASE("all-zero information gives zero parity") {
    EvenoddArray a(validate_evenodd(5, 3));
    evenodd_encode(a);
    CHECK(a == EvenoddArray(validate_evenodd(5, 3)));
}

TEST_CASE("common bit reaches every diagonal parity row") {
    const EvenoddParams ep = validate_evenodd(5, 3);
    EvenoddArray a(ep);
    a.cell(3, 1)[0] = 1;
    evenodd_encode(a);
    // b_{3,1} lies on the diagonal through virtual row 4, so it enters only through the common bit.
    for (int i = 0; i < 4; ++i) CHECK(a.cell(i, 4)[0] == 1);
    CHECK(a.cell(3, 3)[0] == 1);
    CHECK(a.cell(0, 3)[0] == 0);
}

TEST_CASE("classic update complexity") {
    const EvenoddParams ep = validate_evenodd(5, 3);
    CHECK(evenodd_update_complexity(ep) == Ratio(5, 2));
    CHECK(evenodd_update_formula(ep) == Ratio(5, 2));
    for (auto [p, k] : {std::pair{7, 4}, {7, 7}, {11, 5}, {13, 2}}) {
        const EvenoddParams q = validate_evenodd(p, k);
        CAPTURE(p);
        CAPTURE(k);
        CHECK(evenodd_update_complexity(q) == evenodd_update_formula(q));
    }
}

TEST_CASE("tau=1 instances match the single-common-bit construction") {
    for (auto [p, k, threshold] : {std::array<int, 3>{5, 3, 2}, {7, 5, 4}, {9, 3, 2}, {7, 4, 4}, {11, 7, 6}}) {
        CAPTURE(p);
        CAPTURE(k);
        const Tau1Check c = tau1_equivalence_check(p, k, 20);
        CHECK(c.pass);
        CHECK(c.threshold == threshold);
        CHECK(c.common_bits == 1);
        CHECK(c.fed_rows.size() == static_cast<std::size_t>(threshold));
        CHECK(c.generator_matches);
        CHECK(c.encode_matches);
    }
}

TEST_CASE("reference formulas") {
    const EvenoddPlusReference r = evenodd_plus_reference(7, 5);
    CHECK(r.encode == Ratio(2) - Ratio(9, 30));
    CHECK(r.decode == Ratio(2) + Ratio(3, 30));
    CHECK(r.update == Ratio(2) + Ratio(12, 30));
}

}
