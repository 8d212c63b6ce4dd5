#include <doctest.h>

#include "eoflex/array.hpp"
#include "eoflex/error.hpp"

using namespace eoflex;

TEST_SUITE("array") {

TEST_CASE("mod_ring") {
    const CodeParams cp = validate_params(2, 5, 3);
    CHECK(mod_ring(cp, 1 - 3) == 8);
    CHECK(mod_ring(cp, 0) == 0);
    CHECK(mod_ring(cp, 17) == 7);
    for (int x = -cp.ring; x <= 2 * cp.ring; ++x) {
        const int r = mod_ring(cp, x);
        CHECK(r >= 0);
        CHECK(r < cp.ring);
        CHECK((x - r) % cp.ring == 0);
    }
}

TEST_CASE("virtual rows read as zero") {
    const CodeParams cp = validate_params(2, 5, 3);
    CodeArray a(cp, 4);
    for (auto& b : a.bytes()) b = 0xa5;
    const std::uint8_t* z8 = a.virtual_read(8, 1);
    const std::uint8_t* z9 = a.virtual_read(9, 2);
    for (int b = 0; b < 4; ++b) {
        CHECK(z8[b] == 0);
        CHECK(z9[b] == 0);
    }
    CHECK(a.virtual_read(7, 1) == a.cell(7, 1));
    CHECK(a.is_virtual_row(8));
    CHECK_FALSE(a.is_virtual_row(7));
}

TEST_CASE("virtual_read rejects indices outside the ring") {
    const CodeParams cp = validate_params(2, 5, 3);
    CodeArray a(cp, 1);
    CHECK_THROWS_AS(a.virtual_read(10, 0), CodeError);
    CHECK_THROWS_AS(a.virtual_read(-1, 0), CodeError);
    try {
        a.virtual_read(0, 3);
        FAIL("parity column accepted");
    } catch (const CodeError& e) {
        CHECK(e.code() == ErrorCode::IndexOutOfRing);
    }
}

TEST_CASE("bit access and column helpers") {
    const CodeParams cp = validate_params(1, 5, 3);
    CodeArray a(cp, 2);
    a.set_bit(3, 1, true, 9);
    CHECK(a.bit(3, 1, 9));
    CHECK(a.cell(3, 1)[1] == 0x02);
    CodeArray b = a;
    CHECK(a.column_equal(b, 1));
    b.clear_column(1);
    CHECK_FALSE(a.column_equal(b, 1));
    CHECK(a.column_equal(b, 0));
    CHECK_THROWS_AS(CodeArray(cp, 0), CodeError);
}

TEST_CASE("erasure patterns") {
    const CodeParams cp = validate_params(2, 5, 3);
    const ErasurePattern p(cp, {4, 1});
    CHECK(p.erased() == std::vector<int>{1, 4});
    CHECK(p.contains(4));
    CHECK_FALSE(p.contains(0));
    CHECK(ErasurePattern(cp, {}).empty());

    auto code_of = [&](std::vector<int> cols) {
        try {
            ErasurePattern bad(cp, cols);
        } catch (const CodeError& e) {
            return e.code();
        }
        return ErrorCode::InvalidParams;
    };
    CHECK(code_of({0, 1, 2}) == ErrorCode::TooManyErasures);
    CHECK(code_of({5}) == ErrorCode::ColumnOutOfRange);
    CHECK(code_of({-1}) == ErrorCode::ColumnOutOfRange);
    CHECK(code_of({2, 2}) == ErrorCode::InvalidPattern);
}

}
