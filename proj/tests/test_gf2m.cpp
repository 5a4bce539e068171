#include <doctest.h>

#include <set>
#include <vector>

#include "maxarc/gf2m.hpp"

using namespace maxarc;

namespace {

// Independent irreducibility oracle: trial division by every lower-degree
// polynomial.
bool irreducible_by_trial_division(int m, std::uint32_t f) {
    for (std::uint32_t g = 2; g < (1u << m); ++g) {
        if (detail::poly_degree(g) < 1) continue;
        if (detail::poly_mod(f, g) == 0) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE_BEGIN("gf2m");

TEST_CASE("smallest moduli for tiny degrees") {
    CHECK(find_modulus(1).modulus == 0b11);     // x + 1
    CHECK(find_modulus(2).modulus == 0b111);    // x^2 + x + 1
    CHECK(find_modulus(3).modulus == 0b1011);   // x^3 + x + 1
}

TEST_CASE("smallest modulus matches the trial-division oracle") {
    for (int m : {4, 6, 9, 11}) {
        std::uint32_t expect = 0;
        for (std::uint32_t f = (1u << m) | 1u; f < (2u << m); f += 2) {
            if (irreducible_by_trial_division(m, f)) {
                expect = f;
                break;
            }
        }
        CHECK(find_modulus(m).modulus == expect);
        CHECK(find_modulus(m, 1).modulus > expect);
        CHECK(irreducible_by_trial_division(m, find_modulus(m, 1).modulus));
    }
}

TEST_CASE("degree bounds are enforced") {
    CHECK_THROWS_AS(find_modulus(0), std::invalid_argument);
    CHECK_THROWS_AS(find_modulus(25), std::invalid_argument);
    CHECK_THROWS_AS(Field(FieldSpec{4, 0b10101}), std::invalid_argument);  // reducible
}

TEST_CASE("multiplication in GF(2^3) mod x^3+x+1") {
    const Field f(FieldSpec{3, 0b1011});
    CHECK(f.mul(0b010, 0b100) == 0b011);  // x * x^2 = x + 1
    for (gf_elem b = 0; b < 8; ++b) {
        CHECK(f.mul(0, b) == 0);
        CHECK(f.mul(1, b) == b);
    }
}

TEST_CASE("ring laws on random elements under two moduli") {
    for (int nth : {0, 1}) {
        const Field f(find_modulus(7, nth));
        std::uint32_t s = 12345;
        const auto rnd = [&] { return (s = s * 1103515245 + 12345) & f.mask(); };
        for (int i = 0; i < 200; ++i) {
            const gf_elem a = rnd(), b = rnd(), c = rnd();
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
            CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
            CHECK(f.mul(a, a) == f.frob(a, 1));
        }
    }
}

TEST_CASE("inversion") {
    const Field f(FieldSpec{3, 0b1011});
    CHECK(f.inv(1) == 1);
    CHECK(f.inv(0b010) == 0b101);  // x * (x^2 + 1) = x^3 + x = 1
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
    const Field f8(find_modulus(8));
    for (gf_elem a = 1; a < f8.order(); a += 7) CHECK(f8.mul(a, f8.inv(a)) == 1);
}

TEST_CASE("frobenius") {
    const Field f(find_modulus(6));
    std::uint32_t s = 99;
    const auto rnd = [&] { return (s = s * 48271 % 0x7fffffff) & f.mask(); };
    for (int i = 0; i < 100; ++i) {
        const gf_elem a = rnd(), b = rnd();
        CHECK(f.frob(a, 0) == a);
        CHECK(f.frob(a, 6) == a);
        const int j = i % 10;
        CHECK(f.frob(a ^ b, j) == (f.frob(a, j) ^ f.frob(b, j)));
        CHECK(f.frob(a, j) == f.pow(a, std::uint64_t{1} << (j % 6)));
    }
}

TEST_CASE("absolute trace") {
    const Field f5(find_modulus(5));
    CHECK(f5.trace(0) == 0);
    CHECK(f5.trace(1) == 1);  // m odd
    const Field f6(find_modulus(6));
    CHECK(f6.trace(1) == 0);  // m even
    int zeros = 0;
    for (gf_elem a = 0; a < f5.order(); ++a) zeros += f5.trace(a) == 0;
    CHECK(zeros == 16);
    for (gf_elem a = 0; a < f5.order(); ++a) CHECK(f5.trace(f5.frob(a, 1)) == f5.trace(a));
}

TEST_CASE("relative trace lands in the fixed field") {
    const Field f(find_modulus(9));
    CHECK(f.trace_rel(0, 3) == 0);
    int kernel = 0;
    for (gf_elem a = 0; a < f.order(); ++a) {
        const gf_elem t = f.trace_rel(a, 3);
        CHECK(f.frob(t, 3) == t);
        kernel += t == 0;
    }
    CHECK(kernel == 64);
    CHECK_THROWS_AS(f.trace_rel(1, 2), std::invalid_argument);
}

TEST_CASE("trace transitivity through the subfield") {
    for (const auto& [m, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {6, 3}, {9, 3}}) {
        const Field f(find_modulus(m));
        for (gf_elem a = 0; a < f.order(); ++a) {
            // absolute trace of the subfield GF(2^k), evaluated inside GF(2^m)
            gf_elem sub = 0, t = f.trace_rel(a, k);
            for (int j = 0; j < k; ++j) {
                sub ^= t;
                t = f.frob(t, 1);
            }
            REQUIRE(sub <= 1);
            CHECK(static_cast<int>(sub) == f.trace(a));
        }
    }
}

TEST_CASE("trace form is nondegenerate") {
    for (int m = 2; m <= 8; ++m) {
        const Field f(find_modulus(m));
        std::set<std::uint32_t> images;
        for (gf_elem a = 0; a < f.order(); ++a) {
            std::uint32_t img = 0;
            for (int i = 0; i < m; ++i)
                img |= static_cast<std::uint32_t>(f.trace(f.mul(1u << i, a))) << i;
            images.insert(img);
        }
        CHECK(images.size() == f.order());
    }
}

TEST_CASE("hex serialization") {
    CHECK(hex_str(0) == "0");
    CHECK(hex_str(0x1f) == "1f");
    CHECK(parse_hex("1f") == 0x1f);
    CHECK(parse_hex(hex_str(0xabc123)) == 0xabc123);
    CHECK_THROWS_AS(parse_hex(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_hex("xyz"), std::invalid_argument);
    CHECK_THROWS_AS(parse_hex("1F"), std::invalid_argument);  // lowercase only
}

TEST_SUITE_END();
