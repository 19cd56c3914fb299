#include "doctest.h"

#include <set>
#include <vector>

#include "mfl/gf.hpp"

using namespace mfl;

namespace {

// Every (p, n) with p^n <= 81, the desk-scale range for field checks.
std::vector<std::pair<unsigned, unsigned>> small_fields() {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u,
                       53u, 59u, 61u, 67u, 71u, 73u, 79u}) {
        unsigned long q = 1;
        for (unsigned n = 1;; ++n) {
            q *= p;
            if (q > 81) break;
            out.emplace_back(p, n);
        }
    }
    return out;
}

// Oracle for modulus selection over GF(2), degree 2: a monic quadratic
// c0 + c1 x + x^2 is irreducible iff it has no root.
bool quadratic_irreducible_gf2(unsigned c0, unsigned c1) {
    for (unsigned r = 0; r < 2; ++r)
        if ((c0 + c1 * r + r * r) % 2 == 0) return false;
    return true;
}

} // namespace

TEST_CASE("prime fields and modulus selection") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    CHECK(f2.size() == 2);
    CHECK(f2.modulus() == std::vector<unsigned>{0, 1}); // x

    const FiniteField& f3 = FiniteField::get(3, 1);
    CHECK(f3.size() == 3);

    // GF(4): the oracle says (1,1,1) is the only monic irreducible quadratic.
    std::vector<std::vector<unsigned>> irreducible;
    for (unsigned c0 = 0; c0 < 2; ++c0)
        for (unsigned c1 = 0; c1 < 2; ++c1)
            if (quadratic_irreducible_gf2(c0, c1)) irreducible.push_back({c0, c1, 1});
    REQUIRE(irreducible.size() == 1);
    CHECK(FiniteField::get(2, 2).modulus() == irreducible[0]);
    CHECK(FiniteField::get(2, 2).modulus() == std::vector<unsigned>{1, 1, 1});
}

TEST_CASE("construction errors") {
    CHECK_THROWS_WITH_AS(FiniteField::get(4, 1), doctest::Contains("NotPrime"), Error);
    CHECK_THROWS_AS(FiniteField::get(1, 1), Error);
    CHECK_THROWS_AS(FiniteField::get(2, 0), Error);
    try {
        FiniteField::get(2, 0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::bad_degree);
    }
    try {
        FiniteField::get(2, 17); // 2^17 > 2^16
    } catch (const Error& e) {
        CHECK(e.code() == Errc::field_too_large);
    }
}

TEST_CASE("basic arithmetic examples") {
    const FiniteField& f3 = FiniteField::get(3, 1);
    CHECK(f3.from_int(2) * f3.from_int(2) == f3.from_int(1)); // 4 mod 3

    // GF(4): x * x = x + 1 after reduction by x^2+x+1
    const FiniteField& f4 = FiniteField::get(2, 2);
    FieldElement x = f4.from_coeffs({0, 1});
    CHECK(x * x == f4.from_coeffs({1, 1}));

    // a * a^-1 = 1 for all a != 0, in every small field
    for (auto [p, n] : small_fields()) {
        const FiniteField& f = FiniteField::get(p, n);
        for (std::uint32_t i = 1; i < f.size(); ++i) {
            FieldElement a = f.element(i);
            CHECK(a * a.inverse() == f.one());
        }
    }
}

TEST_CASE("mixed fields and division by zero are rejected") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    const FiniteField& f3 = FiniteField::get(3, 1);
    CHECK_THROWS_AS((void)(f2.one() + f3.one()), Error);
    try {
        (void)(f2.one() * f3.one());
    } catch (const Error& e) {
        CHECK(e.code() == Errc::mixed_fields);
    }
    try {
        (void)f3.zero().inverse();
    } catch (const Error& e) {
        CHECK(e.code() == Errc::division_by_zero);
    }
}

TEST_CASE("field axioms hold exhaustively up to q = 81") {
    for (auto [p, n] : small_fields()) {
        const FiniteField& f = FiniteField::get(p, n);
        std::uint32_t q = f.size();
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                REQUIRE(f.add_ix(a, b) == f.add_ix(b, a));
                REQUIRE(f.mul_ix(a, b) == f.mul_ix(b, a));
            }
        bool ok = true;
        for (std::uint32_t a = 0; a < q && ok; ++a)
            for (std::uint32_t b = 0; b < q && ok; ++b)
                for (std::uint32_t c = 0; c < q && ok; ++c) {
                    if (f.add_ix(f.add_ix(a, b), c) != f.add_ix(a, f.add_ix(b, c))) ok = false;
                    if (f.mul_ix(f.mul_ix(a, b), c) != f.mul_ix(a, f.mul_ix(b, c))) ok = false;
                    if (f.mul_ix(a, f.add_ix(b, c)) != f.add_ix(f.mul_ix(a, b), f.mul_ix(a, c)))
                        ok = false;
                }
        CHECK_MESSAGE(ok, "axioms failed for GF(", p, "^", n, ")");
    }
}

TEST_CASE("squares: enumeration oracle, Euler criterion, sqrt consistency") {
    // GF(3): squares enumerate to {0, 1}, so 2 is not a square.
    const FiniteField& f3 = FiniteField::get(3, 1);
    std::set<std::uint32_t> sq3;
    for (std::uint32_t x = 0; x < 3; ++x) sq3.insert(f3.mul_ix(x, x));
    CHECK(sq3 == std::set<std::uint32_t>{0, 1});
    CHECK(!f3.from_int(2).is_square());

    // GF(5): 4 = 2^2
    const FiniteField& f5 = FiniteField::get(5, 1);
    CHECK(f5.from_int(4).is_square());
    CHECK(f5.from_int(4).sqrt().value() * f5.from_int(4).sqrt().value() == f5.from_int(4));

    // GF(4): squaring is a bijection in characteristic 2
    const FiniteField& f4 = FiniteField::get(2, 2);
    for (std::uint32_t a = 0; a < 4; ++a) CHECK(f4.is_square_ix(a));

    for (auto [p, n] : small_fields()) {
        const FiniteField& f = FiniteField::get(p, n);
        std::uint32_t q = f.size();
        // independent oracle: exhaustive squaring
        std::vector<char> is_sq(q, 0);
        for (std::uint32_t x = 0; x < q; ++x) is_sq[f.mul_ix(x, x)] = 1;
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(f.is_square_ix(a) == (is_sq[a] != 0));
            if (auto r = f.sqrt_ix(a)) CHECK(f.mul_ix(*r, *r) == a);
        }
        if (p != 2) {
            // Euler criterion must agree on every nonzero element
            for (std::uint32_t a = 1; a < q; ++a) {
                bool euler = f.pow_ix(a, (q - 1) / 2) == 1;
                CHECK(euler == f.is_square_ix(a));
            }
        }
        bool all_nonzero_squares = true;
        for (std::uint32_t a = 1; a < q; ++a)
            if (!is_sq[a]) all_nonzero_squares = false;
        CHECK(f.closed_under_sqrt() == all_nonzero_squares);
        if (p == 2) CHECK(f.closed_under_sqrt());
    }

    // GF(9), recorded by enumeration: exactly half the units are squares,
    // hence not closed under square roots.
    CHECK(!FiniteField::get(3, 2).closed_under_sqrt());
}

TEST_CASE("element rendering and parsing") {
    const FiniteField& f9 = FiniteField::get(3, 2);
    FieldElement e = f9.from_coeffs({2, 1});
    CHECK(e.str() == "2,1");
    CHECK(f9.parse_element("2,1") == e);

    CHECK(&FiniteField::parse("3^2") == &f9);
    CHECK(&FiniteField::parse("9") == &f9);
    CHECK(&FiniteField::parse("5") == &FiniteField::get(5, 1));
    CHECK_THROWS_AS(FiniteField::parse("6"), Error);
    CHECK_THROWS_AS(FiniteField::parse("3^2x"), Error);
    CHECK_THROWS_AS(FiniteField::parse("abc"), Error);
    CHECK_THROWS_AS(f9.parse_element("1,zz"), Error);
}

TEST_CASE("powers") {
    const FiniteField& f7 = FiniteField::get(7, 1);
    FieldElement a = f7.from_int(3);
    CHECK(a.pow(0) == f7.one());
    CHECK(a.pow(6) == f7.one());          // Fermat
    CHECK(a.pow(-1) == a.inverse());
    CHECK(a.pow(-2) == (a * a).inverse());
    CHECK_THROWS_AS(f7.zero().pow(-1), Error);
}
