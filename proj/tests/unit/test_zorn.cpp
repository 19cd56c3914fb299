#include "doctest.h"

#include <random>

#include "mfl/loop.hpp"
#include "mfl/zorn.hpp"

using namespace mfl;

namespace {

ZornMatrix random_zorn(const FiniteField& f, std::mt19937_64& rng) {
    auto e = [&] { return f.element(static_cast<std::uint32_t>(rng() % f.size())); };
    return ZornMatrix{e(), e(), {e(), e(), e()}, {e(), e(), e()}};
}

} // namespace

TEST_CASE("identity and unit laws") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    ZornMatrix one = ZornMatrix::identity(f2);
    for (const ZornMatrix& a : enumerate_zorn(f2)) {
        CHECK(zmul(one, a) == a);
        CHECK(zmul(a, one) == a);
    }
    CHECK(trace(one) == f2.from_int(2));
    CHECK(norm(one) == f2.one());
    CHECK(zinv(one) == one);
}

TEST_CASE("hand-checked product over GF(2)") {
    // a = (0,0,e1,0), b = (0,0,0,e1): only the scalar product (a12, b21)
    // survives, giving (1,0,0,0).
    const FiniteField& f = FiniteField::get(2, 1);
    FieldElement z = f.zero(), o = f.one();
    ZornMatrix a{z, z, {o, z, z}, {z, z, z}};
    ZornMatrix b{z, z, {z, z, z}, {o, z, z}};
    ZornMatrix expect{o, z, {z, z, z}, {z, z, z}};
    CHECK(zmul(a, b) == expect);
}

TEST_CASE("trace and norm formulas") {
    const FiniteField& f3 = FiniteField::get(3, 1);
    FieldElement z = f3.zero(), o = f3.one();
    ZornMatrix m{z, z, {o, z, z}, {o, z, z}};
    CHECK(trace(m) == f3.zero());
    CHECK(norm(m) == f3.from_int(-1)); // -(e1,e1) = -1 = 2
    CHECK(norm(m) == f3.from_int(2));
}

TEST_CASE("quadratic identity is exhaustive over GF(2) and GF(3)") {
    for (unsigned p : {2u, 3u}) {
        const FiniteField& f = FiniteField::get(p, 1);
        ZornMatrix one = ZornMatrix::identity(f);
        for (const ZornMatrix& a : enumerate_zorn(f)) {
            ZornMatrix lhs = zadd(zsub(zmul(a, a), zscale(trace(a), a)), zscale(norm(a), one));
            CHECK(is_zero(lhs));
        }
    }
}

TEST_CASE("inverses") {
    const FiniteField& f3 = FiniteField::get(3, 1);
    int unit_count = 0;
    for (const ZornMatrix& a : enumerate_by_norm(f3, f3.one())) {
        // norm-1 elements invert as t(a)1 - a
        ZornMatrix expect = zsub(zscale(trace(a), ZornMatrix::identity(f3)), a);
        CHECK(zinv(a) == expect);
        if (++unit_count >= 200) break;
    }
    ZornMatrix zero = ZornMatrix::zero(f3);
    CHECK_THROWS_AS(zinv(zero), Error);
    try {
        zinv(zero);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_a_unit);
    }
    // zinv is a two-sided inverse on sampled units
    std::mt19937_64 rng(kDefaultSeed);
    const FiniteField& f5 = FiniteField::get(5, 1);
    int done = 0;
    while (done < 500) {
        ZornMatrix a = random_zorn(f5, rng);
        if (norm(a).is_zero()) continue;
        ZornMatrix b = zinv(a);
        CHECK(zmul(a, b) == ZornMatrix::identity(f5));
        CHECK(zmul(b, a) == ZornMatrix::identity(f5));
        ++done;
    }
}

TEST_CASE("enumeration counts match q^3(q^4-1)") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    auto m0_2 = enumerate_by_norm(f2, f2.one());
    CHECK(m0_2.size() == 120);
    CHECK(enumerate_units(f2).size() == 120); // GF(2)* = {1}

    const FiniteField& f3 = FiniteField::get(3, 1);
    auto m0_3 = enumerate_by_norm(f3, f3.one());
    CHECK(m0_3.size() == 2160);
    std::uint64_t q = 3;
    CHECK(m0_3.size() == q * q * q * (q * q * q * q - 1));

    // deterministic order: keys strictly increase
    for (std::size_t i = 1; i < m0_2.size(); ++i)
        CHECK(zorn_key(m0_2[i - 1]) < zorn_key(m0_2[i]));

    const FiniteField& f7 = FiniteField::get(7, 1);
    CHECK_THROWS_AS(enumerate_zorn(f7), Error);

    // a target norm must come from the same field
    CHECK_THROWS_AS(enumerate_by_norm(f2, f3.one()), Error);
}

TEST_CASE("alternativity and composition, exhaustive over GF(2)") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    auto all = enumerate_zorn(f2);
    for (const ZornMatrix& x : all)
        for (const ZornMatrix& y : all) {
            REQUIRE(is_zero(zorn_associator(x, x, y)));
            REQUIRE(is_zero(zorn_associator(y, x, x)));
            REQUIRE(norm(zmul(x, y)) == norm(x) * norm(y));
        }
}

TEST_CASE("alternativity, composition, Moufang on sampled triples over GF(3) and GF(5)") {
    for (unsigned p : {3u, 5u}) {
        const FiniteField& f = FiniteField::get(p, 1);
        std::mt19937_64 rng(kDefaultSeed);
        for (int i = 0; i < 20000; ++i) {
            ZornMatrix u = random_zorn(f, rng), v = random_zorn(f, rng), w = random_zorn(f, rng);
            REQUIRE(is_zero(zorn_associator(u, u, v)));
            REQUIRE(is_zero(zorn_associator(v, u, u)));
            REQUIRE(norm(zmul(u, v)) == norm(u) * norm(v));
            if (!norm(u).is_zero() && !norm(v).is_zero() && !norm(w).is_zero()) {
                // Moufang law (uv.u)w = u(v.uw) among units
                REQUIRE(zmul(zmul(zmul(u, v), u), w) == zmul(u, zmul(v, zmul(u, w))));
            }
        }
    }
}

TEST_CASE("a nonassociative witness exists over every enumerable field") {
    for (unsigned p : {2u, 3u, 5u}) {
        const FiniteField& f = FiniteField::get(p, 1);
        FieldElement z = f.zero(), o = f.one();
        // (u1 u2)u3 = e22 while u1(u2 u3) = e11, so the associator is
        // e22 - e11 != 0 in every characteristic.
        ZornMatrix u{z, z, {o, z, z}, {z, z, z}};
        ZornMatrix v{z, z, {z, o, z}, {z, z, z}};
        ZornMatrix w{z, z, {z, z, o}, {z, z, z}};
        ZornMatrix assoc = zorn_associator(u, v, w);
        CHECK(!is_zero(assoc));
        ZornMatrix expect{-o, o, {z, z, z}, {z, z, z}};
        CHECK(assoc == expect);
    }
}

TEST_CASE("rendering round trip") {
    const FiniteField& f3 = FiniteField::get(3, 1);
    FieldElement z = f3.zero(), o = f3.one();
    ZornMatrix m{o, f3.from_int(2), {z, o, z}, {o, z, f3.from_int(2)}};
    CHECK(to_string(m) == "(1, 2 | 0,1,0 | 1,0,2)");
    CHECK(parse_zorn(f3, to_string(m)) == m);

    const FiniteField& f4 = FiniteField::get(2, 2);
    ZornMatrix e = ZornMatrix::identity(f4);
    CHECK(parse_zorn(f4, to_string(e)) == e);

    CHECK_THROWS_AS(parse_zorn(f3, "(1, 2 | 0,1,0)"), Error);
}
