#include "doctest.h"

#include <random>

#include "mfl/paige.hpp"

using namespace mfl;

TEST_CASE("M0 over GF(2)") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    PaigeBundle b = build_m0(f2);
    REQUIRE(b.m0.order() == 120);
    CHECK(b.elements[0] == ZornMatrix::identity(f2));
    for (const ZornMatrix& z : b.elements) CHECK(norm(z) == f2.one());

    CHECK(is_ip_loop(b.m0));
    CHECK(is_moufang(b.m0, CheckPolicy::exhaustive()));
    CHECK(!is_associative(b.m0));
    CHECK(center(b.m0).size() == 1); // char 2: <-1> = {1}

    // the table is the multiplication of the underlying matrices
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 2000; ++i) {
        int x = static_cast<int>(rng() % 120), y = static_cast<int>(rng() % 120);
        CHECK(b.elements[b.m0.mul(x, y)] == zmul(b.elements[x], b.elements[y]));
    }
}

TEST_CASE("M over GF(2) is M0 itself") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    PaigeBundle b = build_m(f2);
    REQUIRE(b.m.has_value());
    CHECK(*b.m == b.m0);
    CHECK(is_homomorphism(b.m0, *b.m, *b.projection));
}

TEST_CASE("M over GF(3) is the central quotient of order 1080") {
    const FiniteField& f3 = FiniteField::get(3, 1);
    PaigeBundle b = build_m(f3);
    REQUIRE(b.m0.order() == 2160);
    REQUIRE(b.m.has_value());
    CHECK(b.m->order() == 1080);
    CHECK(is_homomorphism(b.m0, *b.m, *b.projection));
    CHECK(is_ip_loop(b.m0));
    CHECK(is_moufang(b.m0)); // sampled above the exhaustive cutoff
    CHECK(!is_associative(b.m0));
    CHECK(is_ip_loop(*b.m));
    CHECK(is_moufang(*b.m));
    CHECK(!is_associative(*b.m));

    // an element of order 2 exists in M (image of a matrix with square -1)
    bool found = false;
    for (int g = 1; g < b.m->order() && !found; ++g)
        if (element_order(*b.m, g) == 2) found = true;
    CHECK(found);

    // associator relations on seeded triples of the big quotient
    const FiniteLoop& m = *b.m;
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 1000; ++i) {
        int a = static_cast<int>(rng() % m.order());
        int x = static_cast<int>(rng() % m.order());
        int y = static_cast<int>(rng() % m.order());
        REQUIRE(m.r_map(x, y, a) == m.mul(a, assoc_alpha(m, a, x, y)));
        REQUIRE(m.l_map(y, x, a) == m.mul(assoc_beta(m, a, x, y), a));
        REQUIRE(m.t_map(x, a) == m.mul(a, commutator(m, a, x)));
        int br = bracket_assoc(m, a, x, y);
        REQUIRE(m.inv(br) == assoc_alpha(m, a, m.inv(y), m.inv(x)));
        REQUIRE(br == assoc_beta(m, m.inv(a), y, x));
        REQUIRE(bracket_comm(m, a, x) == commutator(m, a, x));
    }
}

TEST_CASE("sampled simplicity evidence for M(GF(3))") {
    PaigeBundle b = build_m(FiniteField::get(3, 1));
    CHECK(is_simple_sampled(*b.m, 5, kDefaultSeed));
    // the non-simple parent M0 is caught through its central element: the
    // closure of -1 is just {1,-1}
    SubloopRef z = center(b.m0);
    REQUIRE(z.size() == 2);
    int minus_one = z.members()[1];
    CHECK(normal_closure(b.m0, {minus_one}).size() == 2);
}

TEST_CASE("a two-term chain on a simple nonassociative loop is not central") {
    PaigeBundle b = build_m(FiniteField::get(2, 1));
    const FiniteLoop& m = *b.m;
    std::vector<SubloopRef> chain{whole_loop(m), trivial_subloop(m)};
    CHECK(!is_central_series(m, chain));
}

TEST_CASE("unit loop over GF(2) equals M0") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    ZornLoop u = build_unit_loop(f2);
    PaigeBundle b = build_m0(f2);
    CHECK(u.loop == b.m0);
}

TEST_CASE("unit loop over GF(3): norm homomorphism with kernel M0") {
    const FiniteField& f3 = FiniteField::get(3, 1);
    PaigeOptions opts;
    opts.allow_large = true;
    ZornLoop u = build_unit_loop(f3, opts);
    REQUIRE(u.loop.order() == 4320);

    // norm is multiplicative on the table (sampled)
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 20000; ++i) {
        int x = static_cast<int>(rng() % 4320), y = static_cast<int>(rng() % 4320);
        CHECK(norm(u.elements[u.loop.mul(x, y)]) == norm(u.elements[x]) * norm(u.elements[y]));
    }

    // the norm-1 elements form a normal subloop of index q-1
    std::vector<int> kernel;
    for (int i = 0; i < u.loop.order(); ++i)
        if (norm(u.elements[i]) == f3.one()) kernel.push_back(i);
    REQUIRE(kernel.size() == 2160);
    SubloopRef m0(u.loop, kernel);
    CHECK(is_normal(u.loop, m0));

    // the center of U(GF(3)) is the scalar line {diag(c,c) : c != 0}
    SubloopRef z = center(u.loop);
    REQUIRE(z.size() == 2);
    for (int g : z.members()) {
        const ZornMatrix& mat = u.elements[g];
        CHECK(mat.a1 == mat.a2);
        for (int i = 0; i < 3; ++i) {
            CHECK(mat.v12[i].is_zero());
            CHECK(mat.v21[i].is_zero());
        }
    }
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(build_m0(FiniteField::get(5, 1)), Error);
    try {
        build_m0(FiniteField::get(5, 1));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::field_too_large);
    }
    CHECK_THROWS_AS(build_unit_loop(FiniteField::get(3, 1)), Error);
    PaigeOptions big;
    big.allow_large = true;
    CHECK_THROWS_AS(build_m0(FiniteField::get(7, 1), big), Error);
    CHECK_THROWS_AS(build_unit_loop(FiniteField::get(2, 2), big), Error);
}

TEST_CASE("classification reports") {
    ClassificationReport r2 = classify_embeddability(2, 3);
    CHECK(r2.characteristic_two);
    CHECK(r2.computed_closed_under_sqrt);
    CHECK(r2.verdict == "embeddable");
    CHECK(!r2.claims_disagree);

    ClassificationReport r31 = classify_embeddability(3, 1);
    CHECK(!r31.computed_closed_under_sqrt);
    CHECK(!r31.parity_claim_closed);
    CHECK(r31.verdict == "embeddable");
    CHECK(!r31.claims_disagree);

    // odd characteristic, even exponent: enumeration contradicts the parity
    // heuristic, and the report must flag that rather than hide it
    ClassificationReport r32 = classify_embeddability(3, 2);
    CHECK(!r32.computed_closed_under_sqrt);
    CHECK(r32.parity_claim_closed);
    CHECK(r32.claims_disagree);
    CHECK(r32.verdict == "embeddable");
}
