#include "doctest.h"

#include <random>

#include "mfl/algebra.hpp"
#include "mfl/corpus.hpp"

using namespace mfl;

namespace {

// Independent oracle for algebra powers: enumerate every product of k basis
// generators under every bracketing, with no intermediate span reduction.
std::vector<std::vector<AlgebraElement>> bracket_tree_products(const std::vector<AlgebraElement>& gens,
                                                               std::size_t kmax) {
    std::vector<std::vector<AlgebraElement>> sets(kmax + 1);
    sets[1] = gens;
    for (std::size_t k = 2; k <= kmax; ++k)
        for (std::size_t i = 1; i < k; ++i)
            for (const AlgebraElement& u : sets[i])
                for (const AlgebraElement& v : sets[k - i]) sets[k].push_back(u * v);
    return sets;
}

std::size_t oracle_power_dim(const FiniteLoop& q, const FiniteField& f,
                             const std::vector<AlgebraElement>& products) {
    Subspace sp(f, q.order());
    for (const AlgebraElement& e : products) sp.insert(e);
    return sp.rank();
}

AlgebraElement random_omega_element(const IdealHandle& om, std::mt19937_64& rng) {
    AlgebraElement out(*om.loop, *om.field);
    for (const auto& row : om.space.rows()) {
        std::uint32_t c = static_cast<std::uint32_t>(rng() % om.field->size());
        if (c == 0) continue;
        AlgebraElement term(*om.loop, *om.field);
        for (int g = 0; g < om.loop->order(); ++g)
            term.set_coeff(g, om.field->element(om.field->mul_ix(c, row[g])));
        out += term;
    }
    return out;
}

} // namespace

TEST_CASE("algebra multiplication basics") {
    FiniteLoop q8 = small_group("Q8");
    const FiniteField& f3 = FiniteField::get(3, 1);
    for (int g = 0; g < 8; ++g)
        for (int h = 0; h < 8; ++h) {
            AlgebraElement prod = AlgebraElement::basis(q8, f3, g) * AlgebraElement::basis(q8, f3, h);
            CHECK(prod == AlgebraElement::basis(q8, f3, q8.mul(g, h)));
        }

    AlgebraElement one = AlgebraElement::unit(q8, f3);
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 50; ++i) {
        AlgebraElement x(q8, f3);
        for (int g = 0; g < 8; ++g) x.set_coeff(g, f3.element(static_cast<std::uint32_t>(rng() % 3)));
        CHECK(one * x == x);
        CHECK(x * one == x);
    }

    // (1+g)(1-g) = 1 - g^2 = 0 over GF(2) when g has order 2
    FiniteLoop z2 = small_group("Z2");
    const FiniteField& f2 = FiniteField::get(2, 1);
    AlgebraElement a = AlgebraElement::one_minus(z2, f2, 1);
    CHECK((a * a).is_zero());

    // distributivity on random triples
    FiniteLoop m16 = corpus_entry("chein-Q8").loop;
    for (int i = 0; i < 30; ++i) {
        AlgebraElement x(m16, f2), y(m16, f2), z(m16, f2);
        for (int g = 0; g < 16; ++g) {
            x.set_coeff(g, f2.element(static_cast<std::uint32_t>(rng() % 2)));
            y.set_coeff(g, f2.element(static_cast<std::uint32_t>(rng() % 2)));
            z.set_coeff(g, f2.element(static_cast<std::uint32_t>(rng() % 2)));
        }
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((y + z) * x == y * x + z * x);
    }

    const FiniteField& f5 = FiniteField::get(5, 1);
    AlgebraElement other(z2, f5);
    CHECK_THROWS_AS((void)(a + other), Error);
}

TEST_CASE("augmentation is the multiplicative coefficient sum") {
    FiniteLoop m12 = corpus_entry("chein-S3").loop;
    const FiniteField& f3 = FiniteField::get(3, 1);
    for (int g = 0; g < m12.order(); ++g) {
        CHECK(AlgebraElement::basis(m12, f3, g).augmentation() == f3.one());
        CHECK(AlgebraElement::one_minus(m12, f3, g).augmentation() == f3.zero());
    }
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 100; ++i) {
        AlgebraElement x(m12, f3), y(m12, f3);
        for (int g = 0; g < m12.order(); ++g) {
            x.set_coeff(g, f3.element(static_cast<std::uint32_t>(rng() % 3)));
            y.set_coeff(g, f3.element(static_cast<std::uint32_t>(rng() % 3)));
        }
        CHECK((x * y).augmentation() == x.augmentation() * y.augmentation());
    }
}

TEST_CASE("omega ideals") {
    FiniteLoop z4 = small_group("Z4");
    const FiniteField& f2 = FiniteField::get(2, 1);

    // omega{1} = 0
    IdealHandle trivial = omega_ideal(z4, f2, trivial_subloop(z4));
    CHECK(trivial.space.rank() == 0);

    // omega(Q) = ker(augmentation), rank |Q|-1
    IdealHandle whole = omega_ideal(z4, f2);
    CHECK(whole.space.rank() == 3);
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 200; ++i) {
        AlgebraElement x(z4, f2);
        for (int g = 0; g < 4; ++g) x.set_coeff(g, f2.element(static_cast<std::uint32_t>(rng() % 2)));
        CHECK(whole.space.contains(x) == x.augmentation().is_zero());
    }

    // omega(Z2) over GF(2) is the line spanned by 1+g
    FiniteLoop z2 = small_group("Z2");
    IdealHandle omz2 = omega_ideal(z2, f2);
    CHECK(omz2.space.rank() == 1);
    CHECK(omz2.space.contains(AlgebraElement::one_minus(z2, f2, 1)));

    // non-normal subloops are rejected
    FiniteLoop d4 = small_group("D4");
    CHECK_THROWS_AS(omega_ideal(d4, f2, SubloopRef(d4, {0, 4})), Error);
    try {
        omega_ideal(d4, f2, SubloopRef(d4, {0, 4}));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_normal);
    }

    // dimension guard
    FiniteLoop big = small_group("Z300");
    CHECK_THROWS_AS(AlgebraElement::unit(big, f2), Error);

    // subspace ambients must match for sums and inclusion tests
    Subspace a(f2, 4), b(f2, 5);
    CHECK_THROWS_AS(subspace_sum(a, b), Error);
    CHECK_THROWS_AS(a.subspace_of(b), Error);
}

TEST_CASE("ideal powers against the bracket-tree oracle") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    const FiniteField& f3 = FiniteField::get(3, 1);

    // Z4 over GF(2): dims 3,2,1,0 by the full bracket enumeration
    FiniteLoop z4 = small_group("Z4");
    IdealHandle om4 = omega_ideal(z4, f2);
    std::vector<AlgebraElement> gens;
    for (int g = 1; g < 4; ++g) gens.push_back(AlgebraElement::one_minus(z4, f2, g));
    auto sets = bracket_tree_products(gens, 4);
    std::vector<std::size_t> oracle_dims;
    for (std::size_t k = 1; k <= 4; ++k) oracle_dims.push_back(oracle_power_dim(z4, f2, sets[k]));
    CHECK(oracle_dims == std::vector<std::size_t>{3, 2, 1, 0});
    for (std::size_t k = 1; k <= 4; ++k) CHECK(ideal_power(om4, k).rank() == oracle_dims[k - 1]);
    CHECK(ideal_power(om4, 1) == om4.space);
    CHECK(ideal_power(om4, 6).rank() == 0); // beyond the first zero power

    // Z3 over GF(3): (wQ)^2 != 0, (wQ)^3 = 0
    FiniteLoop z3 = small_group("Z3");
    IdealHandle om3 = omega_ideal(z3, f3);
    std::vector<AlgebraElement> gens3;
    for (int g = 1; g < 3; ++g) gens3.push_back(AlgebraElement::one_minus(z3, f3, g));
    auto sets3 = bracket_tree_products(gens3, 3);
    for (std::size_t k = 1; k <= 3; ++k)
        CHECK(ideal_power(om3, k).rank() == oracle_power_dim(z3, f3, sets3[k]));
    CHECK(ideal_power(om3, 2).rank() > 0);
    CHECK(ideal_power(om3, 3).rank() == 0);

    // power monotonicity on a nonassociative example
    FiniteLoop m16 = corpus_entry("chein-Q8").loop;
    IdealHandle om16 = omega_ideal(m16, f2);
    auto chain = ideal_power_chain(om16, 0);
    for (std::size_t i = 1; i < chain.size(); ++i) CHECK(chain[i].subspace_of(chain[i - 1]));
    // and the oracle agrees on the first few powers
    std::vector<AlgebraElement> gens16;
    for (int g = 1; g < 16; ++g) gens16.push_back(AlgebraElement::one_minus(m16, f2, g));
    auto sets16 = bracket_tree_products(gens16, 3);
    for (std::size_t k = 1; k <= 3; ++k)
        CHECK(ideal_power(om16, k).rank() == oracle_power_dim(m16, f2, sets16[k]));
}

TEST_CASE("nilpotency indices") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    const FiniteField& f3 = FiniteField::get(3, 1);

    FiniteLoop z2 = small_group("Z2");
    IdealHandle zero = omega_ideal(z2, f2, trivial_subloop(z2));
    CHECK(nilpotency_index(zero) == 1);
    CHECK(nilpotency_index(omega_ideal(z2, f2)) == 2);

    // omega(Z4)/GF(2) is x.GF(2)[x]/(x^4) under 1+g -> x, so the first zero
    // power is the fourth (dims 3,2,1,0)
    FiniteLoop z4 = small_group("Z4");
    CHECK(nilpotency_index(omega_ideal(z4, f2)) == 4);

    CHECK(nilpotency_index(omega_ideal(small_group("Z3"), f3)) == 3);

    // omega(Z3)/GF(2) stabilizes nonzero: (1+g)^2 = 1+g^2 regenerates it
    auto idx = nilpotency_index(omega_ideal(small_group("Z3"), f2));
    CHECK(!idx.has_value());
    auto chain = ideal_power_chain(omega_ideal(small_group("Z3"), f2), 0);
    CHECK(chain.back().rank() == 2);
    CHECK(chain.back() == chain[chain.size() - 2]);

    auto s3_idx = nilpotency_index(omega_ideal(small_group("S3"), f2));
    CHECK(!s3_idx.has_value());
}

TEST_CASE("p-loop omega nilpotency mechanism") {
    PLoopOmegaReport z4rep = p_loop_omega_check(small_group("Z4"), 2);
    CHECK(z4rep.ok());
    CHECK(z4rep.index == 4);
    CHECK(z4rep.one_minus_g_powers_vanish);

    PLoopOmegaReport chein_rep = p_loop_omega_check(corpus_entry("chein-Q8").loop, 2);
    CHECK(chein_rep.ok());
    CHECK(chein_rep.index.has_value());
    CHECK(chein_rep.power_dims.front() == 15);

    CHECK_THROWS_AS(p_loop_omega_check(small_group("Z3"), 2), Error);
    try {
        p_loop_omega_check(small_group("Z3"), 2);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_p_loop);
    }
    CHECK_THROWS_AS(p_loop_omega_check(small_group("S3"), 3), Error);
    CHECK_THROWS_AS(p_loop_omega_check(small_group("Z4"), 6), Error); // 6 is not prime
}

TEST_CASE("nil inverse series") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    FiniteLoop z4 = small_group("Z4");
    AlgebraElement u = AlgebraElement::one_minus(z4, f2, 1);
    AlgebraElement s = nil_inverse_series(u, 4);
    AlgebraElement one = AlgebraElement::unit(z4, f2);
    CHECK((one - u) * s == one);

    // 1 is not nilpotent, so the series cannot invert 1-1 = 0... and a
    // non-nilpotent u is rejected by the verification multiply
    AlgebraElement g = AlgebraElement::basis(z4, f2, 1);
    CHECK_THROWS_AS(nil_inverse_series(g, 4), Error);
}

TEST_CASE("unit bracket identities in the algebra") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    FiniteLoop m16 = corpus_entry("chein-Q8").loop;
    IdealHandle om = omega_ideal(m16, f2);
    auto index = nilpotency_index(om);
    REQUIRE(index.has_value());
    std::size_t m = *index;

    // trivial case u = v = w = 0
    AlgebraElement zero_el(m16, f2);
    BracketIdentityResult triv = bracket_identity_check(zero_el, zero_el, zero_el, 1);
    CHECK(triv.ok());

    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 200; ++i) {
        AlgebraElement u = random_omega_element(om, rng);
        AlgebraElement v = random_omega_element(om, rng);
        AlgebraElement w = random_omega_element(om, rng);
        BracketIdentityResult res = bracket_identity_check(u, v, w, m);
        REQUIRE(res.associator_identity);
        REQUIRE(res.commutator_identity);
    }

    // a unit fails the nilpotency precondition
    AlgebraElement one = AlgebraElement::unit(m16, f2);
    CHECK_THROWS_AS(bracket_identity_check(one, zero_el, zero_el, m), Error);
    try {
        bracket_identity_check(one, zero_el, zero_el, m);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_nilpotent);
    }
}

TEST_CASE("lower series sits inside omega powers") {
    const FiniteField& f2 = FiniteField::get(2, 1);

    // abelian p-group: series terminates immediately, inclusion trivial
    OmegaChainBoundReport z4rep = omega_chain_bound_check(small_group("Z4"), f2);
    CHECK(z4rep.applicable);
    CHECK(z4rep.ok());
    CHECK(z4rep.computed_class == 1);

    OmegaChainBoundReport chein_rep = omega_chain_bound_check(corpus_entry("chein-D4").loop, f2);
    CHECK(chein_rep.applicable);
    CHECK(chein_rep.ok());
    REQUIRE(chein_rep.computed_class.has_value());
    REQUIRE(chein_rep.class_bound.has_value());
    CHECK(static_cast<std::size_t>(*chein_rep.computed_class) <= *chein_rep.class_bound);

    // omega(Z3)/GF(2) is not nilpotent: report inapplicable
    OmegaChainBoundReport na = omega_chain_bound_check(small_group("Z3"), f2);
    CHECK(!na.applicable);
    CHECK(!na.ok());
}

TEST_CASE("proposition 4 suite") {
    const FiniteField& f2 = FiniteField::get(2, 1);
    const FiniteField& f3 = FiniteField::get(3, 1);

    // (Z4, {0,2}) with the whole loop as the second subloop
    FiniteLoop z4 = small_group("Z4");
    SubloopRef h1(z4, {0, 2});
    SubloopRef h2 = whole_loop(z4);
    for (const FiniteField* f : {&f2, &f3}) {
        AugmentationSuiteReport rep = augmentation_ideal_suite(z4, *f, h1, h2);
        CAPTURE(f->characteristic());
        CHECK(rep.all_ok());
        CHECK(rep.h1.omega_dim == 2);
        CHECK(rep.h2.omega_dim == 3);
        REQUIRE(rep.strict_inclusion.has_value());
        CHECK(*rep.strict_inclusion);
        CHECK(rep.omegas_distinct);
    }

    // chein-Q8 with its center
    FiniteLoop m16 = corpus_entry("chein-Q8").loop;
    SubloopRef z = center(m16);
    AugmentationSuiteReport rep16 = augmentation_ideal_suite(m16, f2, z, whole_loop(m16));
    CHECK(rep16.all_ok());

    // D4xZ2 with two distinct normal subgroups
    FiniteLoop big = small_group("D4xZ2");
    SubloopRef n1 = subloop_generated(big, {1});     // (e,1): the Z2 factor
    SubloopRef n2 = subloop_generated(big, {2});     // (r,0): rotations
    REQUIRE(is_normal(big, n1));
    REQUIRE(is_normal(big, n2));
    AugmentationSuiteReport repbig = augmentation_ideal_suite(big, f3, n1, n2);
    CHECK(repbig.all_ok());
    CHECK(repbig.omegas_distinct);
    CHECK(!repbig.strict_inclusion.has_value()); // incomparable subloops
}
