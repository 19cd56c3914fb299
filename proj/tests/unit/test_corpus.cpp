#include "doctest.h"

#include "mfl/corpus.hpp"

using namespace mfl;

TEST_CASE("corpus entries and tags") {
    const auto& entries = corpus();
    REQUIRE(entries.size() == 15);

    for (const auto& e : entries) {
        CAPTURE(e.name);
        CHECK(e.loop.order() >= 2);
        // tags were verified against computed predicates at generation; spot
        // check the ones the suites depend on
        CHECK(e.tags.count("moufang") == 1);
    }

    CHECK(corpus_entry("Z2").loop.order() == 2);
    CHECK(corpus_entry("chein-Q8").loop.order() == 16);
    CHECK(corpus_entry("chein-D4xZ2").loop.order() == 32);
    CHECK(corpus_entry("S3").tags.count("group") == 1);
    CHECK(corpus_entry("S3").tags.count("nilpotent-expected") == 0);
    CHECK(corpus_entry("chein-S3").tags.count("nonassociative") == 1);
    CHECK(corpus_entry("chein-S3").tags.count("nilpotent-expected") == 0);
    CHECK(corpus_entry("chein-Q8").tags.count("p-loop:2") == 1);
    CHECK(corpus_entry("chein-Q8").tags.count("nilpotent-expected") == 1);
    CHECK(corpus_entry("Z5").tags.count("simple") == 1);
    CHECK(corpus_entry("Z4").tags.count("simple") == 0);
    CHECK_THROWS_AS(corpus_entry("nope"), Error);
}

TEST_CASE("chein doubles") {
    // abelian input gives an associative double
    FiniteLoop d4z2 = chein_double(small_group("Z2"));
    CHECK(d4z2.order() == 4);
    CHECK(is_associative(d4z2));

    FiniteLoop m12 = chein_double(small_group("S3"));
    CHECK(m12.order() == 12);
    CHECK(is_moufang(m12, CheckPolicy::exhaustive()));
    CHECK(!is_associative(m12, CheckPolicy::exhaustive()));
    CHECK(is_ip_loop(m12));

    FiniteLoop m16 = chein_double(small_group("Q8"));
    CHECK(m16.order() == 16);
    CHECK(!is_associative(m16));
    // doubles of 2-groups are 2-loops
    for (int g = 0; g < m16.order(); ++g) {
        int k = element_order(m16, g);
        while (k % 2 == 0) k /= 2;
        CHECK(k == 1);
    }

    // doubling a nonassociative loop is rejected
    CHECK_THROWS_AS(chein_double(m12), Error);
    try {
        chein_double(m12);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_associative);
    }
}

TEST_CASE("unknown names") {
    CHECK_THROWS_AS(small_group("E8"), Error);
    try {
        small_group("Zx");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unknown_name);
    }
}
