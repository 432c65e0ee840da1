#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rzl/sieve.hpp"

using namespace rzl;

TEST_CASE("mobius values and range checks") {
    MobiusTable t = build_mobius(1000);
    CHECK(t.limit() == 1000);
    CHECK(t.mu(1) == 1);
    CHECK(t.mu(2) == -1);
    CHECK(t.mu(4) == 0);
    CHECK(t.mu(6) == 1);
    CHECK(t.mu(30) == -1);   // 2*3*5
    CHECK(t.mu(210) == 1);   // 2*3*5*7
    CHECK(t.mu(360) == 0);   // 2^3 ...
    CHECK(t.mu(997) == -1);  // prime
    CHECK_THROWS_AS(t.mu(0), domain_error);
    CHECK_THROWS_AS(t.mu(1001), domain_error);
}

TEST_CASE("mu is multiplicative on coprime pairs") {
    MobiusTable t = build_mobius(10000);
    const long as[] = {2, 3, 5, 9, 14, 33, 97};
    const long bs[] = {7, 11, 13, 25, 81, 101};
    for (long a : as)
        for (long b : bs) {
            // gcd check by hand: all pairs above are coprime except (9,81),(14,7)...
            long g = 1;
            for (long d = 2; d <= a; ++d)
                if (a % d == 0 && b % d == 0) { g = d; break; }
            if (g != 1) continue;
            CHECK(t.mu(a * b) == t.mu(a) * t.mu(b));
        }
}

TEST_CASE("mertens prefix sums") {
    MobiusTable t = build_mobius(10000);
    CHECK(t.mertens_prefix(1) == 1);
    CHECK(t.mertens_prefix(2) == 0);
    CHECK(t.mertens_prefix(100) == 1);
    CHECK(t.mertens_prefix(10000) == -23);
    // running consistency against mu itself
    long acc = 0;
    for (long n = 1; n <= 500; ++n) {
        acc += t.mu(n);
        CHECK(acc == t.mertens_prefix(n));
    }
}

TEST_CASE("packed squarefree view matches the sieve") {
    MobiusTable t = build_mobius(10000);
    auto p = t.packed_upto(1000);
    REQUIRE(p != nullptr);
    // Q(1000) = 608 squarefree integers below 1000
    size_t n1000 = packed_count_upto(*p, 1000);
    CHECK(n1000 == 608);
    CHECK(packed_count_upto(*p, 100) == 61);
    CHECK(p->n.size() == p->sign.size());
    CHECK(p->n.size() >= n1000);

    long m = 0;
    size_t i = 0;
    for (long n = 1; n <= 1000; ++n) {
        if (i < p->n.size() && (long)p->n[i] == n) {
            CHECK(p->sign[i] == t.mu(n));
            CHECK(p->sign[i] != 0);
            m += p->sign[i];
            ++i;
        } else {
            CHECK(t.mu(n) == 0);
        }
    }
    CHECK(m == t.mertens_prefix(1000));
    // ascending
    for (size_t j = 1; j < n1000; ++j) CHECK(p->n[j] > p->n[j - 1]);
}

TEST_CASE("packed snapshots stay valid while the cache grows") {
    MobiusTable t = build_mobius(100000);
    auto small = t.packed_upto(100);
    size_t c100 = packed_count_upto(*small, 100);
    auto big = t.packed_upto(100000);
    // old snapshot untouched by the regrow
    CHECK(packed_count_upto(*small, 100) == c100);
    CHECK(c100 == 61);
    CHECK(packed_count_upto(*big, 100) == 61);
    CHECK_THROWS_AS(t.packed_upto(100001), domain_error);
}

TEST_CASE("build_mobius rejects tiny and absurd limits") {
    CHECK_THROWS_AS(build_mobius(0), domain_error);
    CHECK_THROWS_AS(build_mobius(-5), domain_error);
}
