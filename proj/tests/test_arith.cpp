#include <random>

#include "doctest.h"
#include "oktrace/arith.hpp"

using namespace oktrace;

TEST_CASE("is_prime on known values") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(61));
    CHECK(is_prime(7919));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(-7));
    CHECK_FALSE(is_prime(561));    // Carmichael number
    CHECK_FALSE(is_prime(341));    // Fermat pseudoprime base 2
    mpz_class m61 = (mpz_class(1) << 61) - 1;
    CHECK(is_prime(m61));          // Mersenne prime
    CHECK_FALSE(is_prime(m61 - 2));
    // strong pseudoprime to several small bases, caught by the full set
    CHECK_FALSE(is_prime(mpz_class("3215031751")));
}

TEST_CASE("factor recomposes and certifies") {
    auto check_roundtrip = [](const mpz_class& n) {
        Factorization f = factor(n);
        CHECK(f.recompose() == n);
        mpz_class prev = 1;
        for (const auto& [p, e] : f.factors) {
            CHECK(p > prev);  // strictly increasing primes
            CHECK(is_prime(p));
            CHECK(e >= 1);
            prev = p;
        }
    };
    check_roundtrip(1);
    check_roundtrip(-1);
    check_roundtrip(-976);
    check_roundtrip(mpz_class("-61644103"));  // 7753 * 7951, past trial division
    check_roundtrip(mpz_class(2) * 3 * 5 * 7 * 11 * 13);
    check_roundtrip(mpz_class("1000003") * mpz_class("1000033"));

    Factorization f = factor(-976);
    CHECK(f.sign == -1);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<mpz_class, unsigned>{2, 4});
    CHECK(f.factors[1] == std::pair<mpz_class, unsigned>{61, 1});

    CHECK_THROWS_AS(factor(0), std::invalid_argument);
}

TEST_CASE("factor randomized roundtrip") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        mpz_class n = mpz_class(rng() % 1000000) + 2;
        n *= mpz_class(rng() % 1000) + 1;
        if (rng() & 1) n = -n;
        Factorization f = factor(n);
        CHECK(f.recompose() == n);
    }
}

TEST_CASE("squarefree_part") {
    CHECK(squarefree_part(8) == 2);
    CHECK(squarefree_part(-8) == -2);
    CHECK(squarefree_part(1) == 1);
    CHECK(squarefree_part(12) == 3);
    CHECK(squarefree_part(-244) == -61);  // -2^2 * 61
    CHECK(squarefree_part(30) == 30);
}

TEST_CASE("valuation") {
    CHECK(valuation(8, 2) == 3);
    CHECK(valuation(-976, 2) == 4);
    CHECK(valuation(-976, 61) == 1);
    CHECK(valuation(5, 2) == 0);
    CHECK_THROWS_AS(valuation(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(valuation(4, 1), std::invalid_argument);
}

TEST_CASE("gcd_all and xgcd") {
    CHECK(gcd_all({}) == 0);
    CHECK(gcd_all({mpz_class(4), mpz_class(-6), mpz_class(10)}) == 2);
    CHECK(gcd_all({mpz_class(0), mpz_class(0)}) == 0);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
        std::vector<mpz_class> xs;
        std::size_t k = 1 + rng() % 5;
        for (std::size_t j = 0; j < k; ++j)
            xs.push_back(mpz_class(rng() % 2001) - 1000);
        auto [g, c] = xgcd(xs);
        CHECK(g == gcd_all(xs));
        mpz_class s = 0;
        for (std::size_t j = 0; j < k; ++j) s += c[j] * xs[j];
        CHECK(s == g);
    }
}

TEST_CASE("small_primes covers the start of the sequence") {
    const auto& ps = small_primes();
    REQUIRE(ps.size() >= 5);
    CHECK(ps[0] == 2);
    CHECK(ps[1] == 3);
    CHECK(ps[2] == 5);
    CHECK(ps[3] == 7);
    CHECK(ps[4] == 11);
}
