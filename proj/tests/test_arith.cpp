#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "sqfap/arith.hpp"

using namespace sqfap;

TEST_SUITE("arith") {

TEST_CASE("mobius_sieve examples") {
    CHECK(mobius_sieve(1, 1)(1) == 1);
    CHECK(mobius_sieve(4, 4)(4) == 0);
    CHECK(mobius_sieve(30, 30)(30) == -1);
}

TEST_CASE("mobius_sieve matches trial division") {
    const MobiusTable t(1, 20'000);
    for (u64 n = 1; n <= 20'000; ++n) REQUIRE(t(n) == oracle::mobius(n));
    CHECK(t.size() == 20'000);
}

TEST_CASE("offset and narrow-segment sieves match trial division") {
    const u64 lo = 999'000'000'000ULL, hi = lo + 3000;
    const MobiusTable t(lo, hi, 257);
    for (u64 n = lo; n <= hi; ++n) REQUIRE(t(n) == oracle::mobius(n));
    const MobiusTable threaded(12'345, 40'000, 1000, 3);
    for (u64 n = 12'345; n <= 40'000; ++n) REQUIRE(threaded(n) == oracle::mobius(n));
}

TEST_CASE("for_each_mobius_segment covers the interval in order") {
    u64 next = 5;
    for_each_mobius_segment(
        5, 10'000,
        [&](u64 seg_lo, std::span<const std::int8_t> mu) {
            CHECK(seg_lo == next);
            for (std::size_t i = 0; i < mu.size(); ++i) REQUIRE(mu[i] == oracle::mobius(seg_lo + i));
            next += mu.size();
        },
        333);
    CHECK(next == 10'001);
}

TEST_CASE("sieve interval errors") {
    CHECK_THROWS_AS(mobius_sieve(0, 10), std::domain_error);
    CHECK_THROWS_AS(mobius_sieve(10, 9), std::domain_error);
    CHECK_THROWS_AS(mobius_sieve(1, kSieveCeiling + 1), std::length_error);
    CHECK_THROWS_AS(mobius_sieve(1, kMaxTableEntries + 1), std::length_error);
    CHECK_THROWS_AS(squarefree_indicator(0, 10), std::domain_error);
    CHECK_THROWS_AS(mobius_sieve(1, 10).at(11), std::out_of_range);
}

TEST_CASE("squarefree_indicator examples") {
    const auto bits = squarefree_indicator(1, 20);
    CHECK(bits.test(1));
    CHECK_FALSE(bits.test(12));
    CHECK(bits.count() == 13);
    CHECK(bits.count(1, 10) == 7);
}

TEST_CASE("squarefree_indicator matches trial division") {
    const u64 lo = 1'000'000'007ULL, hi = lo + 50'000;
    const SquarefreeBits bits(lo, hi, 4096);
    u64 total = 0;
    for (u64 n = lo; n <= hi; ++n) {
        REQUIRE(bits.test(n) == oracle::squarefree(n));
        total += oracle::squarefree(n) ? 1 : 0;
    }
    CHECK(bits.count() == total);
}

TEST_CASE("mod_inverse examples and errors") {
    CHECK(mod_inverse(1, Modulus(97)) == 1);
    CHECK(mod_inverse(2, Modulus(5)) == 3);
    CHECK(mod_inverse(3, Modulus(7)) == 5);
    CHECK(mod_inverse(5, Modulus(1)) == 0);
    CHECK_THROWS_AS(mod_inverse(6, Modulus(9)), std::domain_error);
    CHECK_THROWS_AS(mod_inverse(0, Modulus(7)), std::domain_error);
    const u64 big = 1'000'000'007ULL;
    CHECK(mul_mod(mod_inverse(123'456'789, Modulus(big)), 123'456'789, big) == 1);
}

TEST_CASE("inverse_table matches brute-force inverses") {
    for (u64 q : {2ULL, 3ULL, 7ULL, 101ULL, 997ULL}) {
        const auto inv = inverse_table(q);
        for (u64 r = 1; r < q; ++r) REQUIRE(inv[r] == oracle::inverse(r, q));
    }
}

TEST_CASE("tau3 examples and multiplicativity") {
    CHECK(tau3(1) == 1);
    CHECK(tau3(7) == 3);
    CHECK(tau3(6) == 9);
    for (u64 d = 1; d <= 300; ++d) {
        u64 brute = 0;
        for (u64 x = 1; x <= d; ++x) {
            if (d % x != 0) continue;
            for (u64 y = 1; y <= d / x; ++y) brute += (d / x) % y == 0 ? 1 : 0;
        }
        REQUIRE(tau3(d) == brute);
    }
}

TEST_CASE("is_prime examples and trial-division agreement") {
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(1'000'000'007ULL));
    CHECK_FALSE(is_prime(0));
    for (u64 n = 0; n <= 20'000; ++n) REQUIRE(is_prime(n) == oracle::prime(n));
    // strong pseudoprimes to several small bases
    CHECK_FALSE(is_prime(3'215'031'751ULL));
    CHECK_FALSE(is_prime(3'825'123'056'546'413'051ULL));
    CHECK(is_prime(18'446'744'073'709'551'557ULL));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const u64 n = 1'000'000'000ULL + rng() % 1'000'000'000ULL;
        REQUIRE(is_prime(n) == oracle::prime(n));
    }
}

TEST_CASE("factorize, phi, mobius, isqrt, icbrt") {
    const auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0].p == 2);
    CHECK(f[0].e == 3);
    CHECK(f[2].p == 5);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(360) == 96);
    CHECK(mobius(1) == 1);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(is_squarefree(10));
    CHECK_FALSE(is_squarefree(18));
    for (u64 n : {0ULL, 1ULL, 15ULL, 16ULL, 17ULL, 999'999'999'999ULL, 1'000'000'000'000ULL, ~0ULL}) {
        const u64 r = isqrt(n);
        CHECK(static_cast<unsigned __int128>(r) * r <= n);
        CHECK(static_cast<unsigned __int128>(r + 1) * (r + 1) > n);
        const u64 c = icbrt(n);
        CHECK(static_cast<unsigned __int128>(c) * c * c <= n);
        CHECK(static_cast<unsigned __int128>(c + 1) * (c + 1) * (c + 1) > n);
    }
    CHECK(primes_up_to(30).size() == 10);
}

TEST_CASE("Modulus") {
    CHECK(Modulus(7).is_prime());
    CHECK_FALSE(Modulus(9).is_prime());
    CHECK_THROWS_AS(Modulus(0), std::domain_error);
    CHECK_THROWS_AS(Modulus::prime(9), std::domain_error);
    CHECK(static_cast<u64>(Modulus::prime(11)) == 11);
}

}  // TEST_SUITE
