#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "sqfap/distribution.hpp"

using namespace sqfap;

TEST_SUITE("distribution") {

TEST_CASE("count examples") {
    CHECK(count_squarefree_in_progression(10, Modulus(3), 1) == 3);
    CHECK(count_squarefree_in_progression(0, Modulus(5), 2) == 0);
    CHECK(count_squarefree_in_progression(10, Modulus(1), 0) == 7);
}

TEST_CASE("reference_term examples") {
    CHECK(reference_term(10, Modulus(3)) == Rational(5, 2));
    CHECK(reference_term(0, Modulus(7)) == Rational(0));
    CHECK(reference_term(10, Modulus(1)) == Rational(7));
}

TEST_CASE("main_term") {
    const auto m = main_term(1'000'000, Modulus(101));
    // (6/pi^2)(1 - 101^-2)^-1 10^6/101 evaluated independently
    CHECK(m.value == doctest::Approx(6019.670322280068).epsilon(1e-12));
    CHECK_THROWS_AS(main_term(100, Modulus(9)), std::domain_error);
}

TEST_CASE("main_term stays within 3 sqrt(X/q) of the reference term") {
    const SquarefreeBits table(1, 1'000'000);
    std::vector<u64> xs{1000, 10'000, 100'000, 1'000'000};
    std::mt19937_64 rng(5);
    for (int i = 0; i < 16; ++i) xs.push_back(1000 + rng() % 999'001);
    double worst = 0.0;
    for (u64 q : primes_up_to(1000)) {
        for (u64 X : xs) {
            // sf n <= X coprime to q: Q(X) - Q(X/q) + Q(X/q^2) - ...
            i64 coprime = 0;
            i64 sign = 1;
            for (u64 y = X; y > 0; y /= q, sign = -sign) coprime += sign * static_cast<i64>(table.count(1, y));
            const double ref = static_cast<double>(coprime) / static_cast<double>(q - 1);
            const double gap = std::fabs(main_term(X, Modulus(q)).value - ref) / std::sqrt(static_cast<double>(X) / q);
            worst = std::max(worst, gap);
        }
    }
    MESSAGE("max |main - reference| / sqrt(X/q) = " << worst);
    CHECK(worst <= 3.0);
}

TEST_CASE("error_term examples") {
    const auto e1 = error_term(10, Modulus(3), 1);
    CHECK(e1.count == 3);
    CHECK(e1.reference == Rational(5, 2));
    CHECK(e1.error == Rational(1, 2));
    CHECK(e1.ratio_half == doctest::Approx(0.5 / std::sqrt(10.0 / 3.0)));
    CHECK(e1.ratio_quarter == doctest::Approx(0.5 / std::pow(10.0 / 3.0, 0.25)));
    CHECK(error_term(10, Modulus(3), 2).error == Rational(-1, 2));
    CHECK(error_term(1234, Modulus(1), 0).error == Rational(0));
    CHECK(error_term(0, Modulus(3), 1).ratio_half == 0.0);
    CHECK_THROWS_AS(error_term(10, Modulus(9), 3), std::domain_error);
}

TEST_CASE("variance examples and composition") {
    CHECK(variance_over_residues(10, Modulus(3)) == Rational(1, 2));
    CHECK(variance_over_residues(777, Modulus(1)) == Rational(0));
    for (u64 q : {7ULL, 12ULL, 31ULL}) {
        Rational sum(0);
        for (u64 a = 0; a < q; ++a) {
            if (gcd(a, q) != 1) continue;
            const Rational e = error_term(5000, Modulus(q), a).error;
            sum += e * e;
        }
        CHECK(variance_over_residues(5000, Modulus(q)) == sum);
    }
}

TEST_CASE("least_squarefree_in_progression examples") {
    CHECK(least_squarefree_in_progression(Modulus(13), 1) == 1);
    CHECK(least_squarefree_in_progression(Modulus(5), 4) == 14);
    CHECK(least_squarefree_in_progression(Modulus(7), 4) == 11);
    CHECK_THROWS_AS(least_squarefree_in_progression(Modulus(7), 4, 10), NotFound);
}

TEST_CASE("counts agree with trial division for composite and prime moduli") {
    const SquarefreeBits table(1, 30'000);
    for (u64 q : {1ULL, 2ULL, 4ULL, 9ULL, 30ULL, 97ULL}) {
        const auto counts = counts_by_residue(table, 30'000, q);
        std::vector<u64> brute(q, 0);
        for (u64 n = 1; n <= 30'000; ++n) brute[n % q] += oracle::squarefree(n) ? 1 : 0;
        CHECK(counts == brute);
        for (u64 a = 0; a < q; ++a) REQUIRE(count_squarefree_in_progression(30'000, Modulus(q), a) == brute[a]);
    }
}

TEST_CASE("zero-sum of E for all X <= 10^4 and primes q <= 50") {
    const SquarefreeBits table(1, 10'000);
    for (u64 q : primes_up_to(50)) {
        const ProgressionCounter pc(table, Modulus(q), 10'000);
        for (u64 X = 1; X <= 10'000; ++X) {
            Rational sum(0);
            for (u64 a = 1; a < q; ++a) sum += make_error_record(X, q, a, pc.count(X, a), pc.coprime_count(X), q - 1).error;
            REQUIRE(sum.is_zero());
        }
    }
}

TEST_CASE("ProgressionCounter matches trial division") {
    const SquarefreeBits table(1, 3000);
    for (u64 q : {2ULL, 3ULL, 11ULL, 97ULL}) {
        const ProgressionCounter pc(table, Modulus(q), 3000);
        std::vector<u64> running(q, 0);
        u64 coprime = 0;
        for (u64 X = 1; X <= 3000; ++X) {
            if (oracle::squarefree(X)) {
                ++running[X % q];
                coprime += X % q != 0 ? 1 : 0;
            }
            for (u64 a = 0; a < q; ++a) REQUIRE(pc.count(X, a) == running[a]);
            REQUIRE(pc.coprime_count(X) == coprime);
        }
        CHECK(pc.count(0, 1) == 0);
        CHECK_THROWS_AS(pc.count(3001, 1), std::out_of_range);
    }
}

}  // TEST_SUITE
