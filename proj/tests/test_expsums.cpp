#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "sqfap/expsums.hpp"

using namespace sqfap;
using cd = std::complex<double>;

namespace {

bool close(cd a, cd b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

cd ex(double x) { return oracle::e(static_cast<long double>(x), 1.0L); }

cd twisted_oracle(u64 R, u64 q, u64 a) {
    cd s = 0.0;
    for (u64 n = 1; n <= R; ++n) {
        if (n % q == 0) continue;
        const int mu = oracle::mobius(n);
        if (mu == 0) continue;
        const u64 nb = oracle::inverse(n % q, q);
        s += static_cast<double>(mu) * oracle::e(static_cast<long double>(a * (nb * nb % q) % q), q);
    }
    return s;
}

cd inverse_square_oracle(i64 lo, i64 hi, u64 q, u64 a) {  // integers lo < r <= hi
    cd s = 0.0;
    for (i64 r = lo + 1; r <= hi; ++r) {
        const u64 rr = static_cast<u64>(((r % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
        if (rr == 0) continue;
        const u64 rb = oracle::inverse(rr, q);
        s += oracle::e(static_cast<long double>(a * (rb * rb % q) % q), q);
    }
    return s;
}

}  // namespace

TEST_SUITE("expsums") {

TEST_CASE("root table is conjugate-symmetric and exact at quarter turns") {
    const RootTable t(12);
    for (u64 k = 1; k < 12; ++k) CHECK(t[12 - k] == std::conj(t[k]));
    CHECK(t[0] == cd(1.0, 0.0));
    CHECK(close(t[3], cd(0.0, 1.0), 1e-15));
    CHECK(close(e(0.25), cd(0.0, 1.0), 1e-15));
}

TEST_CASE("twisted_mobius_sum examples") {
    for (u64 q : {5ULL, 101ULL}) {
        for (u64 a : {1ULL, 3ULL}) {
            const auto v = twisted_mobius_sum(1, Modulus(q), a, true);
            CHECK(close(v.value, oracle::e(a, q)));
            CHECK(v.term_count == 1);
        }
    }
    CHECK(close(twisted_mobius_sum(2, Modulus(3), 1, true).value, 0.0));
    CHECK(close(twisted_mobius_sum(4, Modulus(5), 1, true).value, ex(0.2) - 2.0 * ex(0.8)));
    CHECK_THROWS_AS(twisted_mobius_sum(10, Modulus(7), 14, true), std::domain_error);
    CHECK_THROWS_AS(twisted_mobius_sum(10, Modulus(9), 1, true), std::domain_error);
}

TEST_CASE("twisted_mobius_sum matches the direct sum") {
    std::mt19937_64 rng(1);
    const auto primes = primes_up_to(3000);
    const MobiusTable mu(1, 5000);
    for (int i = 0; i < 40; ++i) {
        const u64 q = primes[rng() % primes.size()];
        const u64 a = 1 + rng() % (q - 1);
        const u64 R = 1 + rng() % 5000;
        const auto v = twisted_mobius_sum(R, Modulus(q), a, true);
        REQUIRE(close(v.value, twisted_oracle(R, q, a), 1e-8));
        REQUIRE(close(twisted_mobius_sum(mu, R, Modulus(q), a, true).value, v.value, 1e-12));
        u64 coprime_sf = 0, all_sf = 0;
        for (u64 n = 1; n <= R; ++n) {
            if (!oracle::squarefree(n)) continue;
            ++all_sf;
            coprime_sf += n % q != 0 ? 1 : 0;
        }
        CHECK(v.trivial_bound == static_cast<double>(coprime_sf));
        const auto loose = twisted_mobius_sum(R, Modulus(q), a, false);
        CHECK(loose.trivial_bound == static_cast<double>(all_sf));
        CHECK(loose.value == v.value);
        REQUIRE(v.envelope.has_value());
        const double Rd = static_cast<double>(R), qd = static_cast<double>(q);
        CHECK(*v.envelope == doctest::Approx(Rd * std::pow(1.0 + qd / Rd, 1.0 / 12.0) * std::pow(qd, -1.0 / 48.0)));
    }
}

TEST_CASE("max_twisted_mobius_sum examples and oracle") {
    for (u64 q : {3ULL, 7ULL, 1009ULL}) CHECK(max_twisted_mobius_sum(1, Modulus(q)) == doctest::Approx(1.0));
    CHECK(max_twisted_mobius_sum(2, Modulus(3)) == doctest::Approx(0.0));
    // exhaustive over a in {1,2,3,4}
    CHECK(max_twisted_mobius_sum(4, Modulus(5)) == doctest::Approx(2.8698550446842765).epsilon(1e-12));
    for (u64 q : {7ULL, 31ULL, 101ULL}) {
        for (u64 t : {10ULL, 250ULL, 1000ULL}) {
            double best = 0.0;
            for (u64 a = 1; a < q; ++a) best = std::max(best, std::abs(twisted_oracle(t, q, a)));
            CHECK(max_twisted_mobius_sum(t, Modulus(q)) == doctest::Approx(best).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(max_twisted_mobius_sum(10, Modulus(100'003)), std::domain_error);
}

TEST_CASE("inverse_square_phase_sum examples") {
    CHECK(close(inverse_square_phase_sum(0.2, 0.9, Modulus(7), 1).value, 0.0));
    CHECK(inverse_square_phase_sum(0.2, 0.9, Modulus(7), 1).term_count == 0);
    CHECK(close(inverse_square_phase_sum(0.0, 1.0, Modulus(11), 4).value, oracle::e(4, 11)));
    CHECK(close(inverse_square_phase_sum(0.0, 4.0, Modulus(5), 1).value, cd(std::sqrt(5.0) - 1.0, 0.0)));
}

TEST_CASE("inverse_square_phase_sum matches the direct sum on real ranges") {
    std::mt19937_64 rng(2);
    const auto primes = primes_up_to(500);
    for (int i = 0; i < 200; ++i) {
        const u64 q = primes[rng() % primes.size()];
        const u64 a = 1 + rng() % (q - 1);
        const i64 lo = static_cast<i64>(rng() % 4000) - 2000;
        const i64 len = static_cast<i64>(rng() % 3000);
        const double fa = static_cast<double>(rng() % 1000) / 1000.0;
        const double fb = static_cast<double>(rng() % 1000) / 1000.0;
        // (lo + fa, lo + len + fb] contains the integers lo+1 .. lo+len
        const auto v = inverse_square_phase_sum(static_cast<double>(lo) + fa, static_cast<double>(lo + len) + fb,
                                                Modulus(q), a);
        REQUIRE(close(v.value, inverse_square_oracle(lo, lo + len, q, a), 1e-8));
        const double span = static_cast<double>(len) + fb - fa;
        REQUIRE(v.envelope.has_value());
        CHECK(*v.envelope == doctest::Approx(span / std::sqrt(static_cast<double>(q)) + std::sqrt(static_cast<double>(q))));
    }
}

TEST_CASE("complete_mixed_sum examples and oracle") {
    for (u64 q : {3ULL, 5ULL, 13ULL}) {
        CHECK(close(complete_mixed_sum(Modulus(q), 2, 0).value, -1.0));
        CHECK(close(complete_mixed_sum(Modulus(q), 0, 0).value, static_cast<double>(q - 1)));
    }
    const cd v = complete_mixed_sum(Modulus(5), 1, 1).value;
    CHECK(close(v, 1.0 + ex(0.2) + 2.0 * ex(0.4)));
    CHECK(v.real() == doctest::Approx(-0.309017).epsilon(1e-5));
    CHECK(v.imag() == doctest::Approx(2.126627).epsilon(1e-5));
    for (u64 q : {7ULL, 23ULL, 101ULL}) {
        for (u64 alpha = 0; alpha < q; alpha += 3) {
            for (u64 beta = 0; beta < q; beta += 5) {
                const auto s = complete_mixed_sum(Modulus(q), alpha, beta);
                REQUIRE(close(s.value, oracle::mixed(q, alpha, beta), 1e-9));
                REQUIRE(s.envelope.has_value());
                CHECK(*s.envelope == doctest::Approx(std::sqrt(static_cast<double>(q))));
            }
        }
    }
}

TEST_CASE("theta_sum examples and oracle") {
    CHECK(close(theta_sum(7.9, 0, Modulus(11)).value, 7.0));
    CHECK(close(theta_sum(0.5, 3, Modulus(11)).value, 0.0));
    CHECK(close(theta_sum(2.0, 1, Modulus(2)).value, 0.0));
    for (u64 q : {5ULL, 13ULL, 97ULL}) {
        for (u64 alpha = 0; alpha < q; ++alpha) {
            for (u64 t : {0ULL, 1ULL, 4ULL, 50ULL, 333ULL}) {
                const auto v = theta_sum(static_cast<double>(t) + 0.5, alpha, Modulus(q));
                REQUIRE(close(v.value, oracle::theta(t, alpha, q), 1e-9));
                if (alpha != 0 && t > 0) {
                    REQUIRE(v.envelope.has_value());
                    const double dist = std::min(alpha, q - alpha) / static_cast<double>(q);
                    CHECK(*v.envelope == doctest::Approx(std::min(static_cast<double>(t) + 0.5, 1.0 / dist)));
                    CHECK(v.magnitude() <= *v.envelope + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("short_kloosterman_sum examples") {
    for (u64 q : {5ULL, 101ULL, 7919ULL}) {
        CHECK(close(short_kloosterman_sum(q - 1, Modulus(q), 2).value, -1.0));
        CHECK(close(short_kloosterman_sum(1, Modulus(q), 3).value, oracle::e(3, q)));
    }
    CHECK(close(short_kloosterman_sum(3, Modulus(5), 1).value, -1.0 - ex(0.8)));
    CHECK(close(short_kloosterman_sum(3, Modulus(5), 1).value, ex(0.2) + ex(0.6) + ex(0.4)));
}

TEST_CASE("weil_constant_scan matches the exhaustive cubic scan") {
    {
        double best = 0.0;
        for (u64 alpha = 1; alpha < 3; ++alpha) {
            for (u64 beta = 1; beta < 3; ++beta) best = std::max(best, std::abs(oracle::mixed(3, alpha, beta)));
        }
        CHECK(weil_constant_scan(3).max_ratio == doctest::Approx(best / std::sqrt(3.0)).epsilon(1e-12));
    }
    double best = 0.0;
    for (u64 q : primes_up_to(41)) {
        if (q < 3) continue;
        for (u64 alpha = 1; alpha < q; ++alpha) {
            for (u64 beta = 1; beta < q; ++beta) {
                best = std::max(best, std::abs(oracle::mixed(q, alpha, beta)) / std::sqrt(static_cast<double>(q)));
            }
        }
    }
    const auto scan = weil_constant_scan(41);
    CHECK(scan.max_ratio == doctest::Approx(best).epsilon(1e-10));
    CHECK(std::abs(oracle::mixed(scan.q, scan.alpha, scan.beta)) / std::sqrt(static_cast<double>(scan.q)) ==
          doctest::Approx(scan.max_ratio).epsilon(1e-10));
    CHECK_THROWS_AS(weil_constant_scan(2), std::domain_error);
    CHECK_THROWS_AS(weil_constant_scan(kMaxWeilScan + 1), std::domain_error);
}

TEST_CASE("orthogonality identity counting r^2 m = a (mod q)") {
    // #{r <= t, m <= Y : q does not divide r, r^2 m = a} = q^-2 sum_{alpha,beta} S(q; alpha, a beta) Theta(t, alpha) Theta(Y, beta)
    for (u64 q : {5ULL, 7ULL, 11ULL}) {
        for (u64 a : {1ULL, 3ULL}) {
            const u64 t = 9, Y = 23;
            u64 count = 0;
            for (u64 r = 1; r <= t; ++r) {
                for (u64 m = 1; m <= Y; ++m) count += (r % q != 0 && r * r * m % q == a) ? 1 : 0;
            }
            cd s = 0.0;
            for (u64 alpha = 0; alpha < q; ++alpha) {
                for (u64 beta = 0; beta < q; ++beta) {
                    s += complete_mixed_sum(Modulus(q), alpha, a * beta % q).value *
                         theta_sum(static_cast<double>(t), alpha, Modulus(q)).value *
                         theta_sum(static_cast<double>(Y), beta, Modulus(q)).value;
                }
            }
            s /= static_cast<double>(q * q);
            CHECK(close(s, static_cast<double>(count), 1e-9));
        }
    }
}

TEST_CASE("every value respects its trivial bound") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        const u64 q = primes_up_to(2000)[1 + rng() % 300];
        const u64 a = 1 + rng() % (q - 1);
        for (const auto& v : {twisted_mobius_sum(1 + rng() % 4000, Modulus(q), a, true),
                              inverse_square_phase_sum(-100.5, static_cast<double>(rng() % 5000), Modulus(q), a),
                              short_kloosterman_sum(1 + rng() % 4000, Modulus(q), a),
                              complete_mixed_sum(Modulus(q), a, 1 + rng() % (q - 1))}) {
            REQUIRE(v.magnitude() <= v.trivial_bound + 1e-9);
        }
    }
}

}  // TEST_SUITE
