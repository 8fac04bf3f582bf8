// Selberg's upper-bound sieve, in the form
//     sum_{n mod p not in Omega_p for all p | P} a_n
//         <= Y / J + sum_{d | P, d <= sqrt(D)} tau_3(d) |r_d|,
// with J = sum_{d | P, d < sqrt(D)} h(d) and h(p) = g(p) / (1 - g(p)),
// plus its instantiation for detecting perfect squares.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sqfap/arith.hpp"
#include "sqfap/rational.hpp"

namespace sqfap {

struct SieveInstance {
    std::vector<double> weights;                // weights[n] = a_n >= 0
    std::vector<u64> primes;                    // the primes dividing P, ascending
    std::map<u64, std::vector<u64>> omega;      // p -> forbidden classes mod p
    std::map<u64, Rational> g;                  // p -> g(p), 0 < g(p) < 1
    Rational Y;                                 // main-term scale
    double D = 0.0;                             // sieve level

    u64 P() const;
    Rational g_of(u64 d) const;  // multiplicative over p | d
    Rational h_of(u64 d) const;  // h(p) = g(p) / (1 - g(p))
    bool in_omega(u64 n, u64 p) const;

    // Throws std::domain_error on a malformed instance.
    void validate() const;
};

struct AdValue {
    double size = 0.0;       // |A_d|
    double remainder = 0.0;  // r_d = |A_d| - g(d) Y
};

struct SieveReport {
    double bound = 0.0;
    double J = 0.0;
    std::map<u64, double> remainders;  // d -> r_d for d | P, d <= sqrt(D)
    std::optional<double> exact;        // brute-force sifted mass
};

// d must divide P.
AdValue compute_Ad(const SieveInstance& inst, u64 d);

// Squarefree divisors of P not exceeding sqrt(bound_sq), ascending.
std::vector<u64> divisors_of_P(const SieveInstance& inst, double bound_sq);

SieveReport sieve_upper_bound(const SieveInstance& inst, bool compute_exact = false);

// a_n = #{M < m <= 2M : m n = a (mod q)} for n <= X/M, Y = X/q,
// Omega_p = non-squares mod p for odd p <= sqrt(D), p != q.
SieveInstance instantiate_square_detection(u64 X, u64 M, const Modulus& q, u64 a, double D);

// #{(m, r) : M < m <= 2M, 1 <= r <= sqrt(X/M), r^2 m = a (mod q)}
u64 frak_S_bruteforce(u64 X, u64 M, const Modulus& q, u64 a);

// sum of a_n over perfect squares n
double square_supported_mass(const SieveInstance& inst);

}  // namespace sqfap
