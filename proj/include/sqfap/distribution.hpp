// Squarefree integers in arithmetic progressions: exact counts, the coprime
// average, the error term E(X,q,a) and its variance over residues.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sqfap/arith.hpp"
#include "sqfap/rational.hpp"

namespace sqfap {

struct ErrorRecord {
    u64 X = 0;
    u64 q = 1;
    u64 a = 0;
    u64 count = 0;        // squarefree n <= X, n = a (mod q)
    Rational reference;   // coprime squarefree count / phi(q)
    Rational error;       // count - reference
    double ratio_half = 0.0;     // error / (X/q)^{1/2}
    double ratio_quarter = 0.0;  // error / (X/q)^{1/4}
};

struct MainTermValue {
    double value = 0.0;
    u64 X = 0;
    u64 q = 0;
};

class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr u64 kLeastSquarefreeCap = 1'000'000'000ULL;

u64 count_squarefree_in_progression(u64 X, const Modulus& q, u64 a);

// #{n <= X : n squarefree, gcd(n, q) = 1}
u64 coprime_squarefree_count(u64 X, const Modulus& q);

Rational reference_term(u64 X, const Modulus& q);

// (6/pi^2) (1 - q^{-2})^{-1} X/q; q must be prime.
MainTermValue main_term(u64 X, const Modulus& q);

// Rejects gcd(a, q) != 1 with std::domain_error.
ErrorRecord error_term(u64 X, const Modulus& q, u64 a);

// Assembles a record from already-computed counts.
ErrorRecord make_error_record(u64 X, u64 q, u64 a, u64 count, u64 coprime_count, u64 phi);

// Sum over a coprime to q of E(X,q,a)^2.
Rational variance_over_residues(u64 X, const Modulus& q);

// Least squarefree n = a (mod q), n >= 1. Throws NotFound past cap.
u64 least_squarefree_in_progression(const Modulus& q, u64 a, u64 cap = kLeastSquarefreeCap);

// counts[a] = #{n <= X squarefree, n = a (mod q)} for every residue a, in a
// single pass over a prebuilt table covering [1, X].
std::vector<u64> counts_by_residue(const SquarefreeBits& table, u64 X, u64 q);

// For a fixed modulus, O(1) counting queries for every X up to x_max.
class ProgressionCounter {
public:
    ProgressionCounter(const SquarefreeBits& table, const Modulus& q, u64 x_max);

    u64 x_max() const noexcept { return x_max_; }
    u64 modulus() const noexcept { return q_; }
    u64 count(u64 X, u64 a) const;
    u64 coprime_count(u64 X) const;

private:
    u64 q_;
    u64 x_max_;
    // cumulative[n] = squarefree m <= n with m = n (mod q)
    std::vector<std::uint32_t> cumulative_;
    std::vector<std::uint32_t> coprime_prefix_;
};

}  // namespace sqfap
