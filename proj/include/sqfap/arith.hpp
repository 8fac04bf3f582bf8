// Exact integer arithmetic and sieving primitives.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sqfap {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Largest interval end the sieves accept.
inline constexpr u64 kSieveCeiling = 1'000'000'000'000ULL;
// Largest table (entries) materialized in one MobiusTable.
inline constexpr u64 kMaxTableEntries = u64{1} << 31;
inline constexpr std::size_t kDefaultSegmentWidth = std::size_t{1} << 22;

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

u64 gcd(u64 a, u64 b);
u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
u64 isqrt(u64 n);
u64 icbrt(u64 n);

// Prime factorization by trial division; pairs (p, e) in ascending p.
struct PrimePower {
    u64 p;
    unsigned e;
};
std::vector<PrimePower> factorize(u64 n);

u64 euler_phi(u64 n);
int mobius(u64 n);          // single value by factorization
bool is_squarefree(u64 n);  // single value by trial division
u64 tau3(u64 d);            // ordered triples (a,b,c) with abc = d

std::vector<u64> primes_up_to(u64 n);

// A modulus q >= 1. Primality is decided once, at construction.
class Modulus {
public:
    explicit Modulus(u64 q);
    // Throws std::domain_error unless q is prime.
    static Modulus prime(u64 q);

    u64 value() const noexcept { return q_; }
    bool is_prime() const noexcept { return prime_; }
    operator u64() const noexcept { return q_; }

private:
    u64 q_;
    bool prime_;
};

// r^{-1} mod q in [1, q-1] (0 when q == 1). std::domain_error if gcd(r,q) != 1.
u64 mod_inverse(u64 r, const Modulus& q);
u64 mod_inverse(u64 r, u64 q);

// All inverses 1..q-1 modulo a prime q, index 0 unused.
std::vector<std::uint32_t> inverse_table(u64 q);

// Sieved mu(n) for n in [lo, hi]; immutable once built.
class MobiusTable {
public:
    MobiusTable(u64 lo, u64 hi, std::size_t segment_width = kDefaultSegmentWidth,
                unsigned threads = 1);

    u64 lo() const noexcept { return lo_; }
    u64 hi() const noexcept { return hi_; }
    std::size_t size() const noexcept { return values_.size(); }
    int operator()(u64 n) const { return values_[n - lo_]; }
    int at(u64 n) const;
    std::span<const std::int8_t> values() const noexcept { return values_; }

private:
    u64 lo_;
    u64 hi_;
    std::vector<std::int8_t> values_;
};

MobiusTable mobius_sieve(u64 lo, u64 hi);

// Packed mu^2 bits over [lo, hi].
class SquarefreeBits {
public:
    SquarefreeBits(u64 lo, u64 hi, std::size_t segment_width = kDefaultSegmentWidth);

    u64 lo() const noexcept { return lo_; }
    u64 hi() const noexcept { return hi_; }
    bool test(u64 n) const {
        const u64 i = n - lo_;
        return (words_[i >> 6] >> (i & 63)) & 1U;
    }
    bool at(u64 n) const;
    u64 count() const;
    u64 count(u64 a, u64 b) const;  // inclusive sub-range

private:
    u64 lo_;
    u64 hi_;
    std::vector<u64> words_;
};

SquarefreeBits squarefree_indicator(u64 lo, u64 hi);

// Streams mu over [lo, hi] one segment at a time without holding the whole
// interval. The callback receives the first n of the segment and its values.
using SegmentVisitor = std::function<void(u64 seg_lo, std::span<const std::int8_t> mu)>;
void for_each_mobius_segment(u64 lo, u64 hi, const SegmentVisitor& visit,
                             std::size_t segment_width = kDefaultSegmentWidth);

}  // namespace sqfap
