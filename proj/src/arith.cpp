#include "sqfap/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace sqfap {

u64 gcd(u64 a, u64 b) {
    while (b != 0) {
        const u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 icbrt(u64 n) {
    u64 r = static_cast<u64>(std::cbrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    static constexpr std::array<u64, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : kWitnesses) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1;
        ++s;
    }
    // The first twelve primes form a complete witness set below 3.3e24.
    for (u64 a : kWitnesses) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<PrimePower> factorize(u64 n) {
    std::vector<PrimePower> out;
    if (n < 2) return out;
    auto strip = [&](u64 p) {
        if (n % p != 0) return;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    };
    strip(2);
    strip(3);
    for (u64 p = 5; p <= n / p; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

u64 euler_phi(u64 n) {
    if (n == 0) throw std::domain_error("euler_phi: n must be positive");
    u64 phi = n;
    for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

int mobius(u64 n) {
    if (n == 0) throw std::domain_error("mobius: n must be positive");
    int mu = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

bool is_squarefree(u64 n) {
    if (n == 0) return false;
    return mobius(n) != 0;
}

u64 tau3(u64 d) {
    if (d == 0) throw std::domain_error("tau3: d must be positive");
    u64 t = 1;
    for (const auto& [p, e] : factorize(d)) t *= u64{e + 2} * (e + 1) / 2;
    return t;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return primes;
}

Modulus::Modulus(u64 q) : q_(q), prime_(sqfap::is_prime(q)) {
    if (q == 0) throw std::domain_error("modulus must be at least 1");
}

Modulus Modulus::prime(u64 q) {
    Modulus m(q);
    if (!m.is_prime()) throw std::domain_error("modulus " + std::to_string(q) + " is not prime");
    return m;
}

u64 mod_inverse(u64 r, u64 q) {
    if (q == 0) throw std::domain_error("mod_inverse: modulus must be positive");
    if (q == 1) return 0;
    i64 old_r = static_cast<i64>(r % q), cur_r = static_cast<i64>(q);
    i64 old_s = 1, cur_s = 0;
    while (cur_r != 0) {
        const i64 quot = old_r / cur_r;
        old_r -= quot * cur_r;
        std::swap(old_r, cur_r);
        old_s -= quot * cur_s;
        std::swap(old_s, cur_s);
    }
    if (old_r != 1) {
        throw std::domain_error("mod_inverse: " + std::to_string(r) + " is not invertible mod " +
                                std::to_string(q));
    }
    const i64 qs = static_cast<i64>(q);
    return static_cast<u64>(((old_s % qs) + qs) % qs);
}

u64 mod_inverse(u64 r, const Modulus& q) { return mod_inverse(r, q.value()); }

std::vector<std::uint32_t> inverse_table(u64 q) {
    if (q < 2 || q > 0xFFFFFFFFULL) throw std::domain_error("inverse_table: modulus out of range");
    std::vector<std::uint32_t> inv(q, 0);
    inv[1] = 1;
    for (u64 i = 2; i < q; ++i) {
        // i * inv(i) = 1 via q = (q/i) i + (q mod i)
        inv[i] = static_cast<std::uint32_t>((q - (q / i) * inv[q % i] % q) % q);
    }
    return inv;
}

namespace {

void check_interval(u64 lo, u64 hi) {
    if (lo == 0) throw std::domain_error("sieve interval must start at 1 or later");
    if (hi < lo) throw std::domain_error("sieve interval is empty (hi < lo)");
    if (hi > kSieveCeiling) throw std::length_error("sieve interval exceeds 10^12");
}

void check_table(u64 lo, u64 hi) {
    check_interval(lo, hi);
    if (hi - lo + 1 > kMaxTableEntries) {
        throw std::length_error("sieve interval too large to materialize (" +
                                std::to_string(hi - lo + 1) + " entries)");
    }
}

// mu over [seg_lo, seg_lo + out.size()); primes must cover sqrt of the end.
void sieve_mobius_segment(u64 seg_lo, std::span<std::int8_t> out, std::span<const u64> primes,
                          std::vector<u64>& prod) {
    const std::size_t width = out.size();
    const u64 seg_hi = seg_lo + width - 1;
    std::fill(out.begin(), out.end(), std::int8_t{1});
    prod.assign(width, 1);
    for (u64 p : primes) {
        if (p * p > seg_hi) break;
        for (u64 n = (seg_lo + p - 1) / p * p; n <= seg_hi; n += p) {
            const std::size_t i = n - seg_lo;
            out[i] = static_cast<std::int8_t>(-out[i]);
            prod[i] *= p;
        }
        const u64 p2 = p * p;
        for (u64 n = (seg_lo + p2 - 1) / p2 * p2; n <= seg_hi; n += p2) out[n - seg_lo] = 0;
    }
    for (std::size_t i = 0; i < width; ++i) {
        // one prime factor above sqrt(n) remains unseen
        if (out[i] != 0 && prod[i] != seg_lo + i) out[i] = static_cast<std::int8_t>(-out[i]);
    }
}

}  // namespace

MobiusTable::MobiusTable(u64 lo, u64 hi, std::size_t segment_width, unsigned threads)
    : lo_(lo), hi_(hi) {
    check_table(lo, hi);
    if (segment_width == 0) throw std::domain_error("segment width must be positive");
    values_.resize(hi - lo + 1);
    const auto primes = primes_up_to(isqrt(hi));
    const u64 nseg = (values_.size() + segment_width - 1) / segment_width;
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(nseg)));

    auto work = [&](unsigned tid) {
        std::vector<u64> prod;
        for (u64 s = tid; s < nseg; s += threads) {
            const std::size_t off = s * segment_width;
            const std::size_t w = std::min<std::size_t>(segment_width, values_.size() - off);
            sieve_mobius_segment(lo + off, std::span(values_).subspan(off, w), primes, prod);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
}

int MobiusTable::at(u64 n) const {
    if (n < lo_ || n > hi_) throw std::out_of_range("MobiusTable::at outside sieved interval");
    return values_[n - lo_];
}

MobiusTable mobius_sieve(u64 lo, u64 hi) { return MobiusTable(lo, hi); }

void for_each_mobius_segment(u64 lo, u64 hi, const SegmentVisitor& visit,
                             std::size_t segment_width) {
    check_interval(lo, hi);
    if (segment_width == 0) throw std::domain_error("segment width must be positive");
    const auto primes = primes_up_to(isqrt(hi));
    std::vector<std::int8_t> buf;
    std::vector<u64> prod;
    for (u64 seg_lo = lo;; seg_lo += segment_width) {
        const u64 seg_hi = std::min<u64>(hi, seg_lo + segment_width - 1);
        buf.resize(seg_hi - seg_lo + 1);
        sieve_mobius_segment(seg_lo, buf, primes, prod);
        visit(seg_lo, buf);
        if (seg_hi == hi) break;
    }
}

SquarefreeBits::SquarefreeBits(u64 lo, u64 hi, std::size_t segment_width) : lo_(lo), hi_(hi) {
    check_table(lo, hi);
    if (segment_width == 0) throw std::domain_error("segment width must be positive");
    const u64 len = hi - lo + 1;
    words_.assign((len + 63) / 64, 0);
    const auto primes = primes_up_to(isqrt(hi));
    std::vector<std::uint8_t> seg;
    for (u64 seg_lo = lo;; seg_lo += segment_width) {
        const u64 seg_hi = std::min<u64>(hi, seg_lo + segment_width - 1);
        seg.assign(seg_hi - seg_lo + 1, 1);
        for (u64 p : primes) {
            const u64 p2 = p * p;
            if (p2 > seg_hi) break;
            for (u64 n = (seg_lo + p2 - 1) / p2 * p2; n <= seg_hi; n += p2) seg[n - seg_lo] = 0;
        }
        for (u64 n = seg_lo; n <= seg_hi; ++n) {
            if (seg[n - seg_lo] != 0) {
                const u64 i = n - lo;
                words_[i >> 6] |= u64{1} << (i & 63);
            }
        }
        if (seg_hi == hi) break;
    }
}

bool SquarefreeBits::at(u64 n) const {
    if (n < lo_ || n > hi_) throw std::out_of_range("SquarefreeBits::at outside sieved interval");
    return test(n);
}

u64 SquarefreeBits::count() const {
    u64 c = 0;
    for (u64 w : words_) c += static_cast<u64>(std::popcount(w));
    return c;
}

u64 SquarefreeBits::count(u64 a, u64 b) const {
    a = std::max(a, lo_);
    b = std::min(b, hi_);
    if (a > b) return 0;
    u64 c = 0;
    for (u64 n = a; n <= b; ++n) c += test(n) ? 1 : 0;
    return c;
}

SquarefreeBits squarefree_indicator(u64 lo, u64 hi) { return SquarefreeBits(lo, hi); }

}  // namespace sqfap
