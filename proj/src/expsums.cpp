#include "sqfap/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sqfap/compensated.hpp"

namespace sqfap {

namespace {

constexpr u64 kInverseTableLimit = u64{1} << 22;

// Modular inverses of a prime modulus, tabulated when the modulus is small.
class Inverses {
public:
    explicit Inverses(u64 q) : q_(q) {
        if (q <= kInverseTableLimit && q >= 2) table_ = inverse_table(q);
    }
    u64 operator()(u64 r) const {
        r %= q_;
        return table_.empty() ? mod_inverse(r, q_) : table_[r];
    }

private:
    u64 q_;
    std::vector<std::uint32_t> table_;
};

void require_prime(const Modulus& q, const char* what) {
    if (!q.is_prime()) throw std::domain_error(std::string(what) + " requires a prime modulus");
}

void require_unit(u64 a, u64 q, const char* what) {
    if (gcd(a % q, q) != 1) {
        throw std::domain_error(std::string(what) + ": a = " + std::to_string(a) +
                                " is not coprime to q = " + std::to_string(q));
    }
}

i64 floor_div(i64 a, i64 b) {
    i64 d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
}

// Multiplicity of each residue class mod q among the integers in [lo, hi].
std::vector<u64> residue_multiplicities(i64 lo, i64 hi, u64 q) {
    std::vector<u64> cnt(q, 0);
    if (hi < lo) return cnt;
    const i64 qs = static_cast<i64>(q);
    for (u64 c = 0; c < q; ++c) {
        const i64 ci = static_cast<i64>(c);
        cnt[c] = static_cast<u64>(floor_div(hi - ci, qs) - floor_div(lo - 1 - ci, qs));
    }
    return cnt;
}

u64 reduce(i64 r, u64 q) {
    const i64 qs = static_cast<i64>(q);
    return static_cast<u64>(((r % qs) + qs) % qs);
}

// sum over integers r in [lo, hi] with q not dividing r of e(phase(r mod q) / q).
template <typename Phase>
ExpSumValue unit_residue_sum(i64 lo, i64 hi, u64 q, const RootTable& roots, Phase phase) {
    ExpSumValue out;
    if (hi < lo) return out;
    CompensatedComplex acc;
    const u64 len = static_cast<u64>(hi - lo) + 1;
    if (len <= q) {
        for (i64 r = lo; r <= hi; ++r) {
            const u64 c = reduce(r, q);
            if (c == 0) continue;
            acc.add(roots[phase(c)]);
            ++out.term_count;
        }
    } else {
        const auto cnt = residue_multiplicities(lo, hi, q);
        for (u64 c = 1; c < q; ++c) {
            if (cnt[c] == 0) continue;
            acc.add_scaled(roots[phase(c)], static_cast<double>(cnt[c]));
            out.term_count += cnt[c];
        }
    }
    out.value = acc.value();
    out.trivial_bound = static_cast<double>(out.term_count);
    return out;
}

}  // namespace

std::complex<double> e(double x) {
    const double frac = x - std::floor(x);
    return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

RootTable::RootTable(u64 q) : q_(q), roots_(q) {
    if (q == 0) throw std::domain_error("RootTable: modulus must be positive");
    for (u64 k = 0; 2 * k <= q; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q);
        roots_[k] = {std::cos(angle), std::sin(angle)};
    }
    if (q % 2 == 0) roots_[q / 2] = {-1.0, 0.0};
    for (u64 k = q / 2 + 1; k < q; ++k) roots_[k] = std::conj(roots_[q - k]);
}

ExpSumValue twisted_mobius_sum(const MobiusTable& mu, u64 R, const Modulus& q, u64 a,
                               bool require_coprime) {
    require_prime(q, "twisted_mobius_sum");
    const u64 qv = q.value();
    require_unit(a, qv, "twisted_mobius_sum");
    if (R == 0) throw std::domain_error("twisted_mobius_sum: R must be at least 1");
    if (mu.lo() != 1 || mu.hi() < R) throw std::out_of_range("Mobius table does not cover [1, R]");
    a %= qv;
    const RootTable roots(qv);
    const Inverses inv(qv);
    CompensatedComplex acc;
    ExpSumValue out;
    u64 squarefree_total = 0;
    for (u64 n = 1; n <= R; ++n) {
        const int m = mu(n);
        if (m == 0) continue;
        ++squarefree_total;
        if (n % qv == 0) continue;
        const u64 nb = inv(n);
        const u64 k = mul_mod(a, mul_mod(nb, nb, qv), qv);
        acc.add(m > 0 ? roots[k] : -roots[k]);
        ++out.term_count;
    }
    out.value = acc.value();
    out.trivial_bound = static_cast<double>(require_coprime ? out.term_count : squarefree_total);
    const double Rd = static_cast<double>(R);
    const double qd = static_cast<double>(qv);
    out.envelope = Rd * std::pow(1.0 + qd / Rd, 1.0 / 12.0) * std::pow(qd, -1.0 / 48.0);
    return out;
}

ExpSumValue twisted_mobius_sum(u64 R, const Modulus& q, u64 a, bool require_coprime) {
    if (R == 0) throw std::domain_error("twisted_mobius_sum: R must be at least 1");
    return twisted_mobius_sum(mobius_sieve(1, R), R, q, a, require_coprime);
}

double max_twisted_mobius_sum(const MobiusTable& mu, u64 t, const Modulus& q) {
    require_prime(q, "max_twisted_mobius_sum");
    const u64 qv = q.value();
    if (qv > kMaxTwistedModulus) {
        throw std::domain_error("max_twisted_mobius_sum: q = " + std::to_string(qv) +
                                " exceeds the exhaustive cap " + std::to_string(kMaxTwistedModulus));
    }
    if (t == 0) return 0.0;
    if (mu.lo() != 1 || mu.hi() < t) throw std::out_of_range("Mobius table does not cover [1, t]");
    // Fold the n-sum onto the residues k = nbar^2 that actually occur.
    std::vector<i64> weight(qv, 0);
    const Inverses inv(qv);
    for (u64 n = 1; n <= t; ++n) {
        const int m = mu(n);
        if (m == 0 || n % qv == 0) continue;
        const u64 nb = inv(n);
        weight[mul_mod(nb, nb, qv)] += m;
    }
    std::vector<std::pair<u64, double>> support;
    for (u64 k = 1; k < qv; ++k) {
        if (weight[k] != 0) support.emplace_back(k, static_cast<double>(weight[k]));
    }
    const RootTable roots(qv);
    double best = 0.0;
    for (u64 a = 1; a < qv; ++a) {
        CompensatedComplex acc;
        for (const auto& [k, w] : support) acc.add_scaled(roots[mul_mod(a, k, qv)], w);
        best = std::max(best, std::abs(acc.value()));
    }
    return best;
}

double max_twisted_mobius_sum(u64 t, const Modulus& q) {
    if (t == 0) return 0.0;
    return max_twisted_mobius_sum(mobius_sieve(1, t), t, q);
}

ExpSumValue inverse_square_phase_sum(double A, double B, const Modulus& q, u64 a) {
    require_prime(q, "inverse_square_phase_sum");
    const u64 qv = q.value();
    require_unit(a, qv, "inverse_square_phase_sum");
    a %= qv;
    const RootTable roots(qv);
    const Inverses inv(qv);
    const i64 lo = static_cast<i64>(std::floor(A)) + 1;
    const i64 hi = static_cast<i64>(std::floor(B));
    auto out = unit_residue_sum(lo, hi, qv, roots, [&](u64 c) {
        const u64 cb = inv(c);
        return mul_mod(a, mul_mod(cb, cb, qv), qv);
    });
    const double sq = std::sqrt(static_cast<double>(qv));
    out.envelope = std::max(0.0, B - A) / sq + sq;
    return out;
}

ExpSumValue complete_mixed_sum(const Modulus& q, u64 alpha, u64 beta) {
    require_prime(q, "complete_mixed_sum");
    const u64 qv = q.value();
    alpha %= qv;
    beta %= qv;
    const RootTable roots(qv);
    const auto inv = inverse_table(qv);
    CompensatedComplex acc;
    for (u64 h = 1; h < qv; ++h) {
        const u64 hb = inv[h];
        const u64 k = (mul_mod(alpha, h, qv) + mul_mod(beta, mul_mod(hb, hb, qv), qv)) % qv;
        acc.add(roots[k]);
    }
    ExpSumValue out;
    out.value = acc.value();
    out.term_count = qv - 1;
    out.trivial_bound = static_cast<double>(qv - 1);
    out.envelope = std::sqrt(static_cast<double>(qv));
    return out;
}

ExpSumValue theta_sum(double t, u64 alpha, const Modulus& q) {
    const u64 qv = q.value();
    alpha %= qv;
    ExpSumValue out;
    const u64 N = t < 1.0 ? 0 : static_cast<u64>(std::floor(t));
    out.term_count = N;
    out.trivial_bound = static_cast<double>(N);
    if (alpha == 0) {
        out.value = static_cast<double>(N);
        out.envelope = std::max(0.0, t);
        return out;
    }
    const double qd = static_cast<double>(qv);
    // z = e(-alpha/q); sum = z (1 - z^N) / (1 - z) with z^N reduced exactly
    const std::complex<double> z = e(-static_cast<double>(alpha) / qd);
    const u64 power = mul_mod(alpha, N % qv, qv);
    const std::complex<double> zN = e(-static_cast<double>(power) / qd);
    out.value = z * (1.0 - zN) / (1.0 - z);
    const double dist = std::min(alpha, qv - alpha) / qd;
    out.envelope = std::min(std::max(0.0, t), 1.0 / dist);
    return out;
}

ExpSumValue short_kloosterman_sum(u64 M, const Modulus& q, u64 a) {
    require_prime(q, "short_kloosterman_sum");
    const u64 qv = q.value();
    require_unit(a, qv, "short_kloosterman_sum");
    if (M == 0) throw std::domain_error("short_kloosterman_sum: M must be at least 1");
    a %= qv;
    const RootTable roots(qv);
    const Inverses inv(qv);
    auto out = unit_residue_sum(1, static_cast<i64>(M), qv, roots,
                                [&](u64 c) { return mul_mod(a, inv(c), qv); });
    const double lq = std::log(static_cast<double>(qv));
    const double llq = std::log(lq);
    if (M >= 2 && llq > 0.0) {
        const double Md = static_cast<double>(M);
        out.envelope = Md * lq * llq * llq * llq / std::pow(std::log(Md), 1.5);
    }
    return out;
}

WeilScanResult weil_constant_scan(u64 q_max) {
    if (q_max > kMaxWeilScan) {
        throw std::domain_error("weil_constant_scan: q_max = " + std::to_string(q_max) +
                                " exceeds cap " + std::to_string(kMaxWeilScan));
    }
    if (q_max < 3) throw std::domain_error("weil_constant_scan: needs q_max >= 3");
    WeilScanResult best;
    for (u64 q : primes_up_to(q_max)) {
        if (q < 3) continue;
        // S(q; alpha, beta) = S(q; 1, alpha^2 beta) after h -> alpha^{-1} h, so
        // one sweep over k = alpha^2 beta covers every pair with alpha != 0.
        const Modulus m = Modulus::prime(q);
        const double sq = std::sqrt(static_cast<double>(q));
        for (u64 k = 1; k < q; ++k) {
            const double ratio = complete_mixed_sum(m, 1, k).magnitude() / sq;
            if (ratio > best.max_ratio) best = {ratio, q, 1, k};
        }
    }
    return best;
}

}  // namespace sqfap
