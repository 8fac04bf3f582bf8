#include "sqfap/distribution.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sqfap {

namespace {

void require_coprime(u64 a, u64 q) {
    if (gcd(a % q, q) != 1) {
        throw std::domain_error("residue " + std::to_string(a) + " is not coprime to " +
                                std::to_string(q));
    }
}

}  // namespace

u64 count_squarefree_in_progression(u64 X, const Modulus& q, u64 a) {
    if (X == 0) return 0;
    const u64 qv = q.value();
    a %= qv;
    u64 count = 0;
    for_each_mobius_segment(1, X, [&](u64 seg_lo, std::span<const std::int8_t> mu) {
        // first n >= seg_lo with n = a (mod q)
        u64 n = seg_lo + (a + qv - seg_lo % qv) % qv;
        for (; n < seg_lo + mu.size(); n += qv) count += mu[n - seg_lo] != 0 ? 1 : 0;
    });
    return count;
}

u64 coprime_squarefree_count(u64 X, const Modulus& q) {
    if (X == 0) return 0;
    const u64 qv = q.value();
    u64 count = 0;
    for_each_mobius_segment(1, X, [&](u64 seg_lo, std::span<const std::int8_t> mu) {
        for (std::size_t i = 0; i < mu.size(); ++i) {
            if (mu[i] != 0 && gcd(seg_lo + i, qv) == 1) ++count;
        }
    });
    return count;
}

Rational reference_term(u64 X, const Modulus& q) {
    return Rational(static_cast<std::int64_t>(coprime_squarefree_count(X, q)),
                    static_cast<std::int64_t>(euler_phi(q.value())));
}

MainTermValue main_term(u64 X, const Modulus& q) {
    if (!q.is_prime()) throw std::domain_error("main_term requires a prime modulus");
    const double qd = static_cast<double>(q.value());
    const double density = 6.0 / (std::numbers::pi * std::numbers::pi);
    return {density / (1.0 - 1.0 / (qd * qd)) * static_cast<double>(X) / qd, X, q.value()};
}

ErrorRecord make_error_record(u64 X, u64 q, u64 a, u64 count, u64 coprime_count, u64 phi) {
    ErrorRecord rec;
    rec.X = X;
    rec.q = q;
    rec.a = a;
    rec.count = count;
    rec.reference = Rational(static_cast<std::int64_t>(coprime_count), static_cast<std::int64_t>(phi));
    rec.error = Rational(static_cast<std::int64_t>(count)) - rec.reference;
    if (X > 0) {
        const double scale = static_cast<double>(X) / static_cast<double>(q);
        const double e = rec.error.to_double();
        rec.ratio_half = e / std::sqrt(scale);
        rec.ratio_quarter = e / std::sqrt(std::sqrt(scale));
    }
    return rec;
}

ErrorRecord error_term(u64 X, const Modulus& q, u64 a) {
    require_coprime(a, q.value());
    return make_error_record(X, q.value(), a % q.value(), count_squarefree_in_progression(X, q, a),
                             coprime_squarefree_count(X, q), euler_phi(q.value()));
}

Rational variance_over_residues(u64 X, const Modulus& q) {
    const u64 qv = q.value();
    if (X == 0) return Rational(0);
    const auto table = squarefree_indicator(1, X);
    const auto counts = counts_by_residue(table, X, qv);
    const u64 phi = euler_phi(qv);
    u64 coprime = 0;
    for (u64 a = 0; a < qv; ++a) {
        if (gcd(a, qv) == 1) coprime += counts[a];
    }
    Rational total(0);
    for (u64 a = 0; a < qv; ++a) {
        if (gcd(a, qv) != 1) continue;
        const Rational e = make_error_record(X, qv, a, counts[a], coprime, phi).error;
        total += e * e;
    }
    return total;
}

u64 least_squarefree_in_progression(const Modulus& q, u64 a, u64 cap) {
    const u64 qv = q.value();
    require_coprime(a, qv);
    a %= qv;
    for (u64 n = a == 0 ? qv : a; n <= cap; n += qv) {
        if (is_squarefree(n)) return n;
    }
    throw NotFound("no squarefree n = " + std::to_string(a) + " (mod " + std::to_string(qv) +
                   ") below " + std::to_string(cap));
}

std::vector<u64> counts_by_residue(const SquarefreeBits& table, u64 X, u64 q) {
    if (q == 0) throw std::domain_error("modulus must be at least 1");
    std::vector<u64> counts(q, 0);
    if (X == 0) return counts;
    if (table.lo() != 1 || table.hi() < X) {
        throw std::out_of_range("squarefree table does not cover [1, X]");
    }
    u64 r = 1 % q;
    for (u64 n = 1; n <= X; ++n) {
        if (table.test(n)) ++counts[r];
        if (++r == q) r = 0;
    }
    return counts;
}

ProgressionCounter::ProgressionCounter(const SquarefreeBits& table, const Modulus& q, u64 x_max)
    : q_(q.value()), x_max_(x_max), cumulative_(x_max + 1, 0), coprime_prefix_(x_max + 1, 0) {
    if (x_max > 0 && (table.lo() != 1 || table.hi() < x_max)) {
        throw std::out_of_range("squarefree table does not cover [1, x_max]");
    }
    std::vector<bool> unit(q_);
    for (u64 r = 0; r < q_; ++r) unit[r] = gcd(r, q_) == 1;
    u64 r = 0;
    for (u64 n = 1; n <= x_max; ++n) {
        if (++r == q_) r = 0;
        const bool sf = table.test(n);
        cumulative_[n] = (n >= q_ ? cumulative_[n - q_] : 0) + (sf ? 1U : 0U);
        coprime_prefix_[n] = coprime_prefix_[n - 1] + (sf && unit[r] ? 1U : 0U);
    }
}

u64 ProgressionCounter::count(u64 X, u64 a) const {
    if (X > x_max_) throw std::out_of_range("ProgressionCounter: X beyond table");
    a %= q_;
    const u64 back = (X % q_ + q_ - a) % q_;
    if (back > X) return 0;
    return cumulative_[X - back];
}

u64 ProgressionCounter::coprime_count(u64 X) const {
    if (X > x_max_) throw std::out_of_range("ProgressionCounter: X beyond table");
    return coprime_prefix_[X];
}

}  // namespace sqfap
