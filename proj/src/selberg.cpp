#include "sqfap/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sqfap/compensated.hpp"

namespace sqfap {

namespace {

std::vector<u64> prime_divisors(const SieveInstance& inst, u64 d) {
    std::vector<u64> out;
    u64 rest = d;
    for (u64 p : inst.primes) {
        if (rest % p == 0) {
            out.push_back(p);
            rest /= p;
        }
    }
    if (rest != 1) throw std::domain_error("d = " + std::to_string(d) + " does not divide P");
    return out;
}

i64 floor_div(i64 a, i64 b) {
    i64 d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
}

}  // namespace

u64 SieveInstance::P() const {
    u64 prod = 1;
    for (u64 p : primes) {
        if (prod > ~u64{0} / p) throw std::overflow_error("sieve product P overflows 64 bits");
        prod *= p;
    }
    return prod;
}

Rational SieveInstance::g_of(u64 d) const {
    Rational out(1);
    for (u64 p : prime_divisors(*this, d)) out = out * g.at(p);
    return out;
}

Rational SieveInstance::h_of(u64 d) const {
    Rational out(1);
    for (u64 p : prime_divisors(*this, d)) {
        const Rational gp = g.at(p);
        out = out * (gp / (Rational(1) - gp));
    }
    return out;
}

bool SieveInstance::in_omega(u64 n, u64 p) const {
    const auto& cls = omega.at(p);
    return std::binary_search(cls.begin(), cls.end(), n % p);
}

void SieveInstance::validate() const {
    if (!(D > 1.0)) throw std::domain_error("sieve level D must exceed 1");
    if (!(Rational(0) < Y)) throw std::domain_error("sieve scale Y must be positive");
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::domain_error("sieve weights must be nonnegative");
    }
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const u64 p = primes[i];
        if (!is_prime(p)) throw std::domain_error(std::to_string(p) + " in P is not prime");
        if (i > 0 && primes[i - 1] >= p) throw std::domain_error("primes of P must be distinct, ascending");
        const auto it = omega.find(p);
        if (it == omega.end() || it->second.empty() || it->second.size() >= p) {
            throw std::domain_error("Omega_" + std::to_string(p) + " must satisfy 0 < |Omega_p| < p");
        }
        if (!std::is_sorted(it->second.begin(), it->second.end()) || it->second.back() >= p) {
            throw std::domain_error("Omega_" + std::to_string(p) + " must hold sorted residues mod p");
        }
        const auto gp = g.find(p);
        if (gp == g.end() || !(Rational(0) < gp->second) || !(gp->second < Rational(1))) {
            throw std::domain_error("g(" + std::to_string(p) + ") must lie in (0, 1)");
        }
    }
}

AdValue compute_Ad(const SieveInstance& inst, u64 d) {
    const auto ps = prime_divisors(inst, d);
    CompensatedSum acc;
    for (std::size_t n = 0; n < inst.weights.size(); ++n) {
        const double w = inst.weights[n];
        if (w == 0.0) continue;
        bool hit = true;
        for (u64 p : ps) {
            if (!inst.in_omega(n, p)) {
                hit = false;
                break;
            }
        }
        if (hit) acc.add(w);
    }
    AdValue out;
    out.size = acc.value();
    out.remainder = out.size - (inst.g_of(d) * inst.Y).to_double();
    return out;
}

std::vector<u64> divisors_of_P(const SieveInstance& inst, double bound_sq) {
    std::vector<u64> divs{1};
    for (u64 p : inst.primes) {
        const std::size_t n = divs.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double dp = static_cast<double>(divs[i] * p);
            if (dp * dp <= bound_sq) divs.push_back(divs[i] * p);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

SieveReport sieve_upper_bound(const SieveInstance& inst, bool compute_exact) {
    inst.validate();
    SieveReport rep;
    double J = 0.0;
    CompensatedSum remainder_total;
    for (u64 d : divisors_of_P(inst, inst.D)) {
        const double dd = static_cast<double>(d);
        if (dd * dd < inst.D) J += inst.h_of(d).to_double();
        const AdValue ad = compute_Ad(inst, d);
        rep.remainders[d] = ad.remainder;
        remainder_total.add(static_cast<double>(tau3(d)) * std::fabs(ad.remainder));
    }
    rep.J = J;
    rep.bound = inst.Y.to_double() / J + remainder_total.value();
    if (compute_exact) {
        CompensatedSum sifted;
        for (std::size_t n = 0; n < inst.weights.size(); ++n) {
            if (inst.weights[n] == 0.0) continue;
            bool kept = true;
            for (u64 p : inst.primes) {
                if (inst.in_omega(n, p)) {
                    kept = false;
                    break;
                }
            }
            if (kept) sifted.add(inst.weights[n]);
        }
        rep.exact = sifted.value();
    }
    return rep;
}

SieveInstance instantiate_square_detection(u64 X, u64 M, const Modulus& q, u64 a, double D) {
    if (!q.is_prime()) throw std::domain_error("square detection requires a prime modulus");
    const u64 qv = q.value();
    if (gcd(a % qv, qv) != 1) throw std::domain_error("square detection: gcd(a, q) != 1");
    if (M == 0 || X < M) throw std::domain_error("square detection requires 1 <= M <= X");
    if (!(D > 1.0)) throw std::domain_error("sieve level D must exceed 1");
    a %= qv;
    SieveInstance inst;
    const u64 n_max = X / M;
    inst.weights.assign(n_max + 1, 0.0);
    const i64 qs = static_cast<i64>(qv);
    const i64 lo = static_cast<i64>(M);
    const i64 hi = static_cast<i64>(2 * M);
    for (u64 n = 1; n <= n_max; ++n) {
        if (n % qv == 0) continue;
        const i64 c = static_cast<i64>(mul_mod(a, mod_inverse(n % qv, qv), qv));
        // m in (M, 2M] with m = c (mod q)
        inst.weights[n] = static_cast<double>(floor_div(hi - c, qs) - floor_div(lo - c, qs));
    }
    inst.Y = Rational(static_cast<std::int64_t>(X), static_cast<std::int64_t>(qv));
    inst.D = D;
    for (u64 p : primes_up_to(static_cast<u64>(std::floor(std::sqrt(D))))) {
        if (p == 2 || p == qv || static_cast<double>(p * p) > D) continue;
        std::vector<bool> square(p, false);
        for (u64 s = 0; s < p; ++s) square[s * s % p] = true;
        std::vector<u64> non_squares;
        for (u64 r = 0; r < p; ++r) {
            if (!square[r]) non_squares.push_back(r);
        }
        inst.primes.push_back(p);
        inst.omega[p] = std::move(non_squares);
        inst.g[p] = Rational(static_cast<std::int64_t>(p - 1), static_cast<std::int64_t>(2 * p));
    }
    return inst;
}

u64 frak_S_bruteforce(u64 X, u64 M, const Modulus& q, u64 a) {
    const u64 qv = q.value();
    if (M == 0) return 0;
    const u64 r_max = isqrt(X / M);
    a %= qv;
    u64 count = 0;
    for (u64 m = M + 1; m <= 2 * M; ++m) {
        const u64 mm = m % qv;
        for (u64 r = 1; r <= r_max; ++r) {
            if (mul_mod(mul_mod(r, r, qv), mm, qv) == a) ++count;
        }
    }
    return count;
}

double square_supported_mass(const SieveInstance& inst) {
    CompensatedSum acc;
    for (u64 r = 1; r * r < inst.weights.size(); ++r) acc.add(inst.weights[r * r]);
    return acc.value();
}

}  // namespace sqfap
