// Exponential sums over modular inverses, each paired with its trivial bound
// and (where one applies) a theoretical envelope with implied constant 1.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "sqfap/arith.hpp"

namespace sqfap {

struct ExpSumValue {
    std::complex<double> value;
    u64 term_count = 0;
    double trivial_bound = 0.0;
    std::optional<double> envelope;

    double magnitude() const { return std::abs(value); }
};

// e(k/q) for k mod q, with e(-k/q) stored as the exact conjugate of e(k/q).
class RootTable {
public:
    explicit RootTable(u64 q);
    u64 modulus() const noexcept { return q_; }
    std::complex<double> operator[](u64 k) const noexcept { return roots_[k]; }

private:
    u64 q_;
    std::vector<std::complex<double>> roots_;
};

// The exponential e(x) = exp(2 pi i x).
std::complex<double> e(double x);

inline constexpr u64 kMaxTwistedModulus = 100'000;
inline constexpr u64 kMaxWeilScan = 500;

// sum_{n <= R, (n,q)=1} mu(n) e(a nbar^2 / q). Terms with q | n never
// contribute; require_coprime = false reports the trivial bound over every
// squarefree n <= R instead of only the included ones.
ExpSumValue twisted_mobius_sum(u64 R, const Modulus& q, u64 a, bool require_coprime);
ExpSumValue twisted_mobius_sum(const MobiusTable& mu, u64 R, const Modulus& q, u64 a,
                               bool require_coprime);

// max over a coprime to q of |twisted_mobius_sum(t, q, a, true)|.
double max_twisted_mobius_sum(u64 t, const Modulus& q);
double max_twisted_mobius_sum(const MobiusTable& mu, u64 t, const Modulus& q);

// sum_{A < r <= B, (r,q)=1} e(a rbar^2 / q)
ExpSumValue inverse_square_phase_sum(double A, double B, const Modulus& q, u64 a);

// sum_{h=1}^{q-1} e((alpha h + beta hbar^2) / q)
ExpSumValue complete_mixed_sum(const Modulus& q, u64 alpha, u64 beta);

// sum_{n <= t} e(-alpha n / q), evaluated as a geometric series.
ExpSumValue theta_sum(double t, u64 alpha, const Modulus& q);

// sum_{m <= M, (m,q)=1} e(a mbar / q)
ExpSumValue short_kloosterman_sum(u64 M, const Modulus& q, u64 a);

struct WeilScanResult {
    double max_ratio = 0.0;  // max |S(q; alpha, beta)| / sqrt(q)
    u64 q = 0;
    u64 alpha = 0;
    u64 beta = 0;
};

// Max of |complete_mixed_sum(q, alpha, beta)| / sqrt(q) over primes
// 3 <= q <= q_max and alpha, beta in [1, q-1].
WeilScanResult weil_constant_scan(u64 q_max);

}  // namespace sqfap
