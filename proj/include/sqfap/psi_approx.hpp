// The sawtooth psi(x) = x - floor(x) - 1/2 and a trigonometric-polynomial
// pair (A, B) with |psi(x) - A(x)| <= B(x) for every real x.
//
// A is Vaaler's polynomial of degree N = floor(Y):
//     A(x) = sum_{1 <= |h| <= N} A_h e(hx),  A_h = -J(h/(N+1)) / (2 pi i h),
//     J(t) = pi t (1 - |t|) cot(pi t) + |t|,
// and B is the Fejer kernel scaled by 1/(2N+2), lifted by a constant so that
// its mean is exactly 1/Y:
//     B(x) = 1/Y + sum_{1 <= |h| <= N} (1 - |h|/(N+1)) / (2N+2) e(hx).
// Since 0 <= J <= 1 and N <= Y, both coefficient families satisfy
// |A_h|, |B_h| <= min(1/|h|, Y^3/h^4).
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sqfap/arith.hpp"

namespace sqfap {

double psi(double x);

inline constexpr double kMaxSharpness = 1e4;
inline constexpr double kCoefficientConstant = 10.0;

// C_h = min(1/|h|, Y^3/h^4)
double coefficient_envelope(double Y, std::int64_t h);

class PsiApproximation {
public:
    double sharpness() const noexcept { return Y_; }
    std::int64_t degree() const noexcept { return H_; }
    double b_zero() const noexcept { return b_zero_; }

    // Zero outside 1 <= |h| <= degree().
    std::complex<double> a(std::int64_t h) const;
    std::complex<double> b(std::int64_t h) const;

    double eval_A(double x) const;
    double eval_B(double x) const;

    // Largest |A_h| / C_h and |B_h| / C_h over the stored coefficients.
    double coefficient_ratio() const;

private:
    friend PsiApproximation build_approximation(double Y);

    double Y_ = 0.0;
    std::int64_t H_ = 0;
    double b_zero_ = 0.0;
    // index h + H_ for h in [-H_, H_]; index H_ (h = 0) is zero
    std::vector<std::complex<double>> a_coeffs_;
    std::vector<std::complex<double>> b_coeffs_;
};

// Y must lie in (1, 1e4]. In debug builds the majorization is checked on a
// 1024-point grid before returning.
PsiApproximation build_approximation(double Y);

struct MajorizationReport {
    double max_violation = 0.0;  // max over grid of |psi - A| - B
    double min_B = 0.0;
    double mean_B = 0.0;
    double worst_x = 0.0;
};

// Uniform grid x_j = j / points, j = 0..points-1.
MajorizationReport check_majorization(const PsiApproximation& approx, std::size_t points);

struct PsiSumResult {
    double value = 0.0;
    u64 term_count = 0;
    double envelope = 0.0;  // M/log q + M log q (log log q)^4 / (log M)^{3/2}
};

// sum_{m <= M, (m,q)=1} psi(N + a mbar / q) by direct evaluation.
PsiSumResult bounded_psi_progression_sum(u64 M, double N, const Modulus& q, u64 a);

}  // namespace sqfap
