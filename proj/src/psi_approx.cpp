#include "sqfap/psi_approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sqfap/compensated.hpp"

namespace sqfap {

namespace {

constexpr double kPi = std::numbers::pi;

// Fourier transform of Vaaler's kernel on 0 < |t| < 1.
double vaaler_weight(double t) {
    const double at = std::fabs(t);
    return kPi * at * (1.0 - at) / std::tan(kPi * at) + at;
}

double eval_series(const std::vector<std::complex<double>>& coeffs, std::int64_t H, double x) {
    const double frac = x - std::floor(x);
    std::complex<double> acc{0.0, 0.0};
    CompensatedSum re;
    CompensatedSum im;
    for (std::int64_t h = 1; h <= H; ++h) {
        const std::complex<double> w = std::polar(1.0, 2.0 * kPi * static_cast<double>(h) * frac);
        const std::complex<double> term = coeffs[H + h] * w + coeffs[H - h] * std::conj(w);
        re.add(term.real());
        im.add(term.imag());
    }
    acc = {re.value(), im.value()};
    if (std::fabs(acc.imag()) > 1e-10) {
        throw std::logic_error("trigonometric series lost conjugate symmetry");
    }
    return acc.real();
}

}  // namespace

double psi(double x) { return x - std::floor(x) - 0.5; }

double coefficient_envelope(double Y, std::int64_t h) {
    if (h == 0) throw std::domain_error("coefficient_envelope: h must be nonzero");
    const double ah = std::fabs(static_cast<double>(h));
    return std::min(1.0 / ah, Y * Y * Y / (ah * ah * ah * ah));
}

std::complex<double> PsiApproximation::a(std::int64_t h) const {
    if (h == 0 || h > H_ || h < -H_) return {0.0, 0.0};
    return a_coeffs_[H_ + h];
}

std::complex<double> PsiApproximation::b(std::int64_t h) const {
    if (h == 0 || h > H_ || h < -H_) return {0.0, 0.0};
    return b_coeffs_[H_ + h];
}

double PsiApproximation::eval_A(double x) const { return eval_series(a_coeffs_, H_, x); }

double PsiApproximation::eval_B(double x) const { return b_zero_ + eval_series(b_coeffs_, H_, x); }

double PsiApproximation::coefficient_ratio() const {
    double worst = 0.0;
    for (std::int64_t h = -H_; h <= H_; ++h) {
        if (h == 0) continue;
        const double c = coefficient_envelope(Y_, h);
        worst = std::max({worst, std::abs(a(h)) / c, std::abs(b(h)) / c});
    }
    return worst;
}

PsiApproximation build_approximation(double Y) {
    if (!(Y > 1.0)) throw std::domain_error("build_approximation: Y must exceed 1");
    if (Y > kMaxSharpness) throw std::domain_error("build_approximation: Y above 1e4");
    PsiApproximation out;
    out.Y_ = Y;
    const auto N = static_cast<std::int64_t>(std::floor(Y));
    out.H_ = N;
    const double n1 = static_cast<double>(N + 1);
    // 2N + 2 > Y, so the lift 1/Y - 1/(2N+2) is positive.
    out.b_zero_ = 1.0 / Y;
    out.a_coeffs_.assign(2 * N + 1, {0.0, 0.0});
    out.b_coeffs_.assign(2 * N + 1, {0.0, 0.0});
    for (std::int64_t h = 1; h <= N; ++h) {
        const double hd = static_cast<double>(h);
        // -J/(2 pi i h) = i J / (2 pi h); A_{-h} is its conjugate
        const double mag = vaaler_weight(hd / n1) / (2.0 * kPi * hd);
        out.a_coeffs_[N + h] = {0.0, mag};
        out.a_coeffs_[N - h] = {0.0, -mag};
        const double fejer = (1.0 - hd / n1) / (2.0 * n1);
        out.b_coeffs_[N + h] = {fejer, 0.0};
        out.b_coeffs_[N - h] = {fejer, 0.0};
    }
#ifndef NDEBUG
    const auto report = check_majorization(out, 1024);
    if (report.max_violation > 1e-9) {
        throw std::logic_error("psi approximation fails majorization at x = " +
                               std::to_string(report.worst_x));
    }
    if (out.coefficient_ratio() > kCoefficientConstant) {
        throw std::logic_error("psi approximation coefficients exceed 10 C_h");
    }
#endif
    return out;
}

MajorizationReport check_majorization(const PsiApproximation& approx, std::size_t points) {
    if (points == 0) throw std::domain_error("check_majorization: empty grid");
    MajorizationReport rep;
    rep.max_violation = -1.0;
    rep.min_B = INFINITY;
    CompensatedSum mean;
    for (std::size_t j = 0; j < points; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(points);
        const double A = approx.eval_A(x);
        const double B = approx.eval_B(x);
        const double violation = std::fabs(psi(x) - A) - B;
        if (violation > rep.max_violation) {
            rep.max_violation = violation;
            rep.worst_x = x;
        }
        rep.min_B = std::min(rep.min_B, B);
        mean.add(B);
    }
    rep.mean_B = mean.value() / static_cast<double>(points);
    return rep;
}

PsiSumResult bounded_psi_progression_sum(u64 M, double N, const Modulus& q, u64 a) {
    if (!q.is_prime()) throw std::domain_error("bounded_psi_progression_sum requires a prime modulus");
    const u64 qv = q.value();
    if (qv <= 2) throw std::domain_error("bounded_psi_progression_sum requires q > 2");
    if (M < 2) throw std::domain_error("bounded_psi_progression_sum requires M >= 2");
    if (gcd(a % qv, qv) != 1) throw std::domain_error("bounded_psi_progression_sum: gcd(a, q) != 1");
    a %= qv;
    // psi(N + k/q) = psi(frac(N) + k/q); keep the fractional part separate
    const double base = N - std::floor(N);
    const double qd = static_cast<double>(qv);
    PsiSumResult out;
    CompensatedSum acc;
    for (u64 m = 1; m <= M; ++m) {
        if (m % qv == 0) continue;
        const u64 k = mul_mod(a, mod_inverse(m % qv, qv), qv);
        acc.add(psi(base + static_cast<double>(k) / qd));
        ++out.term_count;
    }
    out.value = acc.value();
    const double Md = static_cast<double>(M);
    const double lq = std::log(qd);
    const double llq = std::log(lq);
    out.envelope = Md / lq + Md * lq * std::pow(llq, 4) / std::pow(std::log(Md), 1.5);
    return out;
}

}  // namespace sqfap
