#include "sqfap/decomposition.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "sqfap/compensated.hpp"
#include "sqfap/psi_approx.hpp"

namespace sqfap {

namespace {

constexpr double kIntegralTolerance = 1e-12;
constexpr u64 kRootTableLimit = u64{1} << 24;

void check_tuple(const Modulus& q, u64 a) {
    if (!q.is_prime()) throw std::domain_error("decomposition requires a prime modulus");
    if (gcd(a % q.value(), q.value()) != 1) throw std::domain_error("decomposition: gcd(a, q) != 1");
}

// #{1 <= m <= y : m = c (mod q)}, c in [0, q)
u64 count_in_class(u64 y, u64 c, u64 q) {
    if (c == 0) return y / q;
    return y >= c ? (y - c) / q + 1 : 0;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

[[noreturn]] void regime(const std::string& what) { throw RegimeError("regime violated: " + what); }

}  // namespace

SplitS split_S(u64 X, const Modulus& q, u64 a, double R) {
    check_tuple(q, a);
    const u64 qv = q.value();
    const u64 root = isqrt(X);
    if (!(R > 1.0) || R > std::sqrt(static_cast<double>(X)) * (1.0 + 1e-12)) {
        throw std::domain_error("split_S requires 1 < R <= sqrt(X)");
    }
    const auto cut = static_cast<u64>(std::floor(R));
    const MobiusTable mu(1, std::max<u64>(root, 1));
    a %= qv;
    SplitS out;
    for (u64 r = 1; r <= root; ++r) {
        const int m = mu(r);
        if (m == 0 || r % qv == 0) continue;
        const u64 rb = mod_inverse(r % qv, qv);
        const u64 c = mul_mod(a, mul_mod(rb, rb, qv), qv);
        const i64 term = m * static_cast<i64>(count_in_class(X / (r * r), c, qv));
        (r <= cut ? out.S_I : out.S_II) += term;
    }
    return out;
}

TUV compute_TUV(double X, const Modulus& q, u64 a, double R) {
    check_tuple(q, a);
    if (!(X >= 1.0)) throw std::domain_error("compute_TUV requires X >= 1");
    if (!(R > 1.0) || R > std::sqrt(X) * (1.0 + 1e-12)) {
        throw std::domain_error("compute_TUV requires 1 < R <= sqrt(X)");
    }
    const u64 qv = q.value();
    const double qd = static_cast<double>(qv);
    const auto cut = static_cast<u64>(std::floor(R));
    const auto x_int = static_cast<u64>(std::floor(X));
    const double x_frac = X - std::floor(X);
    const MobiusTable mu(1, cut);
    a %= qv;
    CompensatedSum T, U, V;
    TUV out;
    for (u64 r = 1; r <= cut; ++r) {
        const int m = mu(r);
        if (m == 0 || r % qv == 0) continue;
        const u64 rb = mod_inverse(r % qv, qv);
        const u64 c = mul_mod(a, mul_mod(rb, rb, qv), qv);
        const u64 r2 = r * r;
        const double md = m;
        T.add(md * X / (qd * static_cast<double>(r2)));
        // X/r^2 = whole + frac exactly; (X/r^2 - c)/q reduced mod 1 without cancellation
        const u64 whole = x_int / r2;
        const double frac = (static_cast<double>(x_int % r2) + x_frac) / static_cast<double>(r2);
        const u64 k = (whole % qv + qv - c) % qv;
        const double arg_u = (static_cast<double>(k) + frac) / qd;
        if ((k == 0 && frac < kIntegralTolerance) || arg_u > 1.0 - kIntegralTolerance) out.boundary = true;
        U.add(md * psi(arg_u));
        V.add(md * psi(static_cast<double>(qv - c) / qd));
    }
    out.T = T.value();
    out.U = U.value();
    out.V = V.value();
    return out;
}

SplitDual compute_SIII_SIV(u64 X, const Modulus& q, u64 a, double R) {
    check_tuple(q, a);
    if (X < 3) throw std::domain_error("compute_SIII_SIV requires X >= 3");
    const double Xd = static_cast<double>(X);
    if (!(R > 1.0) || R > std::cbrt(Xd) * (1.0 + 1e-12)) {
        throw std::domain_error("compute_SIII_SIV requires 1 < R <= X^{1/3}");
    }
    const u64 qv = q.value();
    a %= qv;
    const double cut = Xd / (R * R * std::log(Xd));
    const auto m_max = static_cast<u64>(std::floor(Xd / (R * R)));

    // smallest square root of each quadratic residue, 0 if none
    std::vector<std::uint32_t> root_of;
    if (qv <= kRootTableLimit) {
        root_of.assign(qv, 0);
        for (u64 s = qv - 1; s >= 1; --s) root_of[s * s % qv] = static_cast<std::uint32_t>(s);
    }
    SplitDual out;
    for (u64 m = 1; m <= m_max; ++m) {
        if (m % qv == 0) continue;
        const u64 target = mul_mod(a, mod_inverse(m % qv, qv), qv);
        const u64 L = isqrt(X / m);
        u64 n = 0;
        if (!root_of.empty()) {
            const u64 s = root_of[target];
            if (s != 0) {
                n = count_in_class(L, s, qv);
                if (qv - s != s) n += count_in_class(L, qv - s, qv);
            }
        } else {
            for (u64 r = 1; r <= L; ++r) n += mul_mod(r, r, qv) == target ? 1 : 0;
        }
        (static_cast<double>(m) <= cut ? out.S_III : out.S_IV) += n;
    }
    return out;
}

DecompositionRecord decompose(u64 X, const Modulus& q, u64 a, double R) {
    DecompositionRecord rec;
    rec.X = X;
    rec.q = q.value();
    rec.a = a % q.value();
    rec.R = R;
    const SplitS split = split_S(X, q, a, R);
    rec.S_I = split.S_I;
    rec.S_II = split.S_II;
    rec.S = split.total();
    const TUV tuv = compute_TUV(static_cast<double>(X), q, a, R);
    rec.T = tuv.T;
    rec.U = tuv.U;
    rec.V = tuv.V;
    rec.boundary = tuv.boundary;
    if (X >= 3 && R <= std::cbrt(static_cast<double>(X))) {
        const SplitDual dual = compute_SIII_SIV(X, q, a, R);
        rec.S_III = dual.S_III;
        rec.S_IV = dual.S_IV;
    }
    return rec;
}

ParameterSchedule parameter_schedule(int theorem_id, double X, double q, const ScheduleInputs& in) {
    if (!(X > 1.0) || !(q >= 2.0)) regime("X > 1 and q >= 2");
    ParameterSchedule s;
    s.theorem_id = theorem_id;
    const double ratio = X / q;
    switch (theorem_id) {
        case 1: {
            if (q > std::pow(X, 0.4)) regime("q <= X^{2/5} (q = " + fmt(q) + ", X^{2/5} = " + fmt(std::pow(X, 0.4)) + ")");
            const double Y = std::min({std::pow(q, 1.0 / 96.0), std::pow(X, 1.0 / 49.0) * std::pow(q, -5.0 / 98.0),
                                       std::pow(X, 0.2) * std::pow(q, -0.4)});
            s.Y = Y;
            s.R = std::sqrt(ratio) * std::sqrt(Y);
            s.R_0 = std::sqrt(ratio) / std::sqrt(Y);
            break;
        }
        case 2: {
            if (!in.eta || !in.delta1) regime("theorem 2 needs eta and delta1");
            const double eta = *in.eta;
            const double d1 = *in.delta1;
            if (!(eta > 0.0 && eta < 0.25)) regime("0 < eta < 1/4");
            if (!(d1 > 0.0)) regime("delta1 > 0");
            if (q < std::pow(X, eta)) regime("X^eta <= q (q = " + fmt(q) + ", X^eta = " + fmt(std::pow(X, eta)) + ")");
            if (q > std::pow(X, 0.5 - eta)) {
                regime("q <= X^{1/2 - eta} (q = " + fmt(q) + ", X^{1/2-eta} = " + fmt(std::pow(X, 0.5 - eta)) + ")");
            }
            s.eta = eta;
            s.delta_1 = d1;
            s.R = std::pow(ratio, 0.5 + d1);
            s.R_0 = std::pow(ratio, 0.5 - d1);
            s.Y = std::pow(ratio, 2.0 * d1);
            if (*s.R > std::sqrt(X)) regime("R = (X/q)^{1/2+delta1} <= sqrt(X); lower delta1");
            break;
        }
        case 3: {
            if (!in.gamma) regime("theorem 3 needs gamma");
            const double gamma = *in.gamma;
            if (!(gamma > 0.0 && gamma < 0.5)) regime("0 < gamma < 1/2");
            if (!(X > 3.0)) regime("X > 3");
            const double lx = std::log(X);
            const double llx = std::log(lx);
            s.gamma = gamma;
            s.D = std::pow(lx, gamma);
            s.R = std::cbrt(X) * std::pow(lx, -1.0 / 6.0 + gamma / 3.0) * std::pow(llx, 7.0 / 3.0);
            if (*s.R > std::sqrt(X)) regime("R <= sqrt(X) (R = " + fmt(*s.R) + ", sqrt(X) = " + fmt(std::sqrt(X)) + ")");
            break;
        }
        default:
            throw std::domain_error("unknown theorem id " + std::to_string(theorem_id));
    }
    return s;
}

double bound_envelope(int theorem_id, double X, double q, const EnvelopeInputs& in) {
    if (!(X > 1.0) || !(q >= 1.0)) throw std::domain_error("bound_envelope requires X > 1, q >= 1");
    if (!(in.epsilon >= 0.0)) throw std::domain_error("bound_envelope requires epsilon >= 0");
    const double eps = in.epsilon;
    const double ratio = X / q;
    switch (theorem_id) {
        case 1:
            return std::pow(ratio, 0.5 + eps) * std::pow(q, -1.0 / 192.0) +
                   std::pow(ratio, 24.0 / 49.0 + eps) * std::pow(q, 3.0 / 196.0);
        case 2:
            if (!in.delta1 || !(*in.delta1 > 0.0)) throw std::domain_error("theorem 2 envelope needs delta1 > 0");
            return std::pow(ratio, 0.5 - *in.delta1 / 2.0 + eps);
        case 3: {
            if (!(X > 3.0)) throw std::domain_error("theorem 3 envelope requires X > 3");
            if (!(in.gamma > 0.0 && in.gamma < 0.5)) throw std::domain_error("theorem 3 envelope needs 0 < gamma < 1/2");
            const double lx = std::log(X);
            const double llx = std::log(lx);
            return std::cbrt(X) * std::pow(llx, 7.0 / 3.0) / std::pow(lx, 1.0 / 6.0 - in.gamma / 3.0) +
                   X * llx * llx / (q * std::pow(lx, in.gamma / 2.0));
        }
        case 4:
            return std::sqrt(X / q) + std::pow(q, 0.5 + eps);
        default:
            throw std::domain_error("unknown theorem id " + std::to_string(theorem_id));
    }
}

std::vector<u64> dyadic_M_candidates(double X, double R) {
    if (!(X > 1.0) || !(R > 0.0)) throw std::domain_error("dyadic_M_candidates requires X > 1, R > 0");
    const double lo = X / (2.0 * R * R * std::log(X));
    const double hi = 2.0 * X / (R * R);
    std::vector<u64> out;
    for (u64 M = 1; static_cast<double>(M) <= hi; M *= 2) {
        if (static_cast<double>(M) > lo) out.push_back(M);
    }
    return out;
}

}  // namespace sqfap
