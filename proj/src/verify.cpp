#include "sqfap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sqfap/decomposition.hpp"
#include "sqfap/distribution.hpp"
#include "sqfap/expsums.hpp"
#include "sqfap/psi_approx.hpp"
#include "sqfap/selberg.hpp"

namespace sqfap {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    u64 below(u64 n) { return gen_() % n; }                   // [0, n)
    u64 between(u64 lo, u64 hi) { return lo + below(hi - lo + 1); }
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }  // [0, 1)
    u64 pick(const std::vector<u64>& v) { return v[below(v.size())]; }

private:
    std::mt19937_64 gen_;
};

u64 random_unit(Rng& rng, u64 q) {
    for (;;) {
        const u64 a = rng.between(1, q - 1);
        if (gcd(a, q) == 1) return a;
    }
}

template <typename... Args>
std::string describe(const Args&... args) {
    std::ostringstream os;
    os.precision(17);
    ((os << args), ...);
    return os.str();
}

class Recorder {
public:
    Recorder(std::string suite, std::string name) {
        r_.suite = std::move(suite);
        r_.invariant = std::move(name);
    }
    void check(bool ok, const std::string& what) {
        ++r_.cases;
        if (!ok && r_.pass) {
            r_.pass = false;
            r_.counterexample = what;
        }
    }
    void observe(double v) { r_.observed = std::max(r_.observed, v); }
    InvariantResult done() { return std::move(r_); }

private:
    InvariantResult r_;
};

void identities(std::vector<InvariantResult>& out, std::uint64_t seed) {
    Rng rng(seed);
    constexpr u64 kXMax = 100'000;
    const SquarefreeBits table(1, kXMax);
    const auto primes = primes_up_to(10'000);

    Recorder exact("identities", "S_I + S_II = squarefree count");
    Recorder tuv("identities", "|S_I - (T - U + V)| <= 1e-6 (R + 1) off the boundary");
    Recorder dual("identities", "|S_II| <= S_III + S_IV");
    for (int i = 0; i < 200; ++i) {
        const u64 X = rng.between(4, kXMax);
        const u64 q = rng.pick(primes);
        const u64 a = random_unit(rng, q);
        const double root = std::sqrt(static_cast<double>(X));
        const double R = 1.0 + (root - 1.0) * (1.0 - rng.uniform());
        const Modulus m = Modulus::prime(q);
        u64 brute = 0;
        for (u64 n = a; n <= X; n += q) brute += table.test(n) ? 1 : 0;
        const SplitS split = split_S(X, m, a, R);
        exact.check(split.total() == static_cast<i64>(brute),
                    describe("X=", X, " q=", q, " a=", a, " R=", R, " S_I+S_II=", split.total(), " count=", brute));
        const TUV t = compute_TUV(static_cast<double>(X), m, a, R);
        if (!t.boundary) {
            const double gap = std::fabs(static_cast<double>(split.S_I) - t.combined());
            tuv.observe(gap);
            tuv.check(gap <= 1e-6 * (R + 1.0), describe("X=", X, " q=", q, " a=", a, " R=", R, " gap=", gap));
        }
        const double R3 = 1.0 + (std::cbrt(static_cast<double>(X)) - 1.0) * (1.0 - rng.uniform());
        const SplitS split3 = split_S(X, m, a, R3);
        const SplitDual d = compute_SIII_SIV(X, m, a, R3);
        dual.check(static_cast<u64>(std::llabs(split3.S_II)) <= d.S_III + d.S_IV,
                   describe("X=", X, " q=", q, " a=", a, " R=", R3, " S_II=", split3.S_II, " S_III+S_IV=",
                            d.S_III + d.S_IV));
    }
    out.push_back(exact.done());
    out.push_back(tuv.done());
    out.push_back(dual.done());

    Recorder zero("identities", "sum over a of E(X,q,a) = 0");
    Recorder var("identities", "variance = sum of E^2");
    const auto small_primes = primes_up_to(500);
    for (int i = 0; i < 40; ++i) {
        const u64 X = rng.between(1, 20'000);
        const u64 q = rng.pick(small_primes);
        const Modulus m = Modulus::prime(q);
        const auto counts = counts_by_residue(table, X, q);
        u64 coprime = 0;
        for (u64 a = 1; a < q; ++a) coprime += counts[a];
        Rational sum(0), squares(0);
        for (u64 a = 1; a < q; ++a) {
            const Rational e = make_error_record(X, q, a, counts[a], coprime, q - 1).error;
            sum += e;
            squares += e * e;
        }
        zero.check(sum.is_zero(), describe("X=", X, " q=", q, " sum=", sum.str()));
        if (i < 10) {
            const Rational v = variance_over_residues(X, m);
            var.check(v == squares, describe("X=", X, " q=", q, " variance=", v.str(), " sum E^2=", squares.str()));
        }
    }
    out.push_back(zero.done());
    out.push_back(var.done());
}

void expsums(std::vector<InvariantResult>& out, std::uint64_t seed) {
    Rng rng(seed);
    Recorder gauss("expsums", "inverse-square sum over (0, q-1] equals the Gauss value minus 1");
    for (u64 q : primes_up_to(1000)) {
        if (q == 2) continue;
        const auto v = inverse_square_phase_sum(0.0, static_cast<double>(q - 1), Modulus::prime(q), 1).value;
        const double s = std::sqrt(static_cast<double>(q));
        const std::complex<double> expect = q % 4 == 1 ? std::complex<double>(s - 1.0, 0.0) : std::complex<double>(-1.0, s);
        const double err = std::abs(v - expect);
        gauss.observe(err);
        gauss.check(err <= 1e-6, describe("q=", q, " err=", err));
    }
    out.push_back(gauss.done());

    const auto primes = primes_up_to(2000);
    Recorder conj("expsums", "sum(-a) = conj(sum(a))");
    Recorder trivial("expsums", "|value| <= trivial bound");
    Recorder additive("expsums", "inverse-square sums are additive in the range");
    for (int i = 0; i < 60; ++i) {
        const u64 q = rng.pick(primes);
        if (q == 2) continue;
        const Modulus m = Modulus::prime(q);
        const u64 a = random_unit(rng, q);
        const u64 R = rng.between(1, 3000);
        const auto check_pair = [&](const ExpSumValue& plus, const ExpSumValue& minus, const char* name) {
            const double err = std::abs(minus.value - std::conj(plus.value));
            conj.observe(err);
            conj.check(err <= 1e-12 * std::max(1.0, plus.trivial_bound), describe(name, " q=", q, " a=", a, " err=", err));
            for (const auto* v : {&plus, &minus}) {
                trivial.check(v->magnitude() <= v->trivial_bound + 1e-6 * static_cast<double>(v->term_count),
                              describe(name, " q=", q, " a=", a));
            }
        };
        check_pair(twisted_mobius_sum(R, m, a, true), twisted_mobius_sum(R, m, q - a, true), "twisted");
        const double A = -static_cast<double>(rng.between(0, 5000)) + rng.uniform();
        const double B = A + static_cast<double>(rng.between(1, 5000)) + rng.uniform();
        const double C = B + static_cast<double>(rng.between(1, 5000)) + rng.uniform();
        check_pair(inverse_square_phase_sum(A, B, m, a), inverse_square_phase_sum(A, B, m, q - a), "inverse-square");
        check_pair(short_kloosterman_sum(R, m, a), short_kloosterman_sum(R, m, q - a), "kloosterman");
        const auto lhs = inverse_square_phase_sum(A, B, m, a).value + inverse_square_phase_sum(B, C, m, a).value;
        const double err = std::abs(lhs - inverse_square_phase_sum(A, C, m, a).value);
        additive.observe(err);
        additive.check(err <= 1e-9, describe("q=", q, " a=", a, " A=", A, " B=", B, " C=", C, " err=", err));
    }
    out.push_back(conj.done());
    out.push_back(trivial.done());
    out.push_back(additive.done());

    Recorder kloost("expsums", "full-range Kloosterman sum = -1");
    const auto big = primes_up_to(10'000);
    for (int i = 0; i < 50; ++i) {
        u64 q = rng.pick(big);
        if (q == 2) q = 3;
        const u64 a = random_unit(rng, q);
        const double err = std::abs(short_kloosterman_sum(q - 1, Modulus::prime(q), a).value + 1.0);
        kloost.observe(err);
        kloost.check(err <= 1e-9, describe("q=", q, " a=", a, " err=", err));
    }
    out.push_back(kloost.done());

    Recorder weil("expsums", "max |S(q;alpha,beta)| / sqrt(q) <= 3 for q <= 199");
    const auto scan = weil_constant_scan(199);
    weil.observe(scan.max_ratio);
    weil.check(scan.max_ratio <= 3.0,
               describe("q=", scan.q, " alpha=", scan.alpha, " beta=", scan.beta, " ratio=", scan.max_ratio));
    out.push_back(weil.done());
}

void psi_suite(std::vector<InvariantResult>& out) {
    for (double Y : {5.0, 20.0, 100.0}) {
        const auto approx = build_approximation(Y);
        const auto rep = check_majorization(approx, 10'000);
        Recorder major("psi", describe("|psi - A| <= B + 1e-9 on a 10^4 grid, Y=", Y));
        major.observe(rep.max_violation);
        major.check(rep.max_violation <= 1e-9, describe("Y=", Y, " x=", rep.worst_x, " excess=", rep.max_violation));
        out.push_back(major.done());

        Recorder coeff("psi", describe("|A_h|, |B_h| <= 10 C_h, Y=", Y));
        const double ratio = approx.coefficient_ratio();
        coeff.observe(ratio);
        coeff.check(ratio <= kCoefficientConstant, describe("Y=", Y, " ratio=", ratio));
        out.push_back(coeff.done());

        Recorder mean("psi", describe("grid mean of B in [1/Y - 1e-6, 1/Y + 4/sqrt(Y)], Y=", Y));
        mean.observe(std::fabs(rep.mean_B - 1.0 / Y));
        mean.check(rep.mean_B >= 1.0 / Y - 1e-6 && rep.mean_B <= 1.0 / Y + 4.0 / std::sqrt(Y),
                   describe("Y=", Y, " mean=", rep.mean_B));
        out.push_back(mean.done());
    }
}

void sieve_suite(std::vector<InvariantResult>& out, std::uint64_t seed) {
    Rng rng(seed);
    const auto primes = primes_up_to(997);
    Recorder sound("sieve", "bound >= frak_S and bound >= sifted mass");
    Recorder squares("sieve", "sum of a_n over squares = frak_S");
    for (int i = 0; i < 100; ++i) {
        const u64 X = rng.between(1000, 100'000);
        u64 q = rng.pick(primes);
        if (q == 2) q = 3;
        const u64 a = random_unit(rng, q);
        const double Xd = static_cast<double>(X);
        const double R = std::cbrt(Xd) * (0.5 + 0.5 * rng.uniform());
        const auto Ms = dyadic_M_candidates(Xd, R);
        std::vector<u64> valid;
        for (u64 M : Ms) {
            if (M <= X) valid.push_back(M);
        }
        if (valid.empty()) continue;
        const u64 M = rng.pick(valid);
        const double D = 1.5 + 198.5 * rng.uniform();
        const auto inst = instantiate_square_detection(X, M, Modulus::prime(q), a, D);
        const auto rep = sieve_upper_bound(inst, true);
        const u64 frak = frak_S_bruteforce(X, M, Modulus::prime(q), a);
        const std::string where = describe("X=", X, " M=", M, " q=", q, " a=", a, " D=", D);
        sound.check(rep.bound + 1e-9 >= static_cast<double>(frak) && rep.bound + 1e-9 >= *rep.exact,
                    describe(where, " bound=", rep.bound, " frak=", frak, " sifted=", *rep.exact));
        squares.check(square_supported_mass(inst) == static_cast<double>(frak), where);
    }
    out.push_back(sound.done());
    out.push_back(squares.done());

    Recorder mono("sieve", "J nondecreasing in D");
    auto inst = instantiate_square_detection(10'000, 16, Modulus::prime(101), 3, 200.0);
    double last = 0.0;
    for (double D = 2.0; D <= 200.0; D += 1.0) {
        inst.D = D;
        const double J = sieve_upper_bound(inst).J;
        mono.check(J >= last, describe("D=", D, " J=", J, " previous=", last));
        last = J;
    }
    out.push_back(mono.done());

    Recorder mult("sieve", "g(d1 d2) = g(d1) g(d2) for coprime divisors");
    inst.D = 200.0;
    const u64 P = inst.P();
    for (u64 d1 = 1; d1 <= P; ++d1) {
        if (P % d1 != 0) continue;
        for (u64 d2 = 1; d2 <= P / d1; ++d2) {
            if ((P / d1) % d2 != 0 || gcd(d1, d2) != 1) continue;
            mult.check(inst.g_of(d1 * d2) == inst.g_of(d1) * inst.g_of(d2), describe("d1=", d1, " d2=", d2));
        }
    }
    out.push_back(mult.done());
}

}  // namespace

bool VerifyReport::all_pass() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

VerifyReport verify(std::string_view suite, std::uint64_t seed) {
    VerifyReport rep;
    const bool all = suite == "all";
    if (!all && suite != "identities" && suite != "expsums" && suite != "psi" && suite != "sieve") {
        throw std::invalid_argument("unknown verify suite '" + std::string(suite) +
                                    "' (expected identities, expsums, psi, sieve, all)");
    }
    if (all || suite == "identities") identities(rep.results, seed);
    if (all || suite == "expsums") expsums(rep.results, seed);
    if (all || suite == "psi") psi_suite(rep.results);
    if (all || suite == "sieve") sieve_suite(rep.results, seed);
    return rep;
}

Row invariant_row(const InvariantResult& r) {
    Row row;
    row.add("suite", r.suite)
        .add("invariant", r.invariant)
        .add("pass", r.pass)
        .add("cases", r.cases)
        .add("observed", r.observed)
        .add("counterexample", r.counterexample);
    return row;
}

}  // namespace sqfap
