// The exact decomposition of the squarefree count
//     S = sum_{(r,q)=1} mu(r) #{m <= X/r^2 : m = a rbar^2 (mod q)} = S_I + S_II,
// the psi-expansion S_I = T - U + V, the dual split |S_II| <= S_III + S_IV,
// and the parameter schedules and bound envelopes of the three theorems.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sqfap/arith.hpp"

namespace sqfap {

struct SplitS {
    i64 S_I = 0;   // r <= R
    i64 S_II = 0;  // R < r <= sqrt(X)
    i64 total() const { return S_I + S_II; }
};

struct TUV {
    double T = 0.0;
    double U = 0.0;
    double V = 0.0;
    // Some psi argument was integral (within 1e-12), where the counting
    // identity m <= x, m = c (mod q) <-> x/q - psi((x-c)/q) + psi(-c/q) can slip by 1.
    bool boundary = false;
    double combined() const { return T - U + V; }
};

struct SplitDual {
    u64 S_III = 0;
    u64 S_IV = 0;
};

struct DecompositionRecord {
    u64 X = 0;
    u64 q = 0;
    u64 a = 0;
    double R = 0.0;
    i64 S = 0;
    i64 S_I = 0;
    i64 S_II = 0;
    double T = 0.0;
    double U = 0.0;
    double V = 0.0;
    bool boundary = false;
    std::optional<u64> S_III;
    std::optional<u64> S_IV;
};

// 1 < R <= sqrt(X); q prime and coprime to a.
SplitS split_S(u64 X, const Modulus& q, u64 a, double R);

// X may be fractional; S_I at real X equals S_I at floor(X).
TUV compute_TUV(double X, const Modulus& q, u64 a, double R);

// 1 < R <= X^{1/3}, X >= 3; cut at X / (R^2 log X).
SplitDual compute_SIII_SIV(u64 X, const Modulus& q, u64 a, double R);

// Everything above for one tuple; S_III/S_IV only when R <= X^{1/3}.
DecompositionRecord decompose(u64 X, const Modulus& q, u64 a, double R);

struct ScheduleInputs {
    std::optional<double> eta;     // theorem 2
    std::optional<double> delta1;  // theorem 2
    std::optional<double> gamma;   // theorem 3
};

struct ParameterSchedule {
    int theorem_id = 0;
    std::optional<double> R;
    std::optional<double> R_0;
    std::optional<double> Y;
    std::optional<double> D;
    std::optional<double> gamma;
    std::optional<double> delta_1;
    std::optional<double> eta;
};

// Violated regime conditions raise RegimeError naming the inequality.
class RegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

ParameterSchedule parameter_schedule(int theorem_id, double X, double q, const ScheduleInputs& in = {});

struct EnvelopeInputs {
    double epsilon = 0.0;
    double gamma = 0.25;                 // theorem 3
    std::optional<double> delta1;        // theorem 2: exponent 1/2 - delta1/2
};

// Right-hand sides with implied constant 1; ids 1-3 are the theorems, 4 is
// Hooley's X^{1/2} q^{-1/2} + q^{1/2 + eps}.
double bound_envelope(int theorem_id, double X, double q, const EnvelopeInputs& in = {});

// Powers of two M with X / (2 R^2 log X) < M <= 2X / R^2.
std::vector<u64> dyadic_M_candidates(double X, double R);

}  // namespace sqfap
