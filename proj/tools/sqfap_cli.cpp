// sqfap: grid scans, exponential sums, sieve and psi checks, decompositions,
// verification suites and exponent fits, written as CSV or JSONL.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqfap/decomposition.hpp"
#include "sqfap/expsums.hpp"
#include "sqfap/fit.hpp"
#include "sqfap/psi_approx.hpp"
#include "sqfap/records.hpp"
#include "sqfap/scan.hpp"
#include "sqfap/selberg.hpp"
#include "sqfap/verify.hpp"

using namespace sqfap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

// Raised for malformed option values; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Common {
    std::string out = "-";
    std::string format = "csv";
    unsigned threads = 1;
    u64 seed = 1;
    double epsilon = 0.0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "Output path, '-' for stdout");
    cmd->add_option("--format", c.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "Seed for sampled residues and random instances");
    cmd->add_option("--epsilon", c.epsilon, "Epsilon in bound envelopes")->check(CLI::NonNegativeNumber);
}

class Output {
public:
    explicit Output(const Common& c) {
        if (c.out != "-") {
            file_ = std::make_unique<std::ofstream>(c.out, std::ios::binary | std::ios::trunc);
            if (!*file_) throw UsageError("cannot open output file '" + c.out + "'");
        }
        writer_ = std::make_unique<RecordWriter>(file_ ? *file_ : std::cout, parse_format(c.format));
    }
    RecordWriter& writer() { return *writer_; }
    void finish() {
        auto& os = file_ ? static_cast<std::ostream&>(*file_) : std::cout;
        os.flush();
        if (!os) throw std::runtime_error("write to output failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::unique_ptr<RecordWriter> writer_;
};

// Accepts plain integers and integral scientific notation such as 1e6.
u64 parse_count(const std::string& text) {
    try {
        std::size_t used = 0;
        if (text.find_first_of("eE.") == std::string::npos) {
            const unsigned long long v = std::stoull(text, &used);
            if (used == text.size() && text[0] != '-') return v;
        } else {
            const double v = std::stod(text, &used);
            if (used == text.size() && v >= 0.0 && v <= 1.8e19 && std::floor(v) == v) return static_cast<u64>(v);
        }
    } catch (const std::exception&) {
    }
    throw UsageError("not a nonnegative integer: '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::vector<u64> parse_list(const std::string& text) {
    std::vector<u64> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_count(part));
    return out;
}

// "lo:hi" is every prime in [lo, hi]; otherwise a comma list of primes.
std::vector<u64> parse_q_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        return prime_range(parse_count(text.substr(0, colon)), parse_count(text.substr(colon + 1)));
    }
    auto qs = parse_list(text);
    for (u64 q : qs) {
        if (!is_prime(q)) throw UsageError("q = " + std::to_string(q) + " is not prime");
    }
    return qs;
}

ResidueSpec parse_a_spec(const std::string& text) {
    ResidueSpec spec;
    if (text == "all") return spec;
    if (text.rfind("sample:", 0) == 0) {
        spec.kind = ResidueSpec::Kind::Sample;
        spec.k = parse_count(text.substr(7));
        return spec;
    }
    if (text.rfind("list:", 0) == 0) {
        spec.kind = ResidueSpec::Kind::List;
        spec.values = parse_list(text.substr(5));
        return spec;
    }
    throw UsageError("residue spec must be 'all', 'sample:k' or 'list:a1,a2,...', got '" + text + "'");
}

Modulus prime_modulus(u64 q) {
    if (!is_prime(q)) throw UsageError("q = " + std::to_string(q) + " is not prime");
    return Modulus::prime(q);
}

int run_scan_cmd(const Common& c, const std::string& xs, const std::string& q_spec, const std::string& a_spec,
                 std::optional<int> theorem, double gamma, std::optional<double> delta1) {
    ScanConfig config;
    config.X_list = parse_list(xs);
    config.q_list = parse_q_spec(q_spec);
    config.a_spec = parse_a_spec(a_spec);
    config.seed = c.seed;
    config.threads = c.threads;
    config.epsilon = c.epsilon;
    config.theorem_id = theorem;
    config.gamma = gamma;
    config.delta1 = delta1;
    config.validate();
    Output out(c);
    run_scan(config, out.writer());
    out.finish();
    return kExitOk;
}

Row expsum_row(const std::string& kind, u64 q, const ExpSumValue& v) {
    Row row;
    row.add("kind", kind)
        .add("q", q)
        .add("re", v.value.real())
        .add("im", v.value.imag())
        .add("magnitude", v.magnitude())
        .add("term_count", v.term_count)
        .add("trivial_bound", v.trivial_bound)
        .add("envelope", v.envelope ? *v.envelope : std::nan(""));
    return row;
}

struct ExpsumArgs {
    std::string kind = "twisted";
    u64 q = 0;
    u64 a = 1;
    u64 R = 0;
    double A = 0.0;
    double B = 0.0;
    u64 alpha = 1;
    u64 beta = 1;
    double t = 0.0;
    bool all_squarefree = false;
};

int run_expsum_cmd(const Common& c, const ExpsumArgs& x) {
    Output out(c);
    auto& w = out.writer();
    if (x.kind == "weil-scan") {
        const auto r = weil_constant_scan(x.q);
        Row row;
        row.add("q_max", x.q).add("max_ratio", r.max_ratio).add("q", r.q).add("alpha", r.alpha).add("beta", r.beta);
        w.write(row);
        out.finish();
        return kExitOk;
    }
    const Modulus q = prime_modulus(x.q);
    if (x.kind == "twisted") {
        w.write(expsum_row(x.kind, q, twisted_mobius_sum(x.R, q, x.a, !x.all_squarefree)));
    } else if (x.kind == "max-twisted") {
        Row row;
        row.add("kind", x.kind).add("q", x.q).add("t", x.R).add("max_magnitude", max_twisted_mobius_sum(x.R, q));
        w.write(row);
    } else if (x.kind == "inverse-square") {
        w.write(expsum_row(x.kind, q, inverse_square_phase_sum(x.A, x.B, q, x.a)));
    } else if (x.kind == "mixed") {
        w.write(expsum_row(x.kind, q, complete_mixed_sum(q, x.alpha, x.beta)));
    } else if (x.kind == "theta") {
        w.write(expsum_row(x.kind, q, theta_sum(x.t, x.alpha, q)));
    } else if (x.kind == "kloosterman") {
        w.write(expsum_row(x.kind, q, short_kloosterman_sum(x.R, q, x.a)));
    } else {
        throw UsageError("unknown expsum kind '" + x.kind + "'");
    }
    out.finish();
    return kExitOk;
}

struct SieveArgs {
    u64 X = 0;
    u64 M = 0;
    u64 q = 0;
    u64 a = 1;
    double D = 0.0;
    u64 random = 0;
};

int run_sieve_cmd(const Common& c, const SieveArgs& s) {
    struct Case {
        u64 X, M, q, a;
        double D;
    };
    std::vector<Case> cases;
    if (s.random > 0) {
        std::mt19937_64 rng(c.seed);
        const auto primes = prime_range(3, 997);
        while (cases.size() < s.random) {
            const u64 X = 1000 + rng() % 99'001;
            const u64 q = primes[rng() % primes.size()];
            const u64 a = 1 + rng() % (q - 1);
            const double R = std::cbrt(static_cast<double>(X)) * (0.5 + 0.5 * static_cast<double>(rng() >> 11) * 0x1.0p-53);
            const auto Ms = dyadic_M_candidates(static_cast<double>(X), R);
            if (Ms.empty()) continue;
            const u64 M = Ms[rng() % Ms.size()];
            if (M > X) continue;
            const double D = 1.5 + 198.5 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
            cases.push_back({X, M, q, a, D});
        }
    } else {
        if (s.X == 0 || s.M == 0 || s.q == 0 || s.D <= 0.0) {
            throw UsageError("sieve-check needs --X, --M, --q, --D (or --random N)");
        }
        cases.push_back({s.X, s.M, s.q, s.a, s.D});
    }
    Output out(c);
    bool all_ok = true;
    for (const auto& k : cases) {
        const Modulus q = prime_modulus(k.q);
        const auto inst = instantiate_square_detection(k.X, k.M, q, k.a, k.D);
        const auto rep = sieve_upper_bound(inst, true);
        const u64 frak = frak_S_bruteforce(k.X, k.M, q, k.a);
        const double mass = square_supported_mass(inst);
        const bool ok = rep.bound + 1e-9 >= static_cast<double>(frak) && rep.bound + 1e-9 >= *rep.exact &&
                        mass == static_cast<double>(frak);
        all_ok = all_ok && ok;
        Row row;
        row.add("X", k.X)
            .add("M", k.M)
            .add("q", k.q)
            .add("a", k.a)
            .add("D", k.D)
            .add("primes", static_cast<u64>(inst.primes.size()))
            .add("J", rep.J)
            .add("bound", rep.bound)
            .add("sifted", *rep.exact)
            .add("frak_S", frak)
            .add("square_mass", mass)
            .add("pass", ok);
        out.writer().write(row);
    }
    out.finish();
    return all_ok ? kExitOk : kExitInvariant;
}

int run_psi_cmd(const Common& c, const std::string& ys, std::size_t points) {
    Output out(c);
    bool all_ok = true;
    for (const auto& part : split(ys, ',')) {
        std::size_t used = 0;
        double Y = 0.0;
        try {
            Y = std::stod(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != part.size() || part.empty()) throw UsageError("bad sharpness '" + part + "'");
        const auto approx = build_approximation(Y);
        const auto rep = check_majorization(approx, points);
        const double ratio = approx.coefficient_ratio();
        const bool ok = rep.max_violation <= 1e-9 && ratio <= kCoefficientConstant &&
                        rep.mean_B >= 1.0 / Y - 1e-6 && rep.mean_B <= 1.0 / Y + 4.0 / std::sqrt(Y);
        all_ok = all_ok && ok;
        Row row;
        row.add("Y", Y)
            .add("degree", approx.degree())
            .add("points", static_cast<u64>(points))
            .add("max_violation", rep.max_violation)
            .add("worst_x", rep.worst_x)
            .add("min_B", rep.min_B)
            .add("mean_B", rep.mean_B)
            .add("coefficient_ratio", ratio)
            .add("pass", ok);
        out.writer().write(row);
    }
    out.finish();
    return all_ok ? kExitOk : kExitInvariant;
}

struct DecomposeArgs {
    u64 X = 0;
    u64 q = 0;
    u64 a = 1;
    std::optional<double> R;
    std::optional<int> theorem;
    std::optional<double> eta;
    std::optional<double> delta1;
    std::optional<double> gamma;
};

int run_decompose_cmd(const Common& c, const DecomposeArgs& d) {
    const Modulus q = prime_modulus(d.q);
    double R = 0.0;
    std::optional<ParameterSchedule> sched;
    if (d.theorem) {
        ScheduleInputs in;
        in.eta = d.eta;
        in.delta1 = d.delta1;
        in.gamma = d.gamma;
        sched = parameter_schedule(*d.theorem, static_cast<double>(d.X), static_cast<double>(d.q), in);
    }
    if (d.R) {
        R = *d.R;
    } else if (sched && sched->R) {
        R = *sched->R;
    } else {
        throw UsageError("decompose needs --R or a --theorem whose schedule fixes R");
    }
    const auto rec = decompose(d.X, q, d.a, R);
    Output out(c);
    Row row = decomposition_row(rec);
    if (sched) {
        const auto opt = [](const std::optional<double>& v) { return v ? *v : std::nan(""); };
        row.add("theorem", static_cast<std::int64_t>(sched->theorem_id))
            .add("R_0", opt(sched->R_0))
            .add("Y", opt(sched->Y))
            .add("D", opt(sched->D));
    }
    out.writer().write(row);
    out.finish();
    return kExitOk;
}

int run_verify_cmd(const Common& c, const std::string& suite) {
    const auto rep = verify(suite, c.seed);
    Output out(c);
    for (const auto& r : rep.results) out.writer().write(invariant_row(r));
    out.finish();
    return rep.all_pass() ? kExitOk : kExitInvariant;
}

int run_fit_cmd(const Common& c, const std::string& in_path, const std::string& in_format) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw UsageError("cannot open input file '" + in_path + "'");
    std::vector<ErrorRecord> records;
    for (const auto& row : read_rows(in, parse_format(in_format))) records.push_back(parse_error_row(row));
    const auto fit = fit_exponent(records);
    double max_ratio = 0.0;
    for (const auto& g : group_maxima(records)) max_ratio = std::max(max_ratio, g.max_abs_ratio_half);
    Output out(c);
    Row row;
    row.add("slope", fit.slope)
        .add("intercept", fit.intercept)
        .add("n_points", static_cast<u64>(fit.n_points))
        .add("residual_rms", fit.residual_rms)
        .add("max_abs_ratio_half", max_ratio)
        .add("rows", static_cast<u64>(records.size()));
    out.writer().write(row);
    out.finish();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Squarefree numbers in arithmetic progressions: experiments and checks"};
    app.require_subcommand(1);

    Common common;

    auto* scan = app.add_subcommand("scan", "Tabulate E(X,q,a) over a grid");
    add_common(scan, common);
    std::string xs, q_spec, a_spec = "all";
    std::optional<int> theorem;
    double gamma = 0.25;
    std::optional<double> delta1;
    scan->add_option("--X", xs, "Comma list of X values")->required();
    scan->add_option("--q", q_spec, "Prime range lo:hi or comma list of primes")->required();
    scan->add_option("--a", a_spec, "'all', 'sample:k' or 'list:a1,a2,...'");
    scan->add_option("--theorem", theorem, "Add envelope columns for theorem 1-4")->check(CLI::Range(1, 4));
    scan->add_option("--gamma", gamma, "Theorem 3 gamma");
    scan->add_option("--delta1", delta1, "Theorem 2 delta_1");

    auto* expsum = app.add_subcommand("expsum", "Evaluate one exponential sum");
    add_common(expsum, common);
    ExpsumArgs ex;
    expsum->add_option("--kind", ex.kind, "twisted, max-twisted, inverse-square, mixed, theta, kloosterman, weil-scan")
        ->check(CLI::IsMember({"twisted", "max-twisted", "inverse-square", "mixed", "theta", "kloosterman", "weil-scan"}));
    expsum->add_option("--q", ex.q, "Prime modulus (q_max for weil-scan)")->required();
    expsum->add_option("--a", ex.a, "Residue");
    expsum->add_option("--R", ex.R, "Length for twisted, max-twisted and kloosterman");
    expsum->add_option("--A", ex.A, "Lower end for inverse-square");
    expsum->add_option("--B", ex.B, "Upper end for inverse-square");
    expsum->add_option("--alpha", ex.alpha, "alpha for mixed and theta");
    expsum->add_option("--beta", ex.beta, "beta for mixed");
    expsum->add_option("--t", ex.t, "Length for theta");
    expsum->add_flag("--all-squarefree", ex.all_squarefree, "Twisted trivial bound over all squarefree n <= R");

    auto* sieve = app.add_subcommand("sieve-check", "Selberg bound against brute force on square detection");
    add_common(sieve, common);
    SieveArgs sv;
    sieve->add_option("--X", sv.X);
    sieve->add_option("--M", sv.M);
    sieve->add_option("--q", sv.q);
    sieve->add_option("--a", sv.a);
    sieve->add_option("--D", sv.D);
    sieve->add_option("--random", sv.random, "Check N random instances instead");

    auto* psi_cmd = app.add_subcommand("psi-check", "Majorization and coefficient checks of the psi approximation");
    add_common(psi_cmd, common);
    std::string ys = "5,20,100";
    std::size_t points = 10'000;
    psi_cmd->add_option("--Y", ys, "Comma list of sharpness values");
    psi_cmd->add_option("--points", points, "Grid size")->check(CLI::PositiveNumber);

    auto* dec = app.add_subcommand("decompose", "S = S_I + S_II, T - U + V and the dual split for one tuple");
    add_common(dec, common);
    DecomposeArgs da;
    dec->add_option("--X", da.X)->required();
    dec->add_option("--q", da.q)->required();
    dec->add_option("--a", da.a);
    dec->add_option("--R", da.R);
    dec->add_option("--theorem", da.theorem, "Take R from the theorem's schedule")->check(CLI::Range(1, 3));
    dec->add_option("--eta", da.eta);
    dec->add_option("--delta1", da.delta1);
    dec->add_option("--gamma", da.gamma);

    auto* ver = app.add_subcommand("verify", "Run invariant suites");
    add_common(ver, common);
    std::string suite = "all";
    ver->add_option("--suite", suite, "identities, expsums, psi, sieve, all");

    auto* fit = app.add_subcommand("fit", "Fit log max|E| against log(X/q) from a scan file");
    add_common(fit, common);
    std::string in_path, in_format = "csv";
    fit->add_option("--in", in_path, "Scan output to read")->required();
    fit->add_option("--in-format", in_format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*scan) return run_scan_cmd(common, xs, q_spec, a_spec, theorem, gamma, delta1);
        if (*expsum) return run_expsum_cmd(common, ex);
        if (*sieve) return run_sieve_cmd(common, sv);
        if (*psi_cmd) return run_psi_cmd(common, ys, points);
        if (*dec) return run_decompose_cmd(common, da);
        if (*ver) return run_verify_cmd(common, suite);
        if (*fit) return run_fit_cmd(common, in_path, in_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
