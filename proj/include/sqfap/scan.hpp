// Grid scans of E(X,q,a) over (X, q, a) with deterministic, thread-count
// independent output.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqfap/distribution.hpp"
#include "sqfap/records.hpp"

namespace sqfap {

struct ResidueSpec {
    enum class Kind { AllCoprime, Sample, List } kind = Kind::AllCoprime;
    u64 k = 0;                // sample size per modulus
    std::vector<u64> values;  // List: reduced mod q, non-units dropped
};

struct ScanConfig {
    std::vector<u64> X_list;
    std::vector<u64> q_list;  // primes
    ResidueSpec a_spec;
    u64 seed = 0;
    unsigned threads = 1;
    double epsilon = 0.0;
    std::optional<int> theorem_id;  // adds envelope and envelope_ratio columns
    double gamma = 0.25;            // theorem 3 envelope
    std::optional<double> delta1;   // theorem 2 envelope

    // Throws std::invalid_argument (empty lists, composite q, bad theorem id).
    void validate() const;
};

// Primes in [lo, hi].
std::vector<u64> prime_range(u64 lo, u64 hi);

// Residues emitted for modulus q, ascending. Depends only on (spec, seed, q).
std::vector<u64> select_residues(const ResidueSpec& spec, u64 seed, u64 q);

// Column names of a scan with this configuration.
std::vector<std::string> scan_fields(const ScanConfig& config);

using RecordSink = std::function<void(const ErrorRecord&, const Row&)>;

// Rows arrive in ascending (X, q, a) regardless of thread count. Returns the
// number of rows.
u64 run_scan(const ScanConfig& config, const RecordSink& sink);

// run_scan into a writer (header included even when no rows are produced).
u64 run_scan(const ScanConfig& config, RecordWriter& writer);

}  // namespace sqfap
