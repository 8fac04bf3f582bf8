// Cross-module invariant suites behind `sqfap verify`.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sqfap/records.hpp"

namespace sqfap {

struct InvariantResult {
    std::string suite;
    std::string invariant;
    bool pass = true;
    std::uint64_t cases = 0;
    double observed = 0.0;        // worst-case statistic, meaning per invariant
    std::string counterexample;   // first failing case, empty on pass
};

struct VerifyReport {
    std::vector<InvariantResult> results;
    bool all_pass() const;
};

// suite in {identities, expsums, psi, sieve, all}; std::invalid_argument otherwise.
VerifyReport verify(std::string_view suite, std::uint64_t seed = 1);

Row invariant_row(const InvariantResult& r);

}  // namespace sqfap
