// Least-squares exponent fit of log max_a |E| against log(X/q).
#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sqfap/distribution.hpp"

namespace sqfap {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t n_points = 0;
    double residual_rms = 0.0;
};

class DegenerateFit : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Ordinary least squares y = slope x + intercept.
FitResult fit_line(const std::vector<std::pair<double, double>>& points);

struct GroupMax {
    u64 X = 0;
    u64 q = 0;
    double max_abs_error = 0.0;
    double max_abs_ratio_half = 0.0;
};

// One entry per (X, q), ascending.
std::vector<GroupMax> group_maxima(const std::vector<ErrorRecord>& records);

// Needs at least 3 (X, q) groups with nonzero max |E| and two distinct X/q.
FitResult fit_exponent(const std::vector<ErrorRecord>& records);

}  // namespace sqfap
