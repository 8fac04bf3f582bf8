#include "sqfap/fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sqfap {

FitResult fit_line(const std::vector<std::pair<double, double>>& points) {
    const std::size_t n = points.size();
    if (n < 2) throw DegenerateFit("fit needs at least two points");
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (!(sxx > 1e-12 * static_cast<double>(n))) throw DegenerateFit("fit design matrix is singular (all x equal)");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.n_points = n;
    double ss = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y - (fit.slope * x + fit.intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

std::vector<GroupMax> group_maxima(const std::vector<ErrorRecord>& records) {
    std::map<std::pair<u64, u64>, GroupMax> groups;
    for (const auto& rec : records) {
        auto& g = groups[{rec.X, rec.q}];
        g.X = rec.X;
        g.q = rec.q;
        g.max_abs_error = std::max(g.max_abs_error, std::fabs(rec.error.to_double()));
        g.max_abs_ratio_half = std::max(g.max_abs_ratio_half, std::fabs(rec.ratio_half));
    }
    std::vector<GroupMax> out;
    out.reserve(groups.size());
    for (const auto& [key, g] : groups) out.push_back(g);
    return out;
}

FitResult fit_exponent(const std::vector<ErrorRecord>& records) {
    std::vector<std::pair<double, double>> points;
    for (const auto& g : group_maxima(records)) {
        if (g.max_abs_error > 0.0 && g.X > 0) {
            points.emplace_back(std::log(static_cast<double>(g.X) / static_cast<double>(g.q)),
                                std::log(g.max_abs_error));
        }
    }
    if (points.size() < 3) throw DegenerateFit("fit needs at least 3 (X, q) groups with nonzero error");
    return fit_line(points);
}

}  // namespace sqfap
