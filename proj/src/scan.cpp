#include "sqfap/scan.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>

#include "sqfap/decomposition.hpp"

namespace sqfap {

namespace {

constexpr std::size_t kCellsPerBatch = 64;

std::vector<u64> sorted_unique(std::vector<u64> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

struct Cell {
    u64 X;
    u64 q;
};

}  // namespace

void ScanConfig::validate() const {
    if (X_list.empty()) throw std::invalid_argument("scan: X list is empty");
    if (q_list.empty()) throw std::invalid_argument("scan: q list is empty");
    for (u64 q : q_list) {
        if (!is_prime(q)) throw std::invalid_argument("scan: q = " + std::to_string(q) + " is not prime");
    }
    if (*std::max_element(X_list.begin(), X_list.end()) > kSieveCeiling) {
        throw std::invalid_argument("scan: X above 10^12");
    }
    if (a_spec.kind == ResidueSpec::Kind::Sample && a_spec.k == 0) {
        throw std::invalid_argument("scan: sample size must be positive");
    }
    if (theorem_id && (*theorem_id < 1 || *theorem_id > 4)) {
        throw std::invalid_argument("scan: theorem id must be 1..4");
    }
    if (theorem_id && *theorem_id == 2 && !delta1) {
        throw std::invalid_argument("scan: theorem 2 envelope needs delta1");
    }
    if (!(epsilon >= 0.0)) throw std::invalid_argument("scan: epsilon must be nonnegative");
}

std::vector<u64> prime_range(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (hi < 2 || hi < lo) return out;
    for (u64 p : primes_up_to(hi)) {
        if (p >= lo) out.push_back(p);
    }
    return out;
}

std::vector<u64> select_residues(const ResidueSpec& spec, u64 seed, u64 q) {
    std::vector<u64> units;
    for (u64 a = 0; a < q; ++a) {
        if (gcd(a, q) == 1) units.push_back(a);
    }
    if (spec.kind == ResidueSpec::Kind::List) {
        std::vector<u64> out;
        for (u64 a : spec.values) {
            if (gcd(a % q, q) == 1) out.push_back(a % q);
        }
        return sorted_unique(out);
    }
    if (spec.kind == ResidueSpec::Kind::AllCoprime || spec.k >= units.size()) return units;
    // Partial Fisher-Yates from raw mt19937_64 output, which the standard
    // fixes bit for bit, so the choice is identical on every platform.
    std::mt19937_64 rng(seed ^ (q * 0x9E3779B97F4A7C15ULL));
    for (u64 i = 0; i < spec.k; ++i) {
        const u64 j = i + rng() % (units.size() - i);
        std::swap(units[i], units[j]);
    }
    units.resize(spec.k);
    std::sort(units.begin(), units.end());
    return units;
}

std::vector<std::string> scan_fields(const ScanConfig& config) {
    auto names = error_row_fields();
    if (config.theorem_id) {
        names.push_back("envelope");
        names.push_back("envelope_ratio");
    }
    names.push_back("seed");
    return names;
}

u64 run_scan(const ScanConfig& config, const RecordSink& sink) {
    config.validate();
    const auto xs = sorted_unique(config.X_list);
    const auto qs = sorted_unique(config.q_list);
    const u64 x_max = xs.back();
    std::optional<SquarefreeBits> table;
    if (x_max >= 1) table.emplace(1, x_max);

    std::vector<Cell> cells;
    for (u64 X : xs) {
        for (u64 q : qs) cells.push_back({X, q});
    }
    std::vector<std::vector<u64>> residues(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) residues[i] = select_residues(config.a_spec, config.seed, qs[i]);
    auto residues_for = [&](u64 q) -> const std::vector<u64>& {
        return residues[std::lower_bound(qs.begin(), qs.end(), q) - qs.begin()];
    };

    auto compute = [&](const Cell& cell) {
        const auto& as = residues_for(cell.q);
        std::vector<ErrorRecord> out;
        out.reserve(as.size());
        if (as.empty()) return out;
        const auto counts = cell.X == 0 ? std::vector<u64>(cell.q, 0) : counts_by_residue(*table, cell.X, cell.q);
        u64 coprime = 0;
        for (u64 a = 1; a < cell.q; ++a) coprime += counts[a];
        const u64 phi = cell.q - 1;
        for (u64 a : as) out.push_back(make_error_record(cell.X, cell.q, a, counts[a], coprime, phi));
        return out;
    };

    const unsigned threads = std::max(1U, config.threads);
    u64 rows = 0;
    for (std::size_t begin = 0; begin < cells.size(); begin += kCellsPerBatch) {
        const std::size_t end = std::min(cells.size(), begin + kCellsPerBatch);
        std::vector<std::vector<ErrorRecord>> results(end - begin);
        std::atomic<std::size_t> next{begin};
        auto worker = [&] {
            for (std::size_t i = next++; i < end; i = next++) results[i - begin] = compute(cells[i]);
        };
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        for (const auto& batch : results) {
            for (const auto& rec : batch) {
                Row row = error_row(rec);
                if (config.theorem_id) {
                    double env = 0.0;
                    if (rec.X > 1) {
                        EnvelopeInputs in;
                        in.epsilon = config.epsilon;
                        in.gamma = config.gamma;
                        in.delta1 = config.delta1;
                        env = *config.theorem_id == 3 && rec.X <= 3
                                  ? 0.0
                                  : bound_envelope(*config.theorem_id, static_cast<double>(rec.X),
                                                   static_cast<double>(rec.q), in);
                    }
                    row.add("envelope", env);
                    row.add("envelope_ratio", env > 0.0 ? rec.error.to_double() / env : 0.0);
                }
                row.add("seed", config.seed);
                sink(rec, row);
                ++rows;
            }
        }
    }
    return rows;
}

u64 run_scan(const ScanConfig& config, RecordWriter& writer) {
    config.validate();
    writer.write_header(scan_fields(config));
    return run_scan(config, [&](const ErrorRecord&, const Row& row) { writer.write(row); });
}

}  // namespace sqfap
