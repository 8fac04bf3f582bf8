// Row-oriented CSV / JSONL serialization shared by every CLI subcommand.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sqfap/decomposition.hpp"
#include "sqfap/distribution.hpp"

namespace sqfap {

enum class Format { Csv, Jsonl };

Format parse_format(std::string_view name);

using Field = std::variant<std::uint64_t, std::int64_t, double, std::string, bool>;

struct Row {
    std::vector<std::pair<std::string, Field>> fields;

    Row& add(std::string name, Field value) {
        fields.emplace_back(std::move(name), std::move(value));
        return *this;
    }
};

// Doubles use 17 significant digits; CSV writes its header before the first row.
std::string format_double(double v);

class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}

    void write(const Row& row);
    // CSV only: emit the header for an empty result set.
    void write_header(const std::vector<std::string>& names);
    std::size_t rows_written() const noexcept { return rows_; }

private:
    std::ostream& out_;
    Format format_;
    bool header_done_ = false;
    std::size_t rows_ = 0;
};

// Parsed rows as name -> textual value.
using TextRow = std::map<std::string, std::string>;
std::vector<TextRow> read_rows(std::istream& in, Format format);

inline const std::vector<std::string>& error_row_fields() {
    static const std::vector<std::string> names{"X", "q", "a", "count", "reference", "E",
                                                "ratio_half", "ratio_quarter"};
    return names;
}

Row error_row(const ErrorRecord& rec);
// Inverse of error_row; checks count - reference == E exactly.
ErrorRecord parse_error_row(const TextRow& row);

Row decomposition_row(const DecompositionRecord& rec);

}  // namespace sqfap
