#include "sqfap/records.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace sqfap {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_text(const Field& f) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                return csv_escape(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else {
                return std::to_string(v);
            }
        },
        f);
}

std::string json_text(const Field& f) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                return nlohmann::json(v).dump();
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, double>) {
                return std::isfinite(v) ? format_double(v) : "null";
            } else {
                return std::to_string(v);
            }
        },
        f);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

template <typename T>
T parse_number(const TextRow& row, const std::string& key) {
    const auto it = row.find(key);
    if (it == row.end()) throw std::invalid_argument("row lacks field '" + key + "'");
    T v{};
    const auto& s = it->second;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("field '" + key + "' is not a number: " + s);
    }
    return v;
}

}  // namespace

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "jsonl") return Format::Jsonl;
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv or jsonl)");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void RecordWriter::write_header(const std::vector<std::string>& names) {
    if (format_ != Format::Csv || header_done_) return;
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << csv_escape(names[i]);
    out_ << '\n';
    header_done_ = true;
}

void RecordWriter::write(const Row& row) {
    if (format_ == Format::Csv) {
        if (!header_done_) {
            std::vector<std::string> names;
            for (const auto& [name, value] : row.fields) names.push_back(name);
            write_header(names);
        }
        for (std::size_t i = 0; i < row.fields.size(); ++i) {
            out_ << (i ? "," : "") << csv_text(row.fields[i].second);
        }
        out_ << '\n';
    } else {
        out_ << '{';
        for (std::size_t i = 0; i < row.fields.size(); ++i) {
            out_ << (i ? "," : "") << nlohmann::json(row.fields[i].first).dump() << ':'
                 << json_text(row.fields[i].second);
        }
        out_ << "}\n";
    }
    ++rows_;
}

std::vector<TextRow> read_rows(std::istream& in, Format format) {
    std::vector<TextRow> rows;
    std::string line;
    if (format == Format::Csv) {
        std::vector<std::string> header;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto cells = split_csv_line(line);
            if (header.empty()) {
                header = std::move(cells);
                continue;
            }
            if (cells.size() != header.size()) throw std::invalid_argument("CSV row width differs from header");
            TextRow row;
            for (std::size_t i = 0; i < cells.size(); ++i) row[header[i]] = std::move(cells[i]);
            rows.push_back(std::move(row));
        }
    } else {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto obj = nlohmann::json::parse(line);
            TextRow row;
            for (const auto& [key, value] : obj.items()) {
                row[key] = value.is_string() ? value.get<std::string>() : value.dump();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

Row error_row(const ErrorRecord& rec) {
    Row row;
    row.add("X", rec.X)
        .add("q", rec.q)
        .add("a", rec.a)
        .add("count", rec.count)
        .add("reference", rec.reference.str())
        .add("E", rec.error.str())
        .add("ratio_half", rec.ratio_half)
        .add("ratio_quarter", rec.ratio_quarter);
    return row;
}

ErrorRecord parse_error_row(const TextRow& row) {
    ErrorRecord rec;
    rec.X = parse_number<std::uint64_t>(row, "X");
    rec.q = parse_number<std::uint64_t>(row, "q");
    rec.a = parse_number<std::uint64_t>(row, "a");
    rec.count = parse_number<std::uint64_t>(row, "count");
    rec.reference = Rational::parse(row.at("reference"));
    rec.error = Rational::parse(row.at("E"));
    if (Rational(static_cast<std::int64_t>(rec.count)) - rec.reference != rec.error) {
        throw std::invalid_argument("row violates count - reference = E");
    }
    rec.ratio_half = std::stod(row.at("ratio_half"));
    rec.ratio_quarter = std::stod(row.at("ratio_quarter"));
    return rec;
}

Row decomposition_row(const DecompositionRecord& rec) {
    Row row;
    row.add("X", rec.X)
        .add("q", rec.q)
        .add("a", rec.a)
        .add("R", rec.R)
        .add("S", rec.S)
        .add("S_I", rec.S_I)
        .add("S_II", rec.S_II)
        .add("T", rec.T)
        .add("U", rec.U)
        .add("V", rec.V)
        .add("TUV_residual", static_cast<double>(rec.S_I) - (rec.T - rec.U + rec.V))
        .add("boundary", rec.boundary);
    if (rec.S_III) row.add("S_III", *rec.S_III).add("S_IV", *rec.S_IV);
    return row;
}

}  // namespace sqfap
