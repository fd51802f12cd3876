// rabiq/csv.hpp - deterministic tabular output (CSV and JSON)
#pragma once

#include <charconv>
#include <cstdint>
#include <ctime>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rabiq {

using Cell = std::variant<double, std::int64_t, std::string>;

// Locale-independent shortest-exact double formatting (17 significant digits
// round-trips any IEEE double).
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
    return std::get<std::string>(c);
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline std::string iso8601_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Column table with sorted key=value metadata. CSV output carries the format
// tag `# rabiq-csv v1`, a `# generated=` timestamp (the only
// non-reproducible line) and one `# key=value` line per metadata entry.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
        if (columns_.empty()) throw std::domain_error("table needs at least one column");
    }

    void meta(const std::string& key, const std::string& value) { meta_[key] = value; }
    void meta(const std::string& key, double value) { meta_[key] = format_double(value); }
    void meta(const std::string& key, std::int64_t value) { meta_[key] = std::to_string(value); }
    void meta(const std::string& key, int value) { meta_[key] = std::to_string(value); }

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns_.size())
            throw std::domain_error("row width does not match the column set");
        rows_.push_back(std::move(row));
    }

    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }

    void write_csv(std::ostream& os, bool with_timestamp = true) const {
        os << "# rabiq-csv v1\n";
        if (with_timestamp) os << "# generated=" << iso8601_now() << "\n";
        for (const auto& [k, v] : meta_) os << "# " << k << "=" << v << "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i)
            os << (i ? "," : "") << csv_quote(columns_[i]);
        os << "\n";
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << csv_quote(format_cell(row[i]));
            os << "\n";
        }
    }

    void write_json(std::ostream& os, bool with_timestamp = true) const {
        nlohmann::json j;
        j["format"] = "rabiq-json v1";
        if (with_timestamp) j["generated"] = iso8601_now();
        nlohmann::json meta = nlohmann::json::object();
        for (const auto& [k, v] : meta_) meta[k] = v;
        j["meta"] = meta;
        j["columns"] = columns_;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : rows_) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& c : row) {
                if (std::holds_alternative<double>(c))
                    r.push_back(std::get<double>(c));
                else if (std::holds_alternative<std::int64_t>(c))
                    r.push_back(std::get<std::int64_t>(c));
                else
                    r.push_back(std::get<std::string>(c));
            }
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
        os << j.dump(2) << "\n";
    }

private:
    std::vector<std::string> columns_;
    std::map<std::string, std::string> meta_;
    std::vector<std::vector<Cell>> rows_;
};

} // namespace rabiq
