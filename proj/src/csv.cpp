#include "egonet/csv.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "egonet/error.hpp"

namespace egonet {

std::string format_number(double v) {
    if (!std::isfinite(v)) return {};
    if (v == 0.0) return "0";  // no "-0"
    return fmt::format("{:.12g}", v);
}

std::string format_number(std::optional<double> v) { return v ? format_number(*v) : std::string{}; }

namespace {

void write_field(std::string& out, std::string_view f) {
    if (f.find_first_of(",\"\n\r") == std::string_view::npos) {
        out.append(f);
        return;
    }
    out.push_back('"');
    for (char c : f) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
}

void write_row(std::string& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out.push_back(',');
        write_field(out, row[i]);
    }
    out.push_back('\n');
}

}  // namespace

void CsvTable::add_row(std::vector<std::string> row) {
    if (!header_.empty() && row.size() != header_.size())
        throw ValidationError(fmt::format("CSV row has {} fields, header has {}", row.size(), header_.size()));
    rows_.push_back(std::move(row));
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) return i;
    }
    throw ValidationError(fmt::format("CSV has no column '{}'", name));
}

std::string CsvTable::to_string() const {
    std::string out;
    write_row(out, header_);
    for (const auto& r : rows_) write_row(out, r);
    return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
    out << to_string();
    if (!out) throw IoError(fmt::format("write failed for {}", path.string()));
}

CsvTable CsvTable::parse(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !field.empty()) {
                row.push_back(std::move(field));
                records.push_back(std::move(row));
            }
            row.clear();
            field.clear();
            any = false;
        } else {
            field.push_back(c);
            any = true;
        }
    }
    if (quoted) throw ValidationError("unterminated quoted CSV field");
    if (any || !field.empty()) {
        row.push_back(std::move(field));
        records.push_back(std::move(row));
    }
    CsvTable t;
    if (records.empty()) return t;
    t.header_ = std::move(records.front());
    for (std::size_t i = 1; i < records.size(); ++i) t.add_row(std::move(records[i]));
    return t;
}

CsvTable CsvTable::read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot read {}", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

double parse_double(std::string_view field) {
    if (field.empty()) return std::nan("");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ValidationError(fmt::format("'{}' is not a number", field));
    return v;
}

}  // namespace egonet
