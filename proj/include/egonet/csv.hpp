#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace egonet {

/// 12 significant digits, `.` decimal; NaN and infinities render as an empty field.
std::string format_number(double v);
std::string format_number(std::optional<double> v);

/// In-memory CSV: header row, `,` separator, LF line endings, RFC 4180 quoting.
class CsvTable {
public:
    CsvTable() = default;
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    void add_row(std::vector<std::string> row);

    /// Column index by name; throws ValidationError if absent.
    std::size_t column(std::string_view name) const;

    std::string to_string() const;
    void write(const std::filesystem::path& path) const;

    static CsvTable parse(std::string_view text);
    static CsvTable read(const std::filesystem::path& path);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

double parse_double(std::string_view field);

}  // namespace egonet
