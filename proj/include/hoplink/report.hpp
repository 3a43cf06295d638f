#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hoplink {

using Cell = std::variant<std::string, double, std::int64_t, bool>;

/// A rectangular result table with a fixed, ordered column set.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::vector<Cell>& add_row();
    int column_index(const std::string& column) const;  // -1 when absent
    double number_at(std::size_t row, const std::string& column) const;
};

/// Locale-independent scalar formatting ('.' decimal point, shortest
/// round-trip for doubles).
std::string format_cell(const Cell& c);

/// RFC-style CSV: header row, comma separation, minimal quoting.
void write_csv(std::ostream& os, const Table& table);
void write_csv(std::ostream& os, const std::vector<Table>& tables);  // blank-line separated

nlohmann::ordered_json to_json(const Table& table);
nlohmann::ordered_json to_json(const std::vector<Table>& tables);

} // namespace hoplink
