#include "hoplink/report.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace hoplink {

std::vector<Cell>& Table::add_row() {
    rows.emplace_back();
    rows.back().reserve(columns.size());
    return rows.back();
}

int Table::column_index(const std::string& column) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == column) return static_cast<int>(i);
    return -1;
}

double Table::number_at(std::size_t row, const std::string& column) const {
    const int idx = column_index(column);
    if (idx < 0 || row >= rows.size())
        throw std::out_of_range("table: no cell " + column + "/" + std::to_string(row));
    const Cell& c = rows[row][static_cast<std::size_t>(idx)];
    if (const double* d = std::get_if<double>(&c)) return *d;
    if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw std::invalid_argument("table: cell " + column + " is not numeric");
}

std::string format_cell(const Cell& c) {
    if (const std::string* s = std::get_if<std::string>(&c)) return *s;
    if (const double* d = std::get_if<double>(&c)) {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), *d);
        return std::string(buf, ptr);
    }
    if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return std::get<bool>(c) ? "true" : "false";
}

namespace {

void write_csv_field(std::ostream& os, const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        os << s;
        return;
    }
    os << '"';
    for (char ch : s) {
        if (ch == '"') os << '"';
        os << ch;
    }
    os << '"';
}

} // namespace

void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) os << ',';
        write_csv_field(os, table.columns[i]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            write_csv_field(os, format_cell(row[i]));
        }
        os << '\n';
    }
}

void write_csv(std::ostream& os, const std::vector<Table>& tables) {
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) os << '\n';
        if (tables.size() > 1 && !tables[i].name.empty()) os << "# " << tables[i].name << '\n';
        write_csv(os, tables[i]);
    }
}

nlohmann::ordered_json to_json(const Table& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            const Cell& c = row[i];
            if (const std::string* s = std::get_if<std::string>(&c)) obj[table.columns[i]] = *s;
            else if (const double* d = std::get_if<double>(&c)) obj[table.columns[i]] = *d;
            else if (const std::int64_t* v = std::get_if<std::int64_t>(&c)) obj[table.columns[i]] = *v;
            else obj[table.columns[i]] = std::get<bool>(c);
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

nlohmann::ordered_json to_json(const std::vector<Table>& tables) {
    nlohmann::ordered_json out;
    for (const auto& t : tables) out[t.name.empty() ? "rows" : t.name] = to_json(t);
    return out;
}

} // namespace hoplink
