#include "motm_cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace motm::cli {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<Cell> cells, std::string status) {
    if (cells.size() != columns_.size()) {
        throw std::logic_error("row width does not match the header");
    }
    // A NaN cell must be explained by the status.
    for (const auto& c : cells) {
        if (const double* d = std::get_if<double>(&c); d && std::isnan(*d) && status == "ok") {
            throw std::logic_error("NaN cell in a row marked ok");
        }
    }
    rows_.push_back(std::move(cells));
    status_.push_back(std::move(status));
}

double CsvTable::number(std::size_t row, const std::string& column) const {
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (columns_[j] == column) {
            return std::get<double>(rows_.at(row).at(j));
        }
    }
    throw std::out_of_range("no column " + column);
}

bool CsvTable::has_error() const noexcept {
    for (const auto& s : status_) {
        if (s.rfind("error", 0) == 0) return true;
    }
    return false;
}

namespace {

std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

void CsvTable::write(std::ostream& out) const {
    for (const auto& c : columns_) out << c << ',';
    out << "status\n";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (const auto& cell : rows_[i]) {
            if (const double* d = std::get_if<double>(&cell)) {
                out << format_double(*d);
            } else {
                out << quoted(std::get<std::string>(cell));
            }
            out << ',';
        }
        out << quoted(status_[i]) << '\n';
    }
}

std::string CsvTable::str() const {
    std::ostringstream s;
    write(s);
    return s.str();
}

}  // namespace motm::cli
