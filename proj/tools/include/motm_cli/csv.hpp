#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace motm::cli {

/// Numeric table with a trailing "status" column. Doubles are written with
/// 17 significant digits so that the output round-trips.
class CsvTable {
public:
    using Cell = std::variant<double, std::string>;

    explicit CsvTable(std::vector<std::string> columns);

    /// `cells` excludes the status column.
    void add_row(std::vector<Cell> cells, std::string status = "ok");

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    std::size_t size() const noexcept { return rows_.size(); }
    const std::vector<Cell>& row(std::size_t i) const { return rows_.at(i); }
    const std::string& status(std::size_t i) const { return status_.at(i); }
    double number(std::size_t row, const std::string& column) const;

    /// True if any status starts with "error".
    bool has_error() const noexcept;

    void write(std::ostream& out) const;
    std::string str() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::string> status_;
};

std::string format_double(double v);

}  // namespace motm::cli
