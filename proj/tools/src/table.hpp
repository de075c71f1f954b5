#pragma once

#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace halfspace::cli {

// A cell is empty, a flag, an integer, a real or text.
using Cell = std::variant<std::monostate, bool, long long, double, std::string>;

// Flat records with a fixed column order, written as CSV (header row first)
// or as a JSON array of objects with the same keys.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    // Columns not mentioned stay empty; unknown names are a programming error.
    void add(const std::map<std::string, Cell>& row);

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

}  // namespace halfspace::cli
