#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace halfspace::cli {

void Table::add(const std::map<std::string, Cell>& row) {
    std::vector<Cell> cells(columns_.size());
    for (const auto& [key, value] : row) {
        std::size_t i = 0;
        while (i < columns_.size() && columns_[i] != key) ++i;
        if (i == columns_.size()) throw std::logic_error("table has no column '" + key + "'");
        cells[i] = value;
    }
    rows_.push_back(std::move(cells));
}

namespace {

std::string csv_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const {
            if (std::isnan(v)) return "nan";
            if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string out = "\"";
            for (char ch : s) {
                if (ch == '"') out += '"';
                out += ch;
            }
            return out + "\"";
        }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::ordered_json json_value(const Cell& c) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) return nullptr;
            return v;
        }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_text(row[i]);
        os << '\n';
    }
}

void Table::write_json(std::ostream& os) const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) rec[columns_[i]] = json_value(row[i]);
        arr.push_back(std::move(rec));
    }
    os << arr.dump(2) << '\n';
}

}  // namespace halfspace::cli
