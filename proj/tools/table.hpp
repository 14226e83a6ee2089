#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace dihedral::cli {

inline std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// All emitters go through one table so CSV and JSON carry identical data.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

    void write(std::ostream& out, bool as_json) const
    {
        if (as_json) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& row : rows) {
                nlohmann::json obj = nlohmann::json::object();
                for (std::size_t i = 0; i < columns.size(); ++i)
                    obj[columns[i]] = row[i];
                arr.push_back(obj);
            }
            out << arr.dump(2) << '\n';
            return;
        }
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << columns[i];
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << row[i];
            out << '\n';
        }
    }
};

} // namespace dihedral::cli
