#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "table.hpp"

using dihedral::cli::Table;
using dihedral::cli::fmt_double;

namespace {

// minimal CSV reader for the writer's own output
std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        if (line.empty() || line.back() == ',')
            cells.push_back("");
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("CSV and JSON encode identical data")
{
    Table t;
    t.columns = {"x", "count", "slope"};
    t.add_row({"1000", "99", ""});
    t.add_row({"1000000", "169772", ""});
    t.add_row({"", "", fmt_double(1.0 / 3)});

    std::ostringstream csv, json;
    t.write(csv, false);
    t.write(json, true);

    auto rows = parse_csv(csv.str());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"x", "count", "slope"});

    auto arr = nlohmann::json::parse(json.str());
    REQUIRE(arr.size() == 3);
    for (std::size_t r = 0; r < arr.size(); ++r)
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            CHECK(arr[r][t.columns[c]].get<std::string>() == rows[r + 1][c]);
}

TEST_CASE("double formatting round-trips exactly")
{
    for (double v : {1.0 / 3, 0.1, 123456.75, 1e-17, 0.0, 2.0 / 7}) {
        std::string s = fmt_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}
