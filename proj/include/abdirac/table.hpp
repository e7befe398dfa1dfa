#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "abdirac/errors.hpp"

//---------------------------------------------------------------------------//
// Rectangular result tables with a provenance header, written as CSV
// ('#' header lines) or JSON. CSV numbers carry 17 significant digits.
//---------------------------------------------------------------------------//
namespace abdirac
{
inline constexpr char version_string[] = "1.0.0";

struct Column
{
    std::string name;
    std::string unit;  //!< "1" for pure numbers

    bool operator==(Column const&) const = default;
};

struct Scalar
{
    std::string name;
    double value;
    std::string unit;

    bool operator==(Scalar const& o) const
    {
        return name == o.name && unit == o.unit
               && (value == o.value || (std::isnan(value) && std::isnan(o.value)));
    }
};

struct ResultTable
{
    std::string title;
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<Column> columns;
    std::vector<std::vector<double>> rows;
    std::vector<Scalar> scalars;
    std::vector<std::string> notes;

    void add_row(std::vector<double> row)
    {
        if (row.size() != columns.size())
            throw std::logic_error("table '" + title + "': row has " + std::to_string(row.size())
                                   + " cells, expected " + std::to_string(columns.size()));
        rows.push_back(std::move(row));
    }
    void add_scalar(std::string name, double value, std::string unit = "1")
    {
        scalars.push_back({std::move(name), value, std::move(unit)});
    }
    void set_provenance(std::string const& key, std::string value)
    {
        for (auto& kv : provenance)
            if (kv.first == key)
            {
                kv.second = std::move(value);
                return;
            }
        provenance.emplace_back(key, std::move(value));
    }
    /// Index of a column by name; throws std::out_of_range when absent.
    std::size_t column(std::string const& name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i].name == name)
                return i;
        throw std::out_of_range("no column '" + name + "' in table '" + title + "'");
    }
    double scalar(std::string const& name) const
    {
        for (auto const& s : scalars)
            if (s.name == name)
                return s.value;
        throw std::out_of_range("no scalar '" + name + "' in table '" + title + "'");
    }
};

inline std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline double parse_number(std::string const& s)
{
    if (s == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf")
        return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size())
        throw UsageError("not a number: '" + s + "'");
    return v;
}

/*
 * Layout:
 *   # title: <title>
 *   # <key>: <value>            (provenance, in insertion order)
 *   # scalar: <name> = <value> [<unit>]
 *   # note: <text>
 *   <name> [<unit>],...
 *   rows
 */
inline std::string to_csv(ResultTable const& t)
{
    std::ostringstream os;
    os << "# title: " << t.title << '\n';
    for (auto const& [k, v] : t.provenance)
        os << "# " << k << ": " << v << '\n';
    for (auto const& s : t.scalars)
        os << "# scalar: " << s.name << " = " << format_number(s.value) << " [" << s.unit << "]\n";
    for (auto const& n : t.notes)
        os << "# note: " << n << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i].name << " [" << t.columns[i].unit << "]";
    os << '\n';
    for (auto const& row : t.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
    return os.str();
}

namespace detail
{
inline std::pair<std::string, std::string> split_unit(std::string const& cell)
{
    auto open = cell.rfind(" [");
    if (open == std::string::npos || cell.back() != ']')
        return {cell, "1"};
    return {cell.substr(0, open), cell.substr(open + 2, cell.size() - open - 3)};
}
} // namespace detail

inline ResultTable parse_csv(std::string const& text)
{
    ResultTable t;
    std::istringstream lines{text};
    std::string line;
    bool have_header = false;
    while (std::getline(lines, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.rfind("# ", 0) == 0)
        {
            auto body = line.substr(2);
            auto colon = body.find(": ");
            if (colon == std::string::npos)
                continue;
            auto key = body.substr(0, colon);
            auto value = body.substr(colon + 2);
            if (key == "title")
                t.title = value;
            else if (key == "scalar")
            {
                auto eq = value.find(" = ");
                if (eq == std::string::npos)
                    throw UsageError("malformed scalar line: " + line);
                auto [num, unit] = detail::split_unit(value.substr(eq + 3));
                t.add_scalar(value.substr(0, eq), parse_number(num), unit);
            }
            else if (key == "note")
                t.notes.push_back(value);
            else
                t.provenance.emplace_back(key, value);
            continue;
        }
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::istringstream row{line};
        std::string cell;
        while (std::getline(row, cell, ','))
            cells.push_back(cell);
        if (!have_header)
        {
            for (auto const& c : cells)
            {
                auto [name, unit] = detail::split_unit(c);
                t.columns.push_back({name, unit});
            }
            have_header = true;
            continue;
        }
        std::vector<double> values;
        for (auto const& c : cells)
            values.push_back(parse_number(c));
        if (values.size() != t.columns.size())
            throw UsageError("CSV row width does not match the header");
        t.rows.push_back(std::move(values));
    }
    if (!have_header)
        throw UsageError("CSV table has no header line");
    return t;
}

namespace detail
{
inline nlohmann::json json_number(double x)
{
    if (std::isfinite(x))
        return x;
    return format_number(x);  // JSON has no NaN or infinity
}
} // namespace detail

inline nlohmann::json to_json(ResultTable const& t)
{
    nlohmann::json j;
    j["title"] = t.title;
    j["provenance"] = nlohmann::json::object();
    for (auto const& [k, v] : t.provenance)
        j["provenance"][k] = v;
    j["columns"] = nlohmann::json::array();
    for (auto const& c : t.columns)
        j["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
    j["rows"] = nlohmann::json::array();
    for (auto const& row : t.rows)
    {
        auto r = nlohmann::json::array();
        for (double x : row)
            r.push_back(detail::json_number(x));
        j["rows"].push_back(r);
    }
    j["scalars"] = nlohmann::json::array();
    for (auto const& s : t.scalars)
        j["scalars"].push_back({{"name", s.name}, {"value", detail::json_number(s.value)}, {"unit", s.unit}});
    j["notes"] = t.notes;
    return j;
}

/// JSON text; nlohmann writes the shortest representation that round-trips.
inline std::string to_json_text(ResultTable const& t)
{
    return to_json(t).dump(2) + "\n";
}

} // namespace abdirac
