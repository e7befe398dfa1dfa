#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "abdirac/errors.hpp"
#include "abdirac/params.hpp"

namespace abdirac
{
namespace detail
{
inline std::string trim(std::string_view s)
{
    auto const ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

inline void assign_key(PhysicalInput& in, std::string const& key, double value)
{
    if (key == "mass_me")
        in.mass_me = value;
    else if (key == "radius_m")
        in.radius_m = value;
    else if (key == "field_T")
        in.field_T = value;
    else if (key == "fermi_eV")
        in.fermi_eV = value;
    else
        throw UsageError("unknown config key '" + key + "'");
}
} // namespace detail

/*!
 * Parse physical inputs from either a JSON object or `key = value` lines.
 *
 * Recognized keys: mass_me, radius_m, field_T, fermi_eV. Lines starting
 * with '#' are comments.
 */
inline PhysicalInput parse_physical_input(std::string_view text)
{
    PhysicalInput in;
    auto body = detail::trim(text);
    if (!body.empty() && body.front() == '{')
    {
        nlohmann::json doc;
        try
        {
            doc = nlohmann::json::parse(body);
        }
        catch (nlohmann::json::exception const& e)
        {
            throw UsageError(std::string("config JSON: ") + e.what());
        }
        for (auto const& [key, value] : doc.items())
        {
            if (!value.is_number())
                throw UsageError("config key '" + key + "' must be a number");
            detail::assign_key(in, key, value.get<double>());
        }
    }
    else
    {
        std::istringstream lines{body};
        std::string line;
        int lineno = 0;
        while (std::getline(lines, line))
        {
            ++lineno;
            auto t = detail::trim(line);
            if (t.empty() || t.front() == '#')
                continue;
            auto eq = t.find('=');
            if (eq == std::string::npos)
                throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
            auto key = detail::trim(t.substr(0, eq));
            auto val = detail::trim(t.substr(eq + 1));
            std::size_t used = 0;
            double value = 0;
            try
            {
                value = std::stod(val, &used);
            }
            catch (std::logic_error const&)
            {
                used = 0;
            }
            if (used == 0 || used != val.size())
                throw UsageError("config line " + std::to_string(lineno) + ": bad number '" + val + "'");
            detail::assign_key(in, key, value);
        }
    }
    in.validate();
    return in;
}

inline PhysicalInput load_physical_input(std::string const& path)
{
    std::ifstream file{path};
    if (!file)
        throw UsageError("cannot open config file " + path);
    std::stringstream buf;
    buf << file.rdbuf();
    return parse_physical_input(buf.str());
}

} // namespace abdirac
