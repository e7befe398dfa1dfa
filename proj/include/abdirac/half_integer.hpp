#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "abdirac/errors.hpp"

namespace abdirac
{
//---------------------------------------------------------------------------//
/*!
 * Exact half-integer stored as its double.
 *
 * Angular quantum numbers lambda are half-odd integers (+-1/2, +-3/2, ...);
 * keeping the doubled value as an integer makes occupation counting exact.
 */
class HalfInteger
{
  public:
    constexpr HalfInteger() = default;

    static constexpr HalfInteger from_twice(std::int64_t twice) { return HalfInteger{twice}; }

    /// Half-odd integer (2m+1)/2.
    static constexpr HalfInteger half_odd(std::int64_t m) { return HalfInteger{2 * m + 1}; }

    /// Nearest half-odd integer to x; integers round up (x -> x + 1/2).
    static HalfInteger nearest_half_odd(double x)
    {
        if (!std::isfinite(x))
            throw DomainError("nearest_half_odd: non-finite argument");
        return half_odd(static_cast<std::int64_t>(std::floor(x)));
    }

    /// Parses "5/2", "-3/2", "2.5" or "3".
    static HalfInteger parse(std::string const& text)
    {
        auto slash = text.find('/');
        std::size_t used = 0;
        try
        {
            if (slash != std::string::npos)
            {
                if (text.substr(slash + 1) != "2")
                    throw DomainError("half-integer denominator must be 2: " + text);
                auto numer = std::stoll(text.substr(0, slash), &used);
                if (used != slash)
                    throw DomainError("malformed half-integer: " + text);
                return from_twice(numer);
            }
            double value = std::stod(text, &used);
            if (used != text.size())
                throw DomainError("malformed half-integer: " + text);
            double twice = 2 * value;
            if (twice != std::round(twice))
                throw DomainError("not a half-integer: " + text);
            return from_twice(static_cast<std::int64_t>(twice));
        }
        catch (std::logic_error const&)
        {
            throw DomainError("malformed half-integer: " + text);
        }
    }

    constexpr std::int64_t twice() const { return twice_; }
    constexpr double value() const { return 0.5 * static_cast<double>(twice_); }
    constexpr bool is_half_odd() const { return (twice_ % 2) != 0; }

    constexpr HalfInteger shifted(std::int64_t by) const { return HalfInteger{twice_ + 2 * by}; }
    constexpr HalfInteger operator-() const { return HalfInteger{-twice_}; }

    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b)
    {
        return HalfInteger{a.twice_ + b.twice_};
    }
    friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b)
    {
        return HalfInteger{a.twice_ - b.twice_};
    }
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

    std::string str() const
    {
        if (twice_ % 2 == 0)
            return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

  private:
    constexpr explicit HalfInteger(std::int64_t twice) : twice_{twice} {}

    std::int64_t twice_{1};
};

inline std::ostream& operator<<(std::ostream& os, HalfInteger h)
{
    return os << h.str();
}

/// Throws unless h is a valid angular label (half-odd).
inline HalfInteger require_angular(HalfInteger h)
{
    if (!h.is_half_odd())
        throw DomainError("angular quantum number must be half-odd, got " + h.str());
    return h;
}

} // namespace abdirac
