#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "dyext/rational.hpp"

namespace dyext {

/// Exact number numerator / 2^exponent, kept in canonical form: the
/// numerator is odd, or zero with exponent zero. Arithmetic throws
/// std::overflow_error instead of wrapping.
class DyadicRational {
public:
    constexpr DyadicRational() = default;
    DyadicRational(std::int64_t numerator, unsigned exponent = 0);

    /// Throws PreconditionError when the value is not dyadic or does not fit.
    static DyadicRational from_rational(const Rational& value);
    /// Accepts `p/2^k`, an integer, or `p/q` with q a power of two.
    static DyadicRational parse(std::string_view text);

    std::int64_t numerator() const noexcept { return numerator_; }
    unsigned exponent() const noexcept { return exponent_; }

    bool is_zero() const noexcept { return numerator_ == 0; }
    int sign() const noexcept { return (numerator_ > 0) - (numerator_ < 0); }

    /// Smallest k such that value * 2^k is an integer (the exponent).
    unsigned precision() const noexcept { return exponent_; }

    Rational to_rational() const;
    operator Rational() const { return to_rational(); }  // NOLINT(google-explicit-constructor)
    double to_double() const;

    /// Bit-exact `p/2^k` form.
    std::string str() const;

    DyadicRational operator-() const;
    DyadicRational abs() const { return numerator_ < 0 ? -*this : *this; }
    DyadicRational half() const;

    friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
    friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b);
    friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b);

    DyadicRational& operator+=(const DyadicRational& o) { return *this = *this + o; }
    DyadicRational& operator-=(const DyadicRational& o) { return *this = *this - o; }
    DyadicRational& operator*=(const DyadicRational& o) { return *this = *this * o; }

    friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

    friend std::ostream& operator<<(std::ostream& os, const DyadicRational& d) { return os << d.str(); }

private:
    __extension__ typedef __int128 wide_t;
    static DyadicRational from_wide(wide_t numerator, unsigned exponent);

    std::int64_t numerator_ = 0;
    unsigned exponent_ = 0;
};

}  // namespace dyext
