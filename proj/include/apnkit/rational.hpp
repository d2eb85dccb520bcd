#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "apnkit/bitops.hpp"

namespace apn {

/// Exact rational with 128-bit numerator and denominator, always reduced and
/// with a positive denominator. Spectral quantities never leave this type, so
/// κ levels can be compared for equality.
class Rational {
public:
    constexpr Rational() = default;
    Rational(i128 num, i128 den = 1);

    i128 num() const { return num_; }
    i128 den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    bool operator==(const Rational& o) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    /// "7/4", "-3", "0".
    std::string fraction() const;
    /// Exact decimal when the denominator is 2^a 5^b ("1.75", "4.0"); otherwise
    /// rounded to `max_digits` fractional digits.
    std::string decimal(int max_digits = 12) const;

    /// Accepts "p/q", integers and finite decimals ("2.3125"). Throws ParseError.
    static Rational parse(std::string_view text);

private:
    i128 num_ = 0;
    i128 den_ = 1;
};

std::string to_string(i128 v);

}  // namespace apn
