#include "apnkit/rational.hpp"

#include <algorithm>
#include <cctype>

#include "apnkit/errors.hpp"

namespace apn {

namespace {

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string s;
    while (u != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

Rational::Rational(i128 num, i128 den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

Rational Rational::operator+(const Rational& o) const {
    i128 g = gcd128(den_, o.den_);
    return Rational(num_ * (o.den_ / g) + o.num_ * (den_ / g), den_ / g * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    i128 g1 = gcd128(num_, o.den_);
    i128 g2 = gcd128(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw InvalidArgument("division by zero rational");
    return *this * Rational(o.den_, o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    i128 lhs = num_ * o.den_;
    i128 rhs = o.num_ * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::fraction() const {
    if (den_ == 1) return to_string(num_);
    return to_string(num_) + "/" + to_string(den_);
}

std::string Rational::decimal(int max_digits) const {
    i128 d = den_;
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    bool exact = d == 1;

    i128 n = abs128(num_);
    std::string out = num_ < 0 ? "-" : "";
    out += to_string(n / den_);
    out += '.';
    i128 rem = n % den_;
    int digits = 0;
    std::string frac;
    do {
        rem *= 10;
        frac.push_back(static_cast<char>('0' + static_cast<int>(rem / den_)));
        rem %= den_;
        ++digits;
    } while (rem != 0 && (exact || digits < max_digits));
    return out + frac;
}

Rational Rational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto parse_int = [&](std::string_view s) -> i128 {
        s = trim(s);
        bool neg = false;
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            neg = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty() || s.size() > 30) throw ParseError("malformed rational '" + std::string(text) + "'");
        i128 v = 0;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("malformed rational '" + std::string(text) + "'");
            v = v * 10 + (c - '0');
        }
        return neg ? -v : v;
    };

    std::string_view s = trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        i128 den = parse_int(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(parse_int(s.substr(0, slash)), den);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        bool neg = !whole.empty() && whole.front() == '-';
        if (frac.size() > 24) throw ParseError("too many decimals in '" + std::string(text) + "'");
        i128 scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        i128 w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
        i128 f = frac.empty() ? 0 : parse_int(frac);
        if (!frac.empty() && (frac.front() == '-' || frac.front() == '+'))
            throw ParseError("malformed rational '" + std::string(text) + "'");
        i128 num = abs128(w) * scale + f;
        return Rational(neg ? -num : num, scale);
    }
    return Rational(parse_int(s));
}

}  // namespace apn
