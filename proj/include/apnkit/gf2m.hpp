#pragma once

#include <cstdint>

#include "apnkit/vectorial.hpp"

namespace apn {

/// Default moduli: x^6+x+1 for GF(64), x^2+x+1 for GF(4).
inline constexpr std::uint32_t kDefaultModulus6 = 0x43;
inline constexpr std::uint32_t kGf4Modulus = 0x7;

/// Primitive polynomial per degree 1..16 used when no modulus is given.
std::uint32_t default_modulus(int m);

/// GF(2^m) in polynomial basis for a fixed irreducible modulus (bit m set).
class Gf2mField {
public:
    Gf2mField(int m, std::uint32_t modulus);
    explicit Gf2mField(int m) : Gf2mField(m, default_modulus(m)) {}

    int degree() const { return m_; }
    std::uint32_t modulus() const { return modulus_; }
    std::uint32_t order() const { return 1u << m_; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t square(std::uint32_t a) const { return mul(a, a); }

    bool operator==(const Gf2mField&) const = default;

private:
    int m_;
    std::uint32_t modulus_;
};

/// Element tied to its field; arithmetic between different fields throws.
class FieldElement {
public:
    FieldElement(const Gf2mField& field, std::uint32_t value);

    std::uint32_t value() const { return value_; }
    const Gf2mField& field() const { return *field_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement pow(std::uint64_t e) const;
    bool operator==(const FieldElement& o) const { return value_ == o.value_ && *field_ == *o.field_; }

private:
    const Gf2mField* field_;
    std::uint32_t value_;
};

bool is_irreducible(std::uint32_t poly);

/// x -> x^d over GF(2^m) as an (m,m)-function; 0^d = 0 for d > 0, 0^0 = 1.
VectorialFunction power_function(std::uint64_t d, const Gf2mField& field);
inline VectorialFunction power_function(std::uint64_t d, int m) { return power_function(d, Gf2mField(m)); }

/// GF(4) = GF(2)[w]/(w^2+w+1); elements are 0, 1, w = 2, w^2 = 3.
namespace gf4 {
std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t cube(std::uint8_t a);
}  // namespace gf4

/// Exhaustive check over GF(4)^4 of
///   (a+b+c+d)^3 = a^3+b^3+c^3+d^3 + sum_{pairs} xy(x+y)
/// together with every summand lying in GF(2).
bool gf4_cube_expansion_check();

}  // namespace apn
