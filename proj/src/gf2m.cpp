#include "apnkit/gf2m.hpp"

#include <bit>

#include "apnkit/errors.hpp"

namespace apn {

std::uint32_t default_modulus(int m) {
    // Primitive trinomials/pentanomials, one per degree.
    static constexpr std::uint32_t kTable[17] = {
        0,      0x3,    0x7,    0xb,    0x13,   0x25,   0x43,    0x83,    0x11d,
        0x211,  0x409,  0x805,  0x1053, 0x201b, 0x4443, 0x8003,  0x1002d,
    };
    if (m < 1 || m > 16) throw InvalidArgument("field degree must be in 1..16");
    return kTable[m];
}

namespace {

// Carry-less product reduced modulo poly.
std::uint32_t polymulmod(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int m) {
    std::uint32_t r = 0;
    const std::uint32_t top = 1u << m;
    while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= poly;
    }
    return r;
}

std::uint32_t polymod(std::uint64_t a, std::uint32_t poly) {
    const int pd = std::bit_width(poly) - 1;
    for (int d = std::bit_width(a) - 1; d >= pd; --d)
        if ((a >> d) & 1) a ^= static_cast<std::uint64_t>(poly) << (d - pd);
    return static_cast<std::uint32_t>(a);
}

}  // namespace

bool is_irreducible(std::uint32_t poly) {
    const int deg = std::bit_width(poly) - 1;
    if (deg < 1) return false;
    // Trial division by every polynomial of degree 1..deg/2.
    for (std::uint32_t d = 2; static_cast<int>(std::bit_width(d)) - 1 <= deg / 2; ++d) {
        if (polymod(poly, d) == 0) return false;
    }
    return true;
}

Gf2mField::Gf2mField(int m, std::uint32_t modulus) : m_(m), modulus_(modulus) {
    if (m < 1 || m > 16) throw InvalidArgument("field degree must be in 1..16");
    if (static_cast<int>(std::bit_width(modulus)) - 1 != m) throw InvalidArgument("modulus degree does not match m");
    if (!is_irreducible(modulus)) throw InvalidArgument("modulus is reducible over GF(2)");
}

std::uint32_t Gf2mField::mul(std::uint32_t a, std::uint32_t b) const { return polymulmod(a, b, modulus_, m_); }

std::uint32_t Gf2mField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e != 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

FieldElement::FieldElement(const Gf2mField& field, std::uint32_t value) : field_(&field), value_(value) {
    if (value >= field.order()) throw InvalidArgument("field element out of range");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (!(*field_ == *o.field_)) throw InvalidArgument("field context mismatch");
    return FieldElement(*field_, value_ ^ o.value_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (!(*field_ == *o.field_)) throw InvalidArgument("field context mismatch");
    return FieldElement(*field_, field_->mul(value_, o.value_));
}

FieldElement FieldElement::pow(std::uint64_t e) const { return FieldElement(*field_, field_->pow(value_, e)); }

VectorialFunction power_function(std::uint64_t d, const Gf2mField& field) {
    std::vector<std::uint32_t> images(field.order());
    for (std::uint32_t x = 0; x < field.order(); ++x) images[x] = (x == 0 && d > 0) ? 0 : field.pow(x, d);
    return VectorialFunction(field.degree(), field.degree(), std::move(images));
}

namespace gf4 {

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    return static_cast<std::uint8_t>(polymulmod(a & 3u, b & 3u, kGf4Modulus, 2));
}

std::uint8_t cube(std::uint8_t a) { return mul(a, mul(a, a)); }

}  // namespace gf4

bool gf4_cube_expansion_check() {
    auto pair_term = [](std::uint8_t x, std::uint8_t y) {
        return gf4::mul(gf4::mul(x, y), static_cast<std::uint8_t>(x ^ y));
    };
    for (unsigned idx = 0; idx < 256; ++idx) {
        const std::uint8_t v[4] = {static_cast<std::uint8_t>(idx & 3), static_cast<std::uint8_t>((idx >> 2) & 3),
                                   static_cast<std::uint8_t>((idx >> 4) & 3), static_cast<std::uint8_t>(idx >> 6)};
        std::uint8_t lhs = gf4::cube(static_cast<std::uint8_t>(v[0] ^ v[1] ^ v[2] ^ v[3]));
        std::uint8_t rhs = 0;
        for (int i = 0; i < 4; ++i) {
            std::uint8_t c = gf4::cube(v[i]);
            if (c > 1) return false;
            rhs ^= c;
            for (int j = i + 1; j < 4; ++j) {
                std::uint8_t t = pair_term(v[i], v[j]);
                if (t > 1) return false;
                rhs ^= t;
            }
        }
        if (lhs != rhs || lhs > 1) return false;
        if ((lhs == 1) != ((v[0] ^ v[1] ^ v[2] ^ v[3]) != 0)) return false;
    }
    return true;
}

}  // namespace apn
