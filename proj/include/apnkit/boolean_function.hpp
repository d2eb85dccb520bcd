#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apnkit/rational.hpp"

namespace apn {

inline constexpr int kMaxVars = 16;

/// Truth table of f : F_2^m -> F_2. Bit x of the table is f(x), where the
/// binary digits of x are (x_1, ..., x_m) with x_1 least significant.
/// Tables are packed 64 entries per word; for m < 6 only the low 2^m bits of
/// the single word are used and the rest stay zero.
class BooleanFunction {
public:
    BooleanFunction() = default;
    /// Null function on m variables.
    explicit BooleanFunction(int m);
    BooleanFunction(int m, std::vector<std::uint64_t> words);

    static BooleanFunction from_bits(int m, std::span<const std::uint8_t> bits);
    /// Six-variable fast path: the whole table in one word.
    static BooleanFunction from_word(std::uint64_t word) { return BooleanFunction(6, {word}); }

    int vars() const { return m_; }
    std::size_t size() const { return std::size_t{1} << m_; }

    bool operator()(std::uint32_t x) const { return (words_[x >> 6] >> (x & 63)) & 1; }
    void set(std::uint32_t x, bool v);

    std::span<const std::uint64_t> words() const { return words_; }
    std::uint64_t word() const { return words_[0]; }

    std::uint64_t weight() const;
    bool is_zero() const;

    BooleanFunction operator^(const BooleanFunction& o) const;
    BooleanFunction& operator^=(const BooleanFunction& o);
    BooleanFunction complement() const;

    bool operator==(const BooleanFunction&) const = default;
    std::strong_ordering operator<=>(const BooleanFunction& o) const;

    /// 2^m/4 hex characters, big-endian (bit x of the integer is f(x)).
    std::string to_hex() const;
    static BooleanFunction from_hex(std::string_view hex, int m);

    /// Affine function x -> mask.x + c.
    static BooleanFunction affine(int m, std::uint32_t mask, bool c = false);
    /// Product of the variables in `subset` (bit i of subset selects x_{i+1}).
    static BooleanFunction monomial(int m, std::uint32_t subset);

private:
    void clear_padding();

    int m_ = 0;
    std::vector<std::uint64_t> words_ = {0};
};

/// Walsh spectrum W(f, a) for a = 0 .. 2^m - 1.
using WalshSpectrum = std::vector<std::int32_t>;

/// Multiset of |W(f, a)| as (value, multiplicity) pairs, ascending in value.
using AbsMultiset = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Möbius transform on a packed table. Involution: maps a truth table to its
/// ANF coefficient table and back. Throws InvalidArgument when the word count
/// does not match m.
std::vector<std::uint64_t> mobius(std::span<const std::uint64_t> words, int m);
BooleanFunction mobius(const BooleanFunction& f);

/// ANF coefficients of f as a table indexed by monomial subset mask.
BooleanFunction anf(const BooleanFunction& f);

/// Largest |S| with a_S = 1; 0 for the null function.
int degree(const BooleanFunction& f);

WalshSpectrum walsh_transform(const BooleanFunction& f);
/// In-place fast Walsh–Hadamard butterfly (unnormalised).
void fwht(std::span<std::int32_t> values);
void fwht(std::span<std::int64_t> values);

/// Back from a spectrum to the ±1 table, which must be exactly representable.
BooleanFunction inverse_walsh(const WalshSpectrum& spectrum, int m);

/// (1/q^2) sum_a W(f,a)^r for even r >= 2.
Rational moment(int r, const BooleanFunction& f);
Rational moment(int r, const WalshSpectrum& w, int m);
/// (1/q^3) sum_a W(f,a)^4.
Rational kappa(const BooleanFunction& f);
Rational kappa(const WalshSpectrum& w, int m);

std::uint32_t linearity(const BooleanFunction& f);
std::uint32_t linearity(const WalshSpectrum& w);
std::uint32_t nonlinearity(const BooleanFunction& f);

bool is_bent(const BooleanFunction& f);
bool is_bent(const WalshSpectrum& w, int m);

/// Auto-correlation through the spectral identity (two transforms).
std::vector<std::int64_t> autocorrelation(const BooleanFunction& f);
/// Auto-correlation by the direct O(4^m) double sum.
std::vector<std::int64_t> autocorrelation_direct(const BooleanFunction& f);

AbsMultiset walsh_abs_multiset(const BooleanFunction& f);
AbsMultiset abs_multiset(const WalshSpectrum& w);
/// "v:count,v:count" in ascending value order.
std::string serialize(const AbsMultiset& ms);

/// Invertible m x m matrix over GF(2); column j is the image of e_{j+1}.
struct BitMatrix {
    int dim = 0;
    std::vector<std::uint32_t> cols;

    static BitMatrix identity(int dim);
    std::uint32_t apply(std::uint32_t x) const;
    bool invertible() const;
};

/// x -> f(Ax + b) + l.x + c. Throws InvalidArgument when A is singular.
BooleanFunction apply_affine(const BooleanFunction& f, const BitMatrix& a, std::uint32_t b,
                             std::uint32_t l, bool c);

}  // namespace apn
