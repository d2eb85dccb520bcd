#include "apnkit/boolean_function.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdlib>

#include "apnkit/bitops.hpp"
#include "apnkit/errors.hpp"

namespace apn {

namespace {

std::size_t word_count(int m) { return m <= 6 ? 1 : std::size_t{1} << (m - 6); }

std::uint64_t padding_mask(int m) {
    return m >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1u << m)) - 1;
}

void check_vars(int m) {
    if (m < 1 || m > kMaxVars)
        throw InvalidArgument("number of variables must be in 1..16, got " + std::to_string(m));
}

// Masks selecting the low half of each 2^(k+1)-bit block, k = 0..5.
constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
};

template <typename T>
void fwht_impl(std::span<T> v) {
    const std::size_t n = v.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                T a = v[j];
                T b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

}  // namespace

BooleanFunction::BooleanFunction(int m) : m_(m) {
    check_vars(m);
    words_.assign(word_count(m), 0);
}

BooleanFunction::BooleanFunction(int m, std::vector<std::uint64_t> words) : m_(m), words_(std::move(words)) {
    check_vars(m);
    if (words_.size() != word_count(m))
        throw InvalidArgument("truth table has " + std::to_string(words_.size()) + " words, expected " +
                              std::to_string(word_count(m)));
    if ((words_[0] & ~padding_mask(m)) != 0)
        throw InvalidArgument("truth table has bits set beyond 2^m entries");
}

BooleanFunction BooleanFunction::from_bits(int m, std::span<const std::uint8_t> bits) {
    BooleanFunction f(m);
    if (bits.size() != f.size())
        throw InvalidArgument("expected " + std::to_string(f.size()) + " table entries, got " +
                              std::to_string(bits.size()));
    for (std::size_t x = 0; x < bits.size(); ++x) f.set(static_cast<std::uint32_t>(x), bits[x] & 1);
    return f;
}

void BooleanFunction::set(std::uint32_t x, bool v) {
    std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (v)
        words_[x >> 6] |= bit;
    else
        words_[x >> 6] &= ~bit;
}

void BooleanFunction::clear_padding() { words_[0] &= padding_mask(m_); }

std::uint64_t BooleanFunction::weight() const {
    std::uint64_t w = 0;
    for (auto word : words_) w += static_cast<std::uint64_t>(std::popcount(word));
    return w;
}

bool BooleanFunction::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

BooleanFunction BooleanFunction::operator^(const BooleanFunction& o) const {
    BooleanFunction r = *this;
    r ^= o;
    return r;
}

BooleanFunction& BooleanFunction::operator^=(const BooleanFunction& o) {
    if (o.m_ != m_) throw InvalidArgument("adding Boolean functions with different numbers of variables");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

BooleanFunction BooleanFunction::complement() const {
    BooleanFunction r = *this;
    for (auto& w : r.words_) w = ~w;
    r.clear_padding();
    return r;
}

std::strong_ordering BooleanFunction::operator<=>(const BooleanFunction& o) const {
    if (auto c = m_ <=> o.m_; c != 0) return c;
    for (std::size_t i = words_.size(); i-- > 0;) {
        if (auto c = words_[i] <=> o.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string BooleanFunction::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::size_t nibbles = std::max<std::size_t>(1, size() / 4);
    std::string out(nibbles, '0');
    for (std::size_t k = 0; k < nibbles; ++k) {
        std::size_t bitpos = 4 * k;
        unsigned nib = static_cast<unsigned>((words_[bitpos >> 6] >> (bitpos & 63)) & 0xf);
        out[nibbles - 1 - k] = kDigits[nib];
    }
    return out;
}

BooleanFunction BooleanFunction::from_hex(std::string_view hex, int m) {
    BooleanFunction f(m);
    std::size_t nibbles = std::max<std::size_t>(1, f.size() / 4);
    if (hex.size() != nibbles)
        throw ParseError("truth table needs " + std::to_string(nibbles) + " hex characters, got " +
                         std::to_string(hex.size()));
    for (std::size_t k = 0; k < nibbles; ++k) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[nibbles - 1 - k])));
        unsigned nib;
        if (c >= '0' && c <= '9')
            nib = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            nib = static_cast<unsigned>(c - 'a' + 10);
        else
            throw ParseError(std::string("invalid hex character '") + hex[nibbles - 1 - k] + "'");
        std::size_t bitpos = 4 * k;
        f.words_[bitpos >> 6] |= static_cast<std::uint64_t>(nib) << (bitpos & 63);
    }
    if ((f.words_[0] & ~padding_mask(m)) != 0) throw ParseError("truth table value exceeds 2^m bits");
    return f;
}

BooleanFunction BooleanFunction::affine(int m, std::uint32_t mask, bool c) {
    BooleanFunction f(m);
    for (std::uint32_t x = 0; x < f.size(); ++x) f.set(x, dot(mask, x) ^ static_cast<unsigned>(c));
    return f;
}

BooleanFunction BooleanFunction::monomial(int m, std::uint32_t subset) {
    BooleanFunction f(m);
    for (std::uint32_t x = 0; x < f.size(); ++x) f.set(x, (x & subset) == subset);
    return f;
}

std::vector<std::uint64_t> mobius(std::span<const std::uint64_t> words, int m) {
    check_vars(m);
    if (words.size() != word_count(m))
        throw InvalidArgument("Möbius transform: table length does not match m = " + std::to_string(m));
    std::vector<std::uint64_t> t(words.begin(), words.end());
    const int inner = std::min(m, 6);
    for (auto& w : t) {
        for (int k = 0; k < inner; ++k) w ^= (w & kLowHalf[k]) << (1u << k);
    }
    for (std::size_t h = 1; h < t.size(); h <<= 1) {
        for (std::size_t i = 0; i < t.size(); i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) t[j + h] ^= t[j];
        }
    }
    return t;
}

BooleanFunction mobius(const BooleanFunction& f) { return BooleanFunction(f.vars(), mobius(f.words(), f.vars())); }

BooleanFunction anf(const BooleanFunction& f) { return mobius(f); }

int degree(const BooleanFunction& f) {
    auto coeffs = mobius(f.words(), f.vars());
    int best = 0;
    for (std::size_t wi = 0; wi < coeffs.size(); ++wi) {
        std::uint64_t w = coeffs[wi];
        // Monomials in word wi share the high index bits wi << 6.
        int high = std::popcount(static_cast<std::uint64_t>(wi));
        while (w != 0) {
            int bit = std::countr_zero(w);
            best = std::max(best, high + std::popcount(static_cast<unsigned>(bit)));
            w &= w - 1;
        }
    }
    return best;
}

void fwht(std::span<std::int32_t> values) { fwht_impl(values); }
void fwht(std::span<std::int64_t> values) { fwht_impl(values); }

WalshSpectrum walsh_transform(const BooleanFunction& f) {
    WalshSpectrum w(f.size());
    for (std::uint32_t x = 0; x < w.size(); ++x) w[x] = f(x) ? -1 : 1;
    fwht(std::span<std::int32_t>(w));
    return w;
}

BooleanFunction inverse_walsh(const WalshSpectrum& spectrum, int m) {
    if (spectrum.size() != (std::size_t{1} << m)) throw InvalidArgument("spectrum length does not match m");
    std::vector<std::int64_t> v(spectrum.begin(), spectrum.end());
    fwht(std::span<std::int64_t>(v));
    BooleanFunction f(m);
    const auto q = static_cast<std::int64_t>(v.size());
    for (std::uint32_t x = 0; x < v.size(); ++x) {
        if (v[x] == q)
            f.set(x, false);
        else if (v[x] == -q)
            f.set(x, true);
        else
            throw InvalidArgument("sequence is not the Walsh spectrum of a Boolean function");
    }
    return f;
}

Rational moment(int r, const WalshSpectrum& w, int m) {
    if (r < 2 || r % 2 != 0) throw InvalidArgument("spectral moments are defined here for even r >= 2 only");
    if (r * m > 120) throw InvalidArgument("moment order too large for 128-bit accumulation");
    u128 sum = 0;
    for (auto c : w) {
        u128 a = static_cast<u128>(c < 0 ? -static_cast<std::int64_t>(c) : c);
        u128 p = 1;
        for (int i = 0; i < r; ++i) p *= a;
        sum += p;
    }
    return Rational(static_cast<i128>(sum), static_cast<i128>(1) << (2 * m));
}

Rational moment(int r, const BooleanFunction& f) { return moment(r, walsh_transform(f), f.vars()); }

Rational kappa(const WalshSpectrum& w, int m) {
    return moment(4, w, m) / Rational(static_cast<i128>(1) << m);
}

Rational kappa(const BooleanFunction& f) { return kappa(walsh_transform(f), f.vars()); }

std::uint32_t linearity(const WalshSpectrum& w) {
    std::uint32_t best = 0;
    for (auto c : w) best = std::max(best, static_cast<std::uint32_t>(std::abs(c)));
    return best;
}

std::uint32_t linearity(const BooleanFunction& f) { return linearity(walsh_transform(f)); }

std::uint32_t nonlinearity(const BooleanFunction& f) {
    return static_cast<std::uint32_t>(f.size() / 2) - linearity(f) / 2;
}

bool is_bent(const WalshSpectrum& w, int m) {
    if (m % 2 != 0) return false;
    const std::int32_t root = std::int32_t{1} << (m / 2);
    return std::all_of(w.begin(), w.end(), [root](std::int32_t c) { return c == root || c == -root; });
}

bool is_bent(const BooleanFunction& f) { return is_bent(walsh_transform(f), f.vars()); }

std::vector<std::int64_t> autocorrelation(const BooleanFunction& f) {
    auto w = walsh_transform(f);
    std::vector<std::int64_t> sq(w.size());
    for (std::size_t a = 0; a < w.size(); ++a) sq[a] = static_cast<std::int64_t>(w[a]) * w[a];
    fwht(std::span<std::int64_t>(sq));
    const auto q = static_cast<std::int64_t>(w.size());
    for (auto& v : sq) v /= q;
    return sq;
}

std::vector<std::int64_t> autocorrelation_direct(const BooleanFunction& f) {
    std::vector<std::int64_t> out(f.size(), 0);
    for (std::uint32_t t = 0; t < f.size(); ++t) {
        std::int64_t s = 0;
        for (std::uint32_t x = 0; x < f.size(); ++x) s += (f(x) ^ f(x ^ t)) ? -1 : 1;
        out[t] = s;
    }
    return out;
}

AbsMultiset abs_multiset(const WalshSpectrum& w) {
    std::map<std::uint32_t, std::uint32_t> counts;
    for (auto c : w) ++counts[static_cast<std::uint32_t>(std::abs(c))];
    return AbsMultiset(counts.begin(), counts.end());
}

AbsMultiset walsh_abs_multiset(const BooleanFunction& f) { return abs_multiset(walsh_transform(f)); }

std::string serialize(const AbsMultiset& ms) {
    std::string out;
    for (auto [v, n] : ms) {
        if (!out.empty()) out += ',';
        out += std::to_string(v) + ':' + std::to_string(n);
    }
    return out;
}

BitMatrix BitMatrix::identity(int dim) {
    BitMatrix a{dim, std::vector<std::uint32_t>(static_cast<std::size_t>(dim))};
    for (int j = 0; j < dim; ++j) a.cols[static_cast<std::size_t>(j)] = 1u << j;
    return a;
}

std::uint32_t BitMatrix::apply(std::uint32_t x) const {
    std::uint32_t y = 0;
    for (int j = 0; j < dim; ++j)
        if ((x >> j) & 1) y ^= cols[static_cast<std::size_t>(j)];
    return y;
}

bool BitMatrix::invertible() const {
    std::vector<std::uint32_t> v = cols;
    int rank = 0;
    for (int bit = 0; bit < dim; ++bit) {
        auto pivot = std::find_if(v.begin() + rank, v.end(), [bit](std::uint32_t c) { return (c >> bit) & 1; });
        if (pivot == v.end()) continue;
        std::iter_swap(v.begin() + rank, pivot);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (i != static_cast<std::size_t>(rank) && ((v[i] >> bit) & 1)) v[i] ^= v[static_cast<std::size_t>(rank)];
        ++rank;
    }
    return rank == dim;
}

BooleanFunction apply_affine(const BooleanFunction& f, const BitMatrix& a, std::uint32_t b, std::uint32_t l,
                             bool c) {
    if (a.dim != f.vars()) throw InvalidArgument("affine map dimension does not match the function");
    if (!a.invertible()) throw InvalidArgument("affine map is not invertible");
    BooleanFunction g(f.vars());
    for (std::uint32_t x = 0; x < f.size(); ++x)
        g.set(x, f(a.apply(x) ^ b) ^ dot(l, x) ^ static_cast<unsigned>(c));
    return g;
}

}  // namespace apn
