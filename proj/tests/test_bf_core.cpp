#include <doctest.h>

#include <random>

#include "apnkit/affine.hpp"
#include "apnkit/errors.hpp"
#include "apnkit/kernels.hpp"
#include "apnkit/rational.hpp"
#include "oracles.hpp"

using namespace apn;

namespace {
BooleanFunction random_bf(int m, std::mt19937_64& rng) {
    BooleanFunction f(m);
    for (std::uint32_t x = 0; x < f.size(); ++x) f.set(x, rng() & 1);
    return f;
}
}  // namespace

TEST_CASE("rational arithmetic stays exact and reduced") {
    const Rational a(7, 4), b(-3, 6);
    CHECK(b == Rational(-1, 2));
    CHECK((a + b) == Rational(5, 4));
    CHECK((a * b) == Rational(-7, 8));
    CHECK((a / b) == Rational(-7, 2));
    CHECK(a.fraction() == "7/4");
    CHECK(a.decimal() == "1.75");
    CHECK(Rational(4).decimal() == "4.0");
    CHECK(Rational::parse("2.3125") == Rational(37, 16));
    CHECK(Rational::parse("31/16") == Rational(31, 16));
    CHECK(Rational::parse("-10") == Rational(-10));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), InvalidArgument);
    CHECK_THROWS_AS(Rational::parse("x/2"), ParseError);
}

TEST_CASE("hex round trip is big-endian with x1 as the low bit") {
    BooleanFunction f(4);
    f.set(0, true);
    CHECK(f.to_hex() == "0001");
    f.set(15, true);
    CHECK(f.to_hex() == "8001");
    CHECK(BooleanFunction::from_hex("8001", 4) == f);
    std::mt19937_64 rng(1);
    for (int m = 2; m <= 9; ++m) {
        const auto g = random_bf(m, rng);
        CHECK(BooleanFunction::from_hex(g.to_hex(), m) == g);
    }
    CHECK_THROWS(BooleanFunction::from_hex("123", 4));
}

TEST_CASE("Walsh transform matches the direct sum") {
    std::mt19937_64 rng(2);
    for (int m = 1; m <= 9; ++m)
        for (int rep = 0; rep < 3; ++rep) {
            const auto f = random_bf(m, rng);
            const auto w = walsh_transform(f);
            const auto expect = oracle::walsh(oracle::truth(f));
            REQUIRE(w.size() == expect.size());
            for (std::size_t a = 0; a < w.size(); ++a) CHECK(w[a] == expect[a]);
            const auto naive = reference::walsh_naive(f);
            CHECK(std::equal(naive.begin(), naive.end(), w.begin()));
            CHECK(inverse_walsh(w, m) == f);
        }
}

TEST_CASE("Parseval holds for every function") {
    std::mt19937_64 rng(3);
    for (int m = 2; m <= 10; ++m) {
        const auto w = walsh_transform(random_bf(m, rng));
        long long s = 0;
        for (auto v : w) s += static_cast<long long>(v) * v;
        CHECK(s == (1ll << (2 * m)));
        CHECK(moment(2, w, m) == Rational(1));
    }
}

TEST_CASE("ANF and degree agree with subset sums") {
    std::mt19937_64 rng(4);
    for (int m = 1; m <= 8; ++m) {
        const auto f = random_bf(m, rng);
        const auto a = anf(f);
        const auto expect = oracle::anf(oracle::truth(f));
        for (std::uint32_t s = 0; s < f.size(); ++s) CHECK(a(s) == (expect[s] != 0));
        CHECK(mobius(a) == f);
        CHECK(degree(f) == oracle::degree(oracle::truth(f)));
    }
    CHECK(degree(BooleanFunction(5)) == 0);
    CHECK(degree(BooleanFunction::monomial(6, 0b101101)) == 4);
    CHECK(degree(BooleanFunction::affine(6, 0b110, true)) == 1);
}

TEST_CASE("kappa and moments from their definitions") {
    std::mt19937_64 rng(5);
    for (int m = 2; m <= 8; ++m) {
        const auto f = random_bf(m, rng);
        const auto w = oracle::walsh(oracle::truth(f));
        long long s4 = 0, s6 = 0;
        for (auto v : w) {
            s4 += static_cast<long long>(v) * v * v * v;
            s6 += static_cast<long long>(v) * v * v * v * v * v;
        }
        const i128 q = i128{1} << m;
        CHECK(kappa(f) == Rational(s4, q * q * q));
        CHECK(moment(4, f) == Rational(s4, q * q));
        CHECK(moment(6, f) == Rational(s6, q * q));
    }
    // Bent: |W| = 8 everywhere at m = 6, so kappa = 64 * 8^4 / 64^3 = 1.
    const auto bent = BooleanFunction::from_hex("8777788878887888", 6);
    CHECK(is_bent(bent));
    CHECK(kappa(bent) == Rational(1));
    CHECK(serialize(walsh_abs_multiset(bent)) == "8:64");
    CHECK(nonlinearity(bent) == 28);
    // Affine: one coefficient of magnitude q, kappa = q.
    CHECK(kappa(BooleanFunction::affine(6, 5)) == Rational(64));
    CHECK_THROWS_AS(moment(3, bent), InvalidArgument);
}

TEST_CASE("autocorrelation by spectrum equals the direct sum") {
    std::mt19937_64 rng(6);
    for (int m = 2; m <= 8; ++m) {
        const auto f = random_bf(m, rng);
        const auto t = oracle::truth(f);
        const auto ac = autocorrelation(f);
        CHECK(ac == autocorrelation_direct(f));
        for (std::uint32_t u = 0; u < f.size(); ++u) {
            long s = 0;
            for (std::uint32_t x = 0; x < f.size(); ++x) s += (t[x] ^ t[x ^ u]) ? -1 : 1;
            CHECK(ac[u] == s);
        }
    }
}

TEST_CASE("affine equivalence preserves degree, |W| multiset and kappa") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        const int m = 3 + static_cast<int>(rng() % 5);
        const auto f = random_bf(m, rng);
        const auto g = random_affine_variant(f, rng);
        CHECK(walsh_abs_multiset(g) == walsh_abs_multiset(f));
        CHECK(kappa(g) == kappa(f));
        if (degree(f) >= 2) CHECK(degree(g) == degree(f));
    }
    BitMatrix singular{3, {1, 2, 3}};
    CHECK_THROWS_AS(apply_affine(BooleanFunction(3), singular, 0, 0, false), InvalidArgument);
}
