#include <doctest.h>

#include <random>
#include <set>

#include "apnkit/affine.hpp"
#include "apnkit/gf2_linalg.hpp"
#include "apnkit/gf2m.hpp"
#include "apnkit/invariants.hpp"
#include "apnkit/textio.hpp"
#include "oracles.hpp"

using namespace apn;

namespace {

// Homogeneous quadratics whose Walsh support has exactly four points of
// magnitude 2^(m-1): the rank-2 ones, found without any linear algebra.
std::set<std::string> rank2_by_spectrum(int m) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    std::set<std::string> out;
    const std::size_t q = std::size_t{1} << m;
    for (std::uint32_t mask = 1; mask < (1u << pairs.size()); ++mask) {
        std::vector<int> t(q, 0);
        for (std::size_t x = 0; x < q; ++x)
            for (std::size_t k = 0; k < pairs.size(); ++k)
                if ((mask >> k) & 1) t[x] ^= ((x >> pairs[k].first) & (x >> pairs[k].second)) & 1;
        const auto w = oracle::walsh(t);
        int support = 0;
        bool flat = true;
        for (auto v : w)
            if (v) {
                ++support;
                flat = flat && std::labs(v) == static_cast<long>(q / 2);
            }
        if (support == 4 && flat) {
            BooleanFunction f(m);
            for (std::uint32_t x = 0; x < q; ++x) f.set(x, t[x]);
            out.insert(f.to_hex());
        }
    }
    return out;
}

}  // namespace

TEST_CASE("rank-2 quadratic sets") {
    // Number of rank-2 alternating forms: (2^m - 1)(2^m - 2) / 6.
    for (int m : {3, 4, 5, 6}) {
        const auto& set = rank2_quadratics(m);
        const std::size_t q = std::size_t{1} << m;
        CHECK(set.members.size() == (q - 1) * (q - 2) / 6);
        std::set<std::string> got;
        for (const auto& f : set.members) got.insert(f.to_hex());
        CHECK(got.size() == set.members.size());
        if (m <= 5) CHECK(got == rank2_by_spectrum(m));
    }
    CHECK(rank2_quadratics(6).members.size() == 651);
}

TEST_CASE("invariants survive affine equivalence") {
    Rng rng(21);
    const auto fs = read_vectorial_file(oracle::data("corpus/ten_functions_6.txt"), 6);
    REQUIRE(fs.size() == 10);
    InvariantCache cache;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& F = fs[i];
        const auto base_j = cache.j_prime(F).digest;
        for (int rep = 0; rep < 3; ++rep) {
            const auto G = apply_ea(F, EaTransform::random(6, 6, rng));
            CHECK(cache.j_prime(G).digest == base_j);
            const auto f = component(F, 1 + static_cast<std::uint32_t>(rng() % 63));
            const auto g = random_affine_variant(f, rng);
            CHECK(digest_w(g) == digest_w(f));
            CHECK(inv_I(g).digest == inv_I(f).digest);
        }
    }
    CHECK(inv_Jprime(fs[0]).digest == cache.j_prime(fs[0]).digest);
}

TEST_CASE("I separates the bent function from a quadratic of rank 4 plus noise") {
    const auto bent = BooleanFunction::from_hex("8777788878887888", 6);
    const auto other = bent ^ BooleanFunction::monomial(6, 0b000111);
    CHECK(inv_I(bent).inner.size() == 651);
    CHECK(inv_I(bent).digest != inv_I(other).digest);
}

TEST_CASE("parallel rank equals the serial rank") {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t r = 1 + rng() % 200, c = 1 + rng() % 200;
        Gf2Matrix a(r, c);
        const int density = 1 + static_cast<int>(rng() % 8);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (rng() % static_cast<unsigned>(density) == 0) a.set(i, j);
        // Plant dependencies.
        for (std::size_t i = 2; i < r; i += 3)
            for (std::size_t j = 0; j < c; ++j) a.set(i, j, a.get(i - 1, j) ^ a.get(i - 2, j));
        CHECK(a.rank() == reference::gf2_rank(a));
    }
    Gf2Matrix id(130, 130);
    for (std::size_t i = 0; i < 130; ++i) id.set(i, i);
    CHECK(id.rank() == 130);
}

TEST_CASE("incidence rank fast path equals the plain construction") {
    std::mt19937_64 rng(23);
    for (int dim : {4, 6, 7, 9}) {
        const std::uint32_t n = 1u << dim;
        std::vector<std::uint32_t> set;
        for (std::uint32_t v = 0; v < n; ++v)
            if (rng() % 5 == 0) set.push_back(v);
        Gf2Matrix plain(n, n);
        for (std::uint32_t u = 0; u < n; ++u)
            for (auto s : set) plain.set(u, u ^ s);
        CHECK(incidence_rank(set, dim) == reference::gf2_rank(plain));
    }
}

TEST_CASE("CCZ signature: EA invariance and the CCZ-equivalent pair") {
    const auto kim = read_vectorial_file(oracle::data("corpus/kim_u7.txt"), 6).at(0);
    const auto perm = read_vectorial_file(oracle::data("corpus/ccz_perm_type_1.75_4.txt"), 6).at(0);
    const auto sk = ccz_signature(kim);
    CHECK(sk == ccz_signature(perm));
    Rng rng(24);
    for (int rep = 0; rep < 3; ++rep) CHECK(ccz_signature(apply_ea(kim, EaTransform::random(6, 6, rng))) == sk);
    const auto x3 = power_function(3, 6);
    const auto s3 = ccz_signature(x3);
    CHECK(s3.differential_spectrum.at(2) == 63 * 32);
    CHECK(s3.differential_spectrum.at(0) == 63 * 32);
    CHECK_THROWS(ccz_signature(power_function(3, 7)));
}
