#include <doctest.h>

#include <random>
#include <set>

#include "apnkit/errors.hpp"
#include "apnkit/extension.hpp"
#include "apnkit/gf2m.hpp"
#include "apnkit/kernels.hpp"
#include "apnkit/textio.hpp"
#include "oracles.hpp"

using namespace apn;

namespace {

std::vector<std::array<std::uint32_t, 4>> quads_by_subsets(const VectorialFunction& f) {
    std::vector<std::array<std::uint32_t, 4>> out;
    const auto q = static_cast<std::uint32_t>(f.size());
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = a + 1; b < q; ++b)
            for (std::uint32_t c = b + 1; c < q; ++c)
                for (std::uint32_t d = c + 1; d < q; ++d)
                    if ((a ^ b ^ c ^ d) == 0 && (f(a) ^ f(b) ^ f(c) ^ f(d)) == 0) out.push_back({a, b, c, d});
    return out;
}

// Every g : F_2^m -> GF(4) by brute force; keeps those with (F, g) APN.
std::set<VectorialFunction> completions_by_brute_force(const VectorialFunction& f) {
    std::set<VectorialFunction> out;
    const std::size_t q = f.size();
    std::uint64_t total = std::uint64_t{1} << (2 * q);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint32_t> img(q);
        for (std::size_t x = 0; x < q; ++x) img[x] = f(static_cast<std::uint32_t>(x)) | (((code >> (2 * x)) & 3) << f.out_dim());
        if (oracle::delta(img, std::size_t{1} << (f.out_dim() + 2)) == 2)
            out.insert(VectorialFunction(f.in_dim(), f.out_dim() + 2, img));
    }
    return out;
}

}  // namespace

TEST_CASE("quadruple set equals brute-force 4-subset search") {
    std::mt19937_64 rng(31);
    for (auto [m, n] : {std::pair{4, 2}, {5, 3}, {4, 1}}) {
        std::vector<std::uint32_t> img(std::size_t{1} << m);
        for (auto& y : img) y = static_cast<std::uint32_t>(rng() % (1u << n));
        const VectorialFunction f(m, n, img);
        const auto qs = quadruple_set(f);
        auto expect = quads_by_subsets(f);
        auto got = qs.quads;
        std::sort(got.begin(), got.end());
        std::sort(expect.begin(), expect.end());
        CHECK(got == expect);
    }
    CHECK(quadruple_set(power_function(3, 6)).quads.empty());   // APN: no zero 2-flat
}

TEST_CASE("stored 2-flats against the moment count") {
    // A non-trivial ordered solution of the 4-term system has four distinct
    // points, and each 2-flat gives 4! orderings, so (N4 - T4)/4! = |Q_F|.
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 3 + rep % 2, n = 1 + rep % 4;
        std::vector<std::uint32_t> img(std::size_t{1} << m);
        for (auto& y : img) y = static_cast<std::uint32_t>(rng() % (1u << n));
        const VectorialFunction f(m, n, img);
        CHECK(q_r(f, 4) == static_cast<i128>(quads_by_subsets(f).size()));
        CHECK(q_r(f, 4) == static_cast<i128>(quadruple_set(f).quads.size()));
    }
}

TEST_CASE("delta bound") {
    CHECK(delta_bound(6, 4) == 8);
    CHECK(delta_bound(6, 3) == 16);
    CHECK(delta_bound(6, 2) == 32);
    CHECK(delta_bound(6, 6) == 2);
    // Truncating an APN function never exceeds the bound.
    for (int n = 1; n <= 5; ++n) CHECK(delta_filter(truncate(power_function(3, 6), n)));
}

TEST_CASE("affine system layout") {
    const auto f = truncate(power_function(3, 6), 4);
    const auto qs = quadruple_set(f);
    const auto sys = build_system(qs);
    CHECK(sys.num_vars == 64 * 65 / 2);
    CHECK(sys.equations() == qs.quads.size());
    std::set<std::size_t> vidx;
    for (std::uint32_t x = 0; x < 64; ++x)
        for (std::uint32_t y = x + 1; y < 64; ++y) {
            const auto v = sys.v_index(x, y);
            CHECK(v == sys.v_index(y, x));
            CHECK(v >= 64);
            CHECK(v < sys.num_vars);
            vidx.insert(v);
        }
    CHECK(vidx.size() == 64 * 63 / 2);
    for (std::size_t r = 0; r < sys.equations(); ++r) {
        std::size_t bits = 0;
        for (std::size_t c = 0; c <= sys.num_vars; ++c) bits += sys.rows.get(r, c);
        CHECK(bits == 11);   // 4 cubes, 6 pair terms, constant
        CHECK(sys.rows.get(r, sys.num_vars));
    }
    CHECK_THROWS_AS(build_system(quadruple_set(truncate(power_function(3, 6), 3))), InvalidArgument);
}

TEST_CASE("GF(2) solver agrees with exhaustive search") {
    std::mt19937_64 rng(32);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t vars = 1 + rng() % 10, rows = 1 + rng() % 14;
        Gf2Matrix a(rows, vars + 1);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c <= vars; ++c)
                if (rng() % 3 == 0) a.set(r, c);
        std::size_t solutions = 0;
        for (std::uint32_t x = 0; x < (1u << vars); ++x) {
            bool ok = true;
            for (std::size_t r = 0; r < rows && ok; ++r) {
                int s = a.get(r, vars);
                for (std::size_t c = 0; c < vars; ++c) s ^= a.get(r, c) & ((x >> c) & 1);
                ok = s == 0;
            }
            solutions += ok;
        }
        const auto sol = solve_affine(a, vars);
        CHECK(sol.solvable == (solutions > 0));
        if (sol.solvable) {
            CHECK(solutions == (std::size_t{1} << sol.free_count));
            CHECK(sol.free_count == vars - sol.rank);
            for (std::size_t r = 0; r < rows; ++r) {
                int s = a.get(r, vars);
                for (std::size_t c = 0; c < vars; ++c) s ^= a.get(r, c) & sol.assignment[c];
                CHECK(s == 0);
            }
        } else {
            CHECK(verify_witness(a, vars, sol.witness));
        }
    }
}

TEST_CASE("extension test outcomes") {
    const auto pass = extension_test(truncate(power_function(3, 6), 4));
    CHECK(pass.outcome == ExtensionOutcome::Pass);
    CHECK(pass.delta <= 8);

    // Truncations of APN functions always pass: the test is necessary.
    for (const auto& F : read_vectorial_file(oracle::data("corpus/ten_functions_6.txt"), 6))
        if (kernels::differential_uniformity(F) == 2) CHECK(extension_test(truncate(F, 4)).outcome == ExtensionOutcome::Pass);

    const auto adv = read_vectorial_file(oracle::data("corpus/adversarial_6_4.txt"), 4).at(0);
    const auto v = extension_test(adv);
    CHECK(v.delta <= v.delta_bound);
    REQUIRE(v.outcome == ExtensionOutcome::RejectedSystem);
    CHECK(v.witness_verified);
    CHECK(verify_witness(build_system(quadruple_set(adv)).rows, 64 * 65 / 2, v.witness));

    std::vector<std::uint32_t> img(64, 0);
    img[5] = 3;
    const auto big = extension_test(VectorialFunction(6, 4, img));
    CHECK(big.outcome == ExtensionOutcome::RejectedDelta);
    CHECK(big.delta > 8);
    CHECK_THROWS_AS(extension_test(power_function(3, 6)), InvalidArgument);
}

TEST_CASE("backtracking at m = 3 equals brute force") {
    const auto f = truncate(power_function(3, 3), 1);
    const auto expect = completions_by_brute_force(f);
    REQUIRE_FALSE(expect.empty());

    CompletionOptions all;
    all.normalize = false;
    const auto r = backtrack_complete(f, all);
    CHECK(r.exhaustive);
    CHECK(std::set<VectorialFunction>(r.completions.begin(), r.completions.end()) == expect);
    CHECK(r.completions.size() == expect.size());

    // One representative per coset of the 4^(m+1) affine maps into GF(4).
    const auto norm = backtrack_complete(f);
    CHECK(norm.completions.size() * 256 == expect.size());
    for (const auto& g : norm.completions) {
        CHECK(expect.count(g));
        for (std::uint32_t p : {0u, 1u, 2u, 4u}) CHECK((g(p) >> 1) == 0);
    }
}

TEST_CASE("backtracking at m = 4: task splitting does not change the result") {
    const auto f = truncate(power_function(3, 4), 2);
    CompletionOptions a, b;
    a.split_depth = 0;
    b.split_depth = 3;
    const auto ra = backtrack_complete(f, a);
    const auto rb = backtrack_complete(f, b);
    CHECK(ra.exhaustive);
    CHECK_FALSE(ra.completions.empty());
    CHECK(ra.completions == rb.completions);
    for (const auto& g : ra.completions) {
        CHECK(oracle::delta(g.images(), 16) == 2);
        CHECK(truncate(g, 2) == f);
    }
}

TEST_CASE("backtracking on truncate(x^3, 4)") {
    const auto f = truncate(power_function(3, 6), 4);
    CompletionOptions opts;
    opts.max_solutions = 40;
    const auto r = backtrack_complete(f, opts);
    CHECK(r.completions.size() == 40);
    CHECK_FALSE(r.exhaustive);
    std::set<VectorialFunction> distinct(r.completions.begin(), r.completions.end());
    CHECK(distinct.size() == 40);
    for (const auto& g : r.completions) {
        CHECK(oracle::delta(g.images(), 64) == 2);
        CHECK(truncate(g, 4) == f);
        for (std::uint32_t p : {0u, 1u, 2u, 4u, 8u, 16u, 32u}) CHECK((g(p) >> 4) == 0);
    }
    CompletionOptions tiny;
    tiny.max_nodes = 100;
    CHECK_FALSE(backtrack_complete(f, tiny).exhaustive);
}

TEST_CASE("functions without an APN extension yield nothing") {
    const auto adv = read_vectorial_file(oracle::data("corpus/adversarial_6_4.txt"), 4).at(0);
    const auto r = backtrack_complete(adv);
    CHECK(r.exhaustive);
    CHECK(r.completions.empty());
    std::vector<std::uint32_t> img(64, 0);
    const auto flat = backtrack_complete(VectorialFunction(6, 4, img));
    CHECK(flat.exhaustive);
    CHECK(flat.completions.empty());
}
