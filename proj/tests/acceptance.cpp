// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "apnkit/affine.hpp"
#include "apnkit/extension.hpp"
#include "apnkit/gf2m.hpp"
#include "apnkit/invariants.hpp"
#include "apnkit/kernels.hpp"
#include "apnkit/pipeline.hpp"
#include "apnkit/textio.hpp"
#include "oracles.hpp"

using namespace apn;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

class Check {
public:
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            out_.ok = false;
            if (!out_.detail.empty()) out_.detail += "; ";
            out_.detail += what;
        }
    }
    void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? ", " : "") << s; }
    Outcome result() const {
        Outcome o = out_;
        if (o.ok) o.detail = notes_.str();
        return o;
    }

private:
    Outcome out_;
    std::ostringstream notes_;
};

int failures = 0;

void run(int id, double limit_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < limit_s, "over time limit");
    const auto r = c.result();
    failures += !r.ok;
    std::printf("criterion %2d: %s  (%.3f s, limit %g s)  %s\n", id, r.ok ? "PASS" : "FAIL", secs, limit_s,
                r.detail.c_str());
    std::fflush(stdout);
}

std::string str(i128 v) { return to_string(v); }

// Multiset of component digests and the vectorial nonlinearity.
std::multiset<std::string> component_w(const VectorialFunction& f) {
    std::multiset<std::string> out;
    for (std::uint32_t b = 1; b < (1u << f.out_dim()); ++b) out.insert(digest_w(component(f, b)).digest.hex());
    return out;
}

std::uint32_t vector_nl(const VectorialFunction& f) {
    std::uint32_t nl = UINT32_MAX;
    for (std::uint32_t b = 1; b < (1u << f.out_dim()); ++b) nl = std::min(nl, nonlinearity(component(f, b)));
    return nl;
}

std::map<Rational, std::uint32_t> level_counts(const VectorialFunction& f) {
    std::map<Rational, std::uint32_t> out;
    for (const auto& [k, lvl] : spectral_profile(f).levels) out[k] = lvl.count;
    return out;
}

}  // namespace

int main() {
    const auto x3 = power_function(3, 6);

    run(1, 1.0, [&](Check& c) {
        const auto v = is_apn(x3);
        c.expect(v.delta == 2, "delta");
        c.expect(v.n4 == 12160 && v.t4 == 12160, "N4/T4 = " + str(v.n4) + "/" + str(v.t4));
        c.expect(v.kappa_sum == Rational(126), "kappa sum " + v.kappa_sum.fraction());
        const auto p = spectral_profile(x3);
        c.expect(p.level_set() == std::set<Rational>{Rational(1), Rational(4)}, "K_F");
        c.expect(p.levels.at(Rational(1)).count == 42 && p.levels.at(Rational(4)).count == 21, "level counts");
        c.expect(bent_component_count(x3) == 42, "bent components");
        c.expect(is_crooked(x3), "crooked");
        c.note("delta 2, N4 = T4 = 12160, sum kappa 126, K_F {1:42, 4:21}, crooked");
    });

    run(2, 60.0, [&](Check& c) {
        const auto f = power_function(3, 4);
        c.expect(is_apn(f).apn, "x^3 over GF(16) APN");
        const i128 closed = t6_apn(16);
        const i128 counted = reference::trivial_solutions(f, 6);
        const i128 by_hand = 16 + 15 * 16 * 15 + 15 * 16 * 15 * 14;
        c.expect(closed == counted && counted == by_hand, "T6 " + str(closed) + " / " + str(counted));
        const i128 n4 = n_r(f, 4), direct = reference::n4_enumerated(f);
        c.expect(n4 == direct, "N4 " + str(n4) + " vs " + str(direct));
        c.note("T6 = " + str(closed) + " (closed form and enumeration), N4 = " + str(n4));
    });

    run(3, 5.0, [&](Check& c) {
        int ok = 0;
        for (std::uint32_t u = 1; u < 64; ++u) ok += verify_counting_link(x3, u);
        // Independent restatement with the oracles for every u and b.
        bool all = true;
        const auto img = x3.images();
        for (std::uint32_t u = 1; u < 64; ++u) {
            std::vector<int> n(64, 0);
            for (std::uint32_t x = 0; x < 64; ++x) n[img[x] ^ img[x ^ u]] = 1;
            const auto w = oracle::walsh(n);
            all = all && w[0] == 0;
            for (std::uint32_t b = 1; b < 64; ++b) {
                long ac = 0;
                for (std::uint32_t x = 0; x < 64; ++x) ac += oracle::parity(b & (img[x] ^ img[x ^ u])) ? -1 : 1;
                all = all && w[b] == -ac;
            }
        }
        c.expect(ok == 63, "library check failed for " + std::to_string(63 - ok) + " u");
        c.expect(all, "oracle restatement");
        c.note("63 x 64 identities exact");
    });

    run(4, 0.001, [&](Check& c) {
        c.expect(gf4_cube_expansion_check(), "identity");
        c.note("256 quadruples");
    });

    run(5, 5.0, [&](Check& c) {
        const auto& q = rank2_quadratics(6);
        c.expect(q.members.size() == 651, "|Q| = " + std::to_string(q.members.size()));
        for (const auto& f : q.members) {
            const auto w = walsh_transform(f);
            int nz = 0;
            bool mag = true;
            for (auto v : w)
                if (v) {
                    ++nz;
                    mag = mag && (v == 32 || v == -32);
                }
            if (nz != 4 || !mag) {
                c.expect(false, "member " + f.to_hex());
                break;
            }
        }
        // Spectrum count over all 32768 homogeneous quadratics.
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) pairs.emplace_back(i, j);
        std::vector<std::uint64_t> mono(pairs.size());
        for (std::size_t k = 0; k < pairs.size(); ++k)
            mono[k] = BooleanFunction::monomial(6, (1u << pairs[k].first) | (1u << pairs[k].second)).word();
        std::size_t four = 0;
        for (std::uint32_t mask = 0; mask < (1u << 15); ++mask) {
            std::uint64_t t = 0;
            for (std::size_t k = 0; k < 15; ++k)
                if ((mask >> k) & 1) t ^= mono[k];
            const auto w = walsh_transform(BooleanFunction::from_word(t));
            four += std::count_if(w.begin(), w.end(), [](auto v) { return v != 0; }) == 4;
        }
        c.expect(four == 651, "enumeration count " + std::to_string(four));
        c.note("651 members, 4 coefficients of magnitude 32 each, 32768 quadratics scanned");
    });

    run(6, 600.0, [&](Check& c) {
        const auto fs = read_vectorial_file(oracle::data("corpus/ten_functions_6.txt"), 6);
        c.expect(fs.size() == 10, "corpus size");
        Rng rng(2024);
        int failed = 0, checked = 0;
        for (const auto& F : fs) {
            const auto levels = level_counts(F);
            const auto w = component_w(F);
            const auto jp = inv_Jprime(F).digest;
            const auto nl = vector_nl(F);
            const auto f1 = component(F, 1);
            const auto i1 = inv_I(f1).digest;
            for (int rep = 0; rep < 100; ++rep) {
                const auto G = apply_ea(F, EaTransform::random(6, 6, rng));
                const bool same = level_counts(G) == levels && component_w(G) == w && inv_Jprime(G).digest == jp &&
                                  vector_nl(G) == nl && inv_I(random_affine_variant(f1, rng)).digest == i1;
                failed += !same;
                ++checked;
            }
        }
        c.expect(failed == 0, std::to_string(failed) + " of " + std::to_string(checked) + " transforms changed an invariant");
        c.note(std::to_string(checked) + " transforms, 0 failures");
    });

    run(7, 60.0, [&](Check& c) {
        const auto f = truncate(x3, 4);
        const auto v = extension_test(f);
        c.expect(v.outcome == ExtensionOutcome::Pass, "extension_test " + to_string(v.outcome));
        CompletionOptions opts;
        opts.max_solutions = 16;
        opts.max_seconds = 50;
        const auto r = backtrack_complete(f, opts);
        c.expect(!r.completions.empty(), "no completion");
        for (const auto& g : r.completions)
            c.expect(oracle::delta(g.images(), 64) == 2 && truncate(g, 4) == f, "bad completion " + format_vectorial(g));
        c.note("Pass, " + std::to_string(r.completions.size()) + " normalized completions verified delta 2 (capped)");
    });

    run(8, 1.0, [&](Check& c) {
        const std::vector<Rational> table = {
            Rational(1),          Rational(10),          Rational(1),     Rational(37, 16),
            Rational(1),          Rational(17, 8),       Rational(7, 4),  Rational(4),
            Rational(31, 16),     Rational(5, 2),        Rational(31, 16), Rational(47, 8)};
        std::vector<Rational> distinct = table;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        const auto sols = pair_solver(distinct, 64);
        const std::vector<PairSolution> rows = {
            {Rational(1), 56, Rational(10), 7},          {Rational(1), 15, Rational(37, 16), 48},
            {Rational(1), 7, Rational(17, 8), 56},       {Rational(7, 4), 56, Rational(4), 7},
            {Rational(31, 16), 56, Rational(5, 2), 7},   {Rational(31, 16), 62, Rational(47, 8), 1}};
        for (const auto& row : rows)
            c.expect(std::find(sols.begin(), sols.end(), row) != sols.end(),
                     "missing (" + row.alpha.fraction() + ", " + std::to_string(row.a) + ", " + row.beta.fraction() + ", " +
                         std::to_string(row.b) + ")");
        c.note("6 rows reproduced among " + std::to_string(sols.size()) + " solutions from " +
               std::to_string(distinct.size()) + " distinct values");
    });

    run(9, 600.0, [&](Check& c) {
        const auto P = read_vectorial_file(oracle::data("corpus/ccz_perm_type_1.75_4.txt"), 6).at(0);
        SearchConfig cfg;
        int seed = -1;
        for (int i = 0; i < 6 && seed < 0; ++i)
            if (degree(coordinate(P, i)) == 4) seed = i;
        c.expect(seed >= 0, "no degree-4 coordinate");
        cfg.seeds = {coordinate(P, seed)};
        for (int i = 0; i < 6; ++i) cfg.pool.push_back(coordinate(P, i));
        cfg.pool_generator = "orbit:50:9";
        cfg.max_completions = 4;
        cfg.threads = 1;
        const auto a = run_search(cfg);
        const auto b = run_search(cfg);
        c.expect(a.to_json(false).dump() == b.to_json(false).dump(), "reports differ");
        std::size_t good = 0;
        for (const auto& r : a.completions) {
            const auto ks = r.profile.level_set();
            const bool subset = std::all_of(ks.begin(), ks.end(),
                                            [](const Rational& k) { return k == Rational(7, 4) || k == Rational(4); });
            good += oracle::delta(r.f.images(), 64) == 2 && subset;
        }
        c.expect(good >= 1, "no typed APN completion");
        c.note(std::to_string(a.completions.size()) + " completions from " + std::to_string(a.jobs) + " jobs, " +
               std::to_string(good) + " APN with K_F in {7/4, 4}, identical reports");
    });

    run(10, 300.0, [&](Check& c) {
        const auto base = ccz_signature(x3);
        Rng rng(10);
        int diff = 0;
        for (int rep = 0; rep < 20; ++rep) {
            const auto s = ccz_signature(apply_ea(x3, EaTransform::random(6, 6, rng)));
            diff += !(s == base) || s.gamma_rank != base.gamma_rank;
        }
        c.expect(diff == 0, std::to_string(diff) + " signatures differ");
        c.note("20 EA images of x^3 share the signature, gamma rank " + std::to_string(base.gamma_rank) +
               "; the full 6-bit classification campaign is not reproduced at desk scale");
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures ? 1 : 0;
}
