#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "apnkit/affine.hpp"
#include "apnkit/errors.hpp"
#include "apnkit/gf2m.hpp"
#include "apnkit/pipeline.hpp"
#include "apnkit/textio.hpp"
#include "oracles.hpp"

using namespace apn;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    auto p = fs::temp_directory_path() / ("apnkit_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

// First coordinate of x^3 that is bent (kappa = 1).
int bent_coordinate() {
    const auto x3 = power_function(3, 6);
    for (int i = 0; i < 6; ++i)
        if (kappa(coordinate(x3, i)) == Rational(1)) return i;
    return -1;
}

SearchConfig x3_type_1_4() {
    SearchConfig cfg;
    cfg.alpha = Rational(1);
    cfg.beta = Rational(4);
    cfg.degree_policy = false;
    const auto x3 = power_function(3, 6);
    cfg.seeds = {coordinate(x3, bent_coordinate())};
    for (int i = 0; i < 6; ++i) cfg.pool.push_back(coordinate(x3, i));
    return cfg;
}

SearchConfig perm_config() {
    SearchConfig cfg;
    cfg.seed_coordinates = oracle::data("corpus/ccz_perm_type_1.75_4.txt");
    cfg.pool_coordinates = cfg.seed_coordinates;
    cfg.pool_generator = "orbit:10:5";
    cfg.max_completions = 3;
    return cfg;
}

}  // namespace

TEST_CASE("configuration parsing") {
    std::istringstream in(
        "# search\n"
        "alpha = \"7/4\"\n"
        "beta = 4\n"
        "[budgets]\n"
        "budget_nodes = 1000  # per job\n"
        "max_completions = 5\n"
        "dedup = parent\n"
        "pool_file = pool.txt\n");
    const auto cfg = SearchConfig::parse(in, "/base");
    CHECK(cfg.alpha == Rational(7, 4));
    CHECK(cfg.beta == Rational(4));
    CHECK(cfg.budget_nodes == 1000);
    CHECK(cfg.max_completions == 5);
    CHECK(cfg.dedup == DedupMode::Parent);
    CHECK(cfg.pool_file == "/base/pool.txt");

    std::istringstream bad("alpha = 1\nflavour = strange\n");
    try {
        SearchConfig::parse(bad);
        FAIL("accepted an unknown key");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::istringstream bad_value("beta = x\n");
    CHECK_THROWS_AS(SearchConfig::parse(bad_value), ParseError);
}

TEST_CASE("environment overrides") {
    SearchConfig cfg;
    setenv("APNKIT_TEST_ALPHA", "31/16", 1);
    setenv("APNKIT_TEST_MAX_COMPLETIONS", "9", 1);
    cfg.apply_env("APNKIT_TEST_");
    unsetenv("APNKIT_TEST_ALPHA");
    unsetenv("APNKIT_TEST_MAX_COMPLETIONS");
    CHECK(cfg.alpha == Rational(31, 16));
    CHECK(cfg.max_completions == 9);
}

TEST_CASE("validation and config digest") {
    auto cfg = x3_type_1_4();
    cfg.validate();
    const auto d = cfg.digest();
    auto other = cfg;
    other.alpha = Rational(3, 2);
    CHECK(other.digest() != d);
    other = cfg;
    other.beta = cfg.alpha;
    CHECK_THROWS_AS(other.validate(), InvalidArgument);
    other = cfg;
    other.pool.clear();
    CHECK_THROWS_AS(other.validate(), InvalidArgument);
    SearchConfig policy;
    policy.seeds = {coordinate(power_function(3, 6), bent_coordinate())};   // degree 2
    policy.pool = policy.seeds;
    CHECK_THROWS_AS(policy.validate(), InvalidArgument);
}

TEST_CASE("ext operator on x^3 coordinates") {
    auto cfg = x3_type_1_4();
    cfg.dedup = DedupMode::Off;
    InvariantCache cache;
    const auto e0 = initial_level(cfg, cache);
    REQUIRE(e0.members.size() == 1);
    const auto e1 = ext_operator(e0, cfg, cache);
    const auto x3 = power_function(3, 6);
    const int s = bent_coordinate();
    bool found = false;
    for (const auto& m : e1.members) {
        for (int j = 0; j < 6; ++j) {
            std::vector<std::uint32_t> img(64);
            for (std::uint32_t x = 0; x < 64; ++x) img[x] = ((x3(x) >> s) & 1) | (((x3(x) >> j) & 1) << 1);
            found = found || m.f == VectorialFunction(6, 2, img);
        }
        for (const auto& [k, lvl] : spectral_profile(m.f).levels) CHECK((k == Rational(1) || k == Rational(4)));
    }
    CHECK(found);
    // Extending a coordinate by itself makes the zero component: rejected.
    CHECK(e1.stats.rejected_type >= 1);
    CHECK(e1.stats.generated == 6);
    CHECK(e1.stats.kept + e1.stats.rejected_type + e1.stats.rejected_delta + e1.stats.rejected_dup == 6);
}

TEST_CASE("type filter rejects an inadmissible pool") {
    auto cfg = x3_type_1_4();
    cfg.pool = {BooleanFunction::affine(6, 3)};   // h + c has kappa 64
    InvariantCache cache;
    const auto e1 = ext_operator(initial_level(cfg, cache), cfg, cache);
    CHECK(e1.members.empty());
    CHECK(e1.stats.rejected_type == 1);
}

TEST_CASE("dedup keeps one of two EA-equivalent extensions") {
    auto cfg = x3_type_1_4();
    const auto x3 = power_function(3, 6);
    const int j = bent_coordinate() == 0 ? 1 : 0;
    cfg.pool = {coordinate(x3, j), coordinate(x3, j) ^ BooleanFunction::affine(6, 0b101101, true)};
    InvariantCache cache;
    const auto e0 = initial_level(cfg, cache);
    const auto kept = ext_operator(e0, cfg, cache);
    CHECK(kept.members.size() == 1);
    CHECK(kept.stats.rejected_dup == 1);
    REQUIRE(kept.collisions.size() == 1);
    cfg.dedup = DedupMode::Off;
    CHECK(ext_operator(e0, cfg, cache).members.size() == 2);
}

TEST_CASE("corpus store and load") {
    const auto dir = scratch_dir("corpus");
    const auto fs_in = read_vectorial_file(oracle::data("corpus/ten_functions_6.txt"), 6);
    const auto path = (dir / "out.txt").string();
    RunManifest man;
    man.command = "test";
    man.config_digest = "abc";
    corpus_store(fs_in, path, man);
    CHECK(corpus_load(path, 6) == fs_in);
    std::ifstream mf(path + ".manifest.json");
    const auto j = nlohmann::json::parse(mf);
    CHECK(j.at("stats").at("count") == 10);
    CHECK(j.at("config_digest") == "abc");
    // The digest ignores timestamps.
    RunManifest a = man, b = man;
    a.started = "2000-01-01T00:00:00Z";
    b.started = "2030-01-01T00:00:00Z";
    CHECK(a.digest() == b.digest());
    b.stats["x"] = 1;
    CHECK(a.digest() != b.digest());
    const auto x3 = corpus_load(oracle::data("corpus/x3_gf64.txt"), 6).at(0);
    CHECK(oracle::delta(x3.images(), 64) == 2);
}

TEST_CASE("run_search is deterministic and resumable") {
    auto cfg = perm_config();
    const auto r1 = run_search(cfg);
    const auto r2 = run_search(cfg);
    CHECK(r1.to_json(false).dump() == r2.to_json(false).dump());
    CHECK(r1.ext_tested >= r1.ext_pass);
    CHECK(r1.jobs == r1.ext_pass);
    CHECK_FALSE(r1.completions.empty());
    for (const auto& c : r1.completions) {
        CHECK(oracle::delta(c.f.images(), 64) == 2);
        CHECK(c.typed);
    }

    const auto dir = scratch_dir("resume");
    cfg.output_dir = dir.string();
    const auto first = run_search(cfg);
    CHECK(fs::exists(dir / "level_3.json"));
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "completions.txt.manifest.json"));
    cfg.resume = true;
    const auto again = run_search(cfg);
    CHECK(again.to_json(false).dump() == first.to_json(false).dump());
}
