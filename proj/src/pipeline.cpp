#include "apnkit/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "apnkit/affine.hpp"
#include "apnkit/errors.hpp"
#include "apnkit/kernels.hpp"
#include "apnkit/textio.hpp"

namespace apn {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw InvalidArgument(key + ": expected a boolean, got '" + v + "'");
}

std::uint64_t parse_count(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const auto n = std::stoull(v, &pos);
        if (pos == v.size()) return n;
    } catch (const std::exception&) {
    }
    throw InvalidArgument(key + ": expected a non-negative integer, got '" + v + "'");
}

double parse_seconds(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos == v.size() && d >= 0) return d;
    } catch (const std::exception&) {
    }
    throw InvalidArgument(key + ": expected a non-negative number, got '" + v + "'");
}

std::string resolve(const std::string& path, const std::string& base_dir) {
    if (path.empty() || fs::path(path).is_absolute()) return path;
    return (fs::path(base_dir) / path).lexically_normal().string();
}

const char* const kKeys[] = {"m", "alpha", "beta", "degree_policy", "seeds_file", "seed_coordinates",
                             "pool_file", "pool_coordinates", "pool_generator", "dedup",
                             "max_level_members", "normalize", "budget_nodes", "budget_seconds",
                             "max_completions", "threads", "output_dir", "resume"};

}  // namespace

std::string to_string(DedupMode d) {
    switch (d) {
        case DedupMode::Extension: return "extension";
        case DedupMode::Parent: return "parent";
        case DedupMode::Off: return "off";
    }
    return "?";
}

void SearchConfig::set(const std::string& key, const std::string& value, const std::string& base_dir) {
    if (key == "m") {
        m = static_cast<int>(parse_count(key, value));
    } else if (key == "alpha") {
        alpha = Rational::parse(value);
    } else if (key == "beta") {
        beta = Rational::parse(value);
    } else if (key == "degree_policy") {
        degree_policy = parse_bool(key, value);
    } else if (key == "seeds_file") {
        seeds_file = resolve(value, base_dir);
    } else if (key == "seed_coordinates") {
        seed_coordinates = resolve(value, base_dir);
    } else if (key == "pool_file") {
        pool_file = resolve(value, base_dir);
    } else if (key == "pool_coordinates") {
        pool_coordinates = resolve(value, base_dir);
    } else if (key == "pool_generator") {
        pool_generator = value;
    } else if (key == "dedup") {
        if (value == "extension") dedup = DedupMode::Extension;
        else if (value == "parent") dedup = DedupMode::Parent;
        else if (value == "off") dedup = DedupMode::Off;
        else throw InvalidArgument("dedup: expected extension, parent or off");
    } else if (key == "max_level_members") {
        max_level_members = parse_count(key, value);
    } else if (key == "normalize") {
        normalize = parse_bool(key, value);
    } else if (key == "budget_nodes") {
        budget_nodes = parse_count(key, value);
    } else if (key == "budget_seconds") {
        budget_seconds = parse_seconds(key, value);
    } else if (key == "max_completions") {
        max_completions = parse_count(key, value);
    } else if (key == "threads") {
        threads = static_cast<int>(parse_count(key, value));
    } else if (key == "output_dir") {
        output_dir = resolve(value, base_dir);
    } else if (key == "resume") {
        resume = parse_bool(key, value);
    } else {
        throw InvalidArgument("unknown configuration key '" + key + "'");
    }
}

SearchConfig SearchConfig::parse(std::istream& in, const std::string& base_dir) {
    SearchConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(line.substr(0, hash));
        if (body.empty() || body.front() == '[') continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
        const std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        try {
            cfg.set(key, value, base_dir);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return cfg;
}

SearchConfig SearchConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    return parse(in, fs::path(path).parent_path().string().empty() ? "." : fs::path(path).parent_path().string());
}

void SearchConfig::apply_env(const std::string& prefix) {
    for (const char* key : kKeys) {
        std::string name = prefix;
        for (const char* c = key; *c; ++c) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
        if (const char* v = std::getenv(name.c_str())) set(key, v, ".");
    }
}

bool admissible_component(const BooleanFunction& h, const SearchConfig& cfg) {
    const Rational k = kappa(h);
    if (!cfg.degree_policy) return k == cfg.alpha || k == cfg.beta;
    const int d = degree(h);
    if (d == 4) return k == cfg.alpha;
    if (d <= 3) return k == cfg.beta;
    return false;
}

void SearchConfig::load_inputs() {
    if (inputs_loaded_) return;
    if (!seeds_file.empty())
        for (auto& f : read_boolean_file(seeds_file, m)) seeds.push_back(std::move(f));
    if (!seed_coordinates.empty())
        for (const auto& F : read_vectorial_file(seed_coordinates, m))
            for (int i = 0; i < F.out_dim(); ++i) {
                auto c = coordinate(F, i);
                if (kappa(c) == alpha && (!degree_policy || degree(c) == 4)) seeds.push_back(std::move(c));
            }
    if (!pool_file.empty())
        for (auto& f : read_boolean_file(pool_file, m)) pool.push_back(std::move(f));
    if (!pool_coordinates.empty())
        for (const auto& F : read_vectorial_file(pool_coordinates, m))
            for (int i = 0; i < F.out_dim(); ++i) pool.push_back(coordinate(F, i));
    if (!pool_generator.empty()) {
        std::istringstream spec(pool_generator);
        std::string kind, count_s, seed_s;
        std::getline(spec, kind, ':');
        std::getline(spec, count_s, ':');
        std::getline(spec, seed_s);
        if (kind != "orbit" && kind != "shift") throw InvalidArgument("pool_generator: unknown kind '" + kind + "'");
        const auto count = parse_count("pool_generator count", count_s);
        Rng rng(parse_count("pool_generator seed", seed_s));
        if (pool.empty()) throw InvalidArgument("pool_generator needs pool functions to perturb");
        const std::size_t base = pool.size();
        std::uniform_int_distribution<std::size_t> pick(0, base - 1);
        std::uniform_int_distribution<std::uint32_t> vec(0, (1u << m) - 1);
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto& f = pool[pick(rng)];
            if (kind == "orbit") {
                pool.push_back(random_affine_variant(f, rng));
            } else {
                const std::uint32_t l = vec(rng);
                pool.push_back(f ^ BooleanFunction::affine(m, l, (rng() & 1) != 0));
            }
        }
    }
    inputs_loaded_ = true;
}

void SearchConfig::validate() const {
    if (m < 3 || m > 6) throw InvalidArgument("m must lie in [3, 6]");
    if (!(alpha < beta)) throw InvalidArgument("alpha must be smaller than beta");
    if (seeds.empty()) throw InvalidArgument("no seed functions");
    if (pool.empty()) throw InvalidArgument("empty candidate pool");
    for (const auto& s : seeds) {
        if (s.vars() != m) throw InvalidArgument("seed has the wrong number of variables");
        if (kappa(s) != alpha || (degree_policy && degree(s) != 4))
            throw InvalidArgument("seed " + s.to_hex() + " does not have degree 4 and kappa = alpha");
    }
    for (const auto& f : pool)
        if (f.vars() != m) throw InvalidArgument("pool function has the wrong number of variables");
}

std::string SearchConfig::canonical() const {
    std::map<std::string, std::string> kv;
    kv["m"] = std::to_string(m);
    kv["alpha"] = alpha.fraction();
    kv["beta"] = beta.fraction();
    kv["degree_policy"] = degree_policy ? "true" : "false";
    kv["dedup"] = to_string(dedup);
    kv["max_level_members"] = std::to_string(max_level_members);
    kv["normalize"] = normalize ? "true" : "false";
    kv["budget_nodes"] = std::to_string(budget_nodes);
    std::ostringstream secs;
    secs << budget_seconds;
    kv["budget_seconds"] = secs.str();
    kv["max_completions"] = std::to_string(max_completions);
    kv["pool_generator"] = pool_generator;
    std::string seeds_text, pool_text;
    for (const auto& s : seeds) seeds_text += s.to_hex() + ",";
    for (const auto& f : pool) pool_text += f.to_hex() + ",";
    kv["seeds"] = digest_of(seeds_text).hex();
    kv["pool"] = digest_of(pool_text).hex();
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

Digest SearchConfig::digest() const { return digest_of(canonical()); }

namespace {

Digest member_digest(const VectorialFunction& f, const SearchConfig& cfg, InvariantCache& cache) {
    if (cfg.dedup == DedupMode::Off) return digest_of(format_vectorial(f));
    return cache.j_prime(f).digest;
}

void finish_level(LevelSet& out, std::vector<LevelMember> accepted, const SearchConfig& cfg, bool dedup_here) {
    std::map<Digest, std::size_t> seen;
    for (auto& mbr : accepted) {
        if (dedup_here) {
            auto [it, fresh] = seen.emplace(mbr.jprime, out.members.size());
            if (!fresh) {
                ++out.stats.rejected_dup;
                out.collisions.emplace_back(format_vectorial(out.members[it->second].f), format_vectorial(mbr.f));
                continue;
            }
        }
        out.members.push_back(std::move(mbr));
    }
    std::stable_sort(out.members.begin(), out.members.end(), [](const LevelMember& a, const LevelMember& b) {
        if (a.jprime != b.jprime) return a.jprime < b.jprime;
        return a.f < b.f;
    });
    if (cfg.max_level_members && out.members.size() > cfg.max_level_members) {
        out.members.resize(cfg.max_level_members);
        out.stats.truncated = true;
    }
    out.stats.kept = out.members.size();
}

}  // namespace

LevelSet initial_level(const SearchConfig& cfg, InvariantCache& cache) {
    LevelSet out;
    out.level = 0;
    std::vector<LevelMember> accepted;
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
        ++out.stats.generated;
        if (!admissible_component(cfg.seeds[i], cfg)) {
            ++out.stats.rejected_type;
            continue;
        }
        std::vector<std::uint32_t> img(cfg.seeds[i].size());
        for (std::uint32_t x = 0; x < img.size(); ++x) img[x] = cfg.seeds[i](x);
        VectorialFunction f(cfg.m, 1, std::move(img));
        if (!differential_uniformity_at_most(f, delta_bound(cfg.m, 1))) {
            ++out.stats.rejected_delta;
            continue;
        }
        LevelMember mbr{f, member_digest(f, cfg, cache), -1, static_cast<std::int64_t>(i)};
        accepted.push_back(std::move(mbr));
    }
    finish_level(out, std::move(accepted), cfg, cfg.dedup != DedupMode::Off);
    return out;
}

LevelSet ext_operator(const LevelSet& e, const SearchConfig& cfg, InvariantCache& cache) {
    if (cfg.pool.empty()) throw InvalidArgument("empty candidate pool");
    LevelSet out;
    out.level = e.level + 1;

    // Parent mode dedups the input level instead of the extensions.
    std::vector<std::size_t> parents;
    {
        std::set<Digest> seen;
        for (std::size_t i = 0; i < e.members.size(); ++i)
            if (cfg.dedup != DedupMode::Parent || seen.insert(e.members[i].jprime).second) parents.push_back(i);
    }

    enum class Verdict : std::uint8_t { Type, Delta, Kept };
    const std::size_t np = cfg.pool.size();
    const std::size_t total = parents.size() * np;
    std::vector<Verdict> verdict(total, Verdict::Type);
    std::vector<LevelMember> candidate(total);

#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(total); ++k) {
        const std::size_t idx = static_cast<std::size_t>(k);
        const auto& F = e.members[parents[idx / np]].f;
        const auto& f = cfg.pool[idx % np];
        bool ok = true;
        for (std::uint32_t c = 0; ok && c < (1u << F.out_dim()); ++c) ok = admissible_component(f ^ component(F, c), cfg);
        if (!ok) continue;
        auto G = extend(F, f);
        if (!differential_uniformity_at_most(G, delta_bound(G.in_dim(), G.out_dim()))) {
            verdict[idx] = Verdict::Delta;
            continue;
        }
        const bool need_digest = cfg.dedup == DedupMode::Extension || out.level < 3;
        Digest d = need_digest ? member_digest(G, cfg, cache) : digest_of(format_vectorial(G));
        candidate[idx] = LevelMember{std::move(G), d, static_cast<std::int64_t>(parents[idx / np]),
                                     static_cast<std::int64_t>(idx % np)};
        verdict[idx] = Verdict::Kept;
    }

    std::vector<LevelMember> accepted;
    for (std::size_t idx = 0; idx < total; ++idx) {
        ++out.stats.generated;
        if (verdict[idx] == Verdict::Type) ++out.stats.rejected_type;
        else if (verdict[idx] == Verdict::Delta) ++out.stats.rejected_delta;
        else accepted.push_back(std::move(candidate[idx]));
    }
    finish_level(out, std::move(accepted), cfg, cfg.dedup == DedupMode::Extension);
    return out;
}

namespace {

nlohmann::ordered_json level_json(const LevelSet& l) {
    nlohmann::ordered_json j;
    j["level"] = l.level;
    j["shape"] = {l.members.empty() ? 0 : l.members.front().f.in_dim(), l.level + 1};
    j["generated"] = l.stats.generated;
    j["rejected_type"] = l.stats.rejected_type;
    j["rejected_delta"] = l.stats.rejected_delta;
    j["rejected_dup"] = l.stats.rejected_dup;
    j["kept"] = l.stats.kept;
    j["truncated"] = l.stats.truncated;
    return j;
}

std::string levels_string(const SpectralProfile& p) {
    std::string out;
    for (const auto& [k, lvl] : p.levels) {
        if (!out.empty()) out += ",";
        out += k.fraction() + ":" + std::to_string(lvl.count);
    }
    return out;
}

void write_checkpoint(const LevelSet& l, const std::string& dir, const std::string& config_digest) {
    nlohmann::ordered_json j;
    j["config_digest"] = config_digest;
    j["stats"] = level_json(l);
    auto members = nlohmann::ordered_json::array();
    for (const auto& mbr : l.members)
        members.push_back({{"f", format_vectorial(mbr.f)},
                           {"digest", mbr.jprime.hex()},
                           {"parent", mbr.parent},
                           {"pool_index", mbr.pool_index}});
    j["members"] = members;
    auto coll = nlohmann::ordered_json::array();
    for (const auto& [kept, dropped] : l.collisions) coll.push_back({{"kept", kept}, {"dropped", dropped}});
    j["collisions"] = coll;
    const auto path = fs::path(dir) / ("level_" + std::to_string(l.level) + ".json");
    std::ofstream(path) << j.dump(1) << "\n";
}

std::optional<LevelSet> read_checkpoint(int level, const std::string& dir, const std::string& config_digest) {
    const auto path = fs::path(dir) / ("level_" + std::to_string(level) + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    const auto j = nlohmann::json::parse(in);
    if (j.at("config_digest").get<std::string>() != config_digest) return std::nullopt;
    LevelSet l;
    l.level = level;
    const auto& s = j.at("stats");
    l.stats = {s.at("generated"), s.at("rejected_type"), s.at("rejected_delta"),
               s.at("rejected_dup"), s.at("kept"), s.at("truncated")};
    for (const auto& mbr : j.at("members"))
        l.members.push_back({parse_vectorial(mbr.at("f").get<std::string>(), level + 1),
                             Digest::from_hex(mbr.at("digest").get<std::string>()), mbr.at("parent"),
                             mbr.at("pool_index")});
    for (const auto& c : j.at("collisions")) l.collisions.emplace_back(c.at("kept"), c.at("dropped"));
    return l;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

nlohmann::ordered_json SearchReport::to_json(bool with_timing) const {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["config_digest"] = config_digest;
    auto lv = nlohmann::ordered_json::array();
    for (const auto& l : levels) lv.push_back(level_json(l));
    j["levels"] = lv;
    j["extension_test"] = {{"tested", ext_tested},
                           {"pass", ext_pass},
                           {"rejected_delta", ext_rejected_delta},
                           {"rejected_system", ext_rejected_system}};
    j["backtracking"] = {{"jobs", jobs}, {"nodes", job_nodes}, {"exhaustive_jobs", exhaustive_jobs}};

    std::map<std::string, std::uint64_t> by_levels;
    std::map<std::string, std::pair<const CompletionRecord*, std::uint64_t>> groups;
    std::uint64_t typed = 0;
    auto list = nlohmann::ordered_json::array();
    for (const auto& c : completions) {
        const auto key = levels_string(c.profile);
        ++by_levels[key];
        nlohmann::ordered_json e{{"f", format_vectorial(c.f)}, {"parent", c.parent}, {"levels", key},
                                 {"typed", c.typed}};
        if (c.typed) {
            ++typed;
            const auto d = c.signature->digest().hex();
            e["ccz_signature"] = d;
            auto [it, fresh] = groups.emplace(d, std::make_pair(&c, 0));
            ++it->second.second;
        }
        list.push_back(std::move(e));
    }
    j["completions"] = {{"total", completions.size()}, {"apn_verified", completions.size()}, {"typed", typed}};
    j["completions"]["by_levels"] = by_levels;
    auto g = nlohmann::ordered_json::array();
    for (const auto& [d, rec] : groups)
        g.push_back({{"signature", d},
                     {"gamma_rank", rec.first->signature->gamma_rank},
                     {"delta_rank", rec.first->signature->delta_rank},
                     {"count", rec.second},
                     {"representative", format_vectorial(rec.first->f)}});
    j["ccz_groups"] = g;
    j["functions"] = list;
    j["exhaustive"] = exhaustive;
    if (with_timing) j["timing"] = timing;
    return j;
}

SearchReport run_search(SearchConfig cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    cfg.load_inputs();
    cfg.validate();
    if (cfg.threads > 0) set_threads(cfg.threads);

    SearchReport report;
    report.config_digest = cfg.digest().hex();
    if (!cfg.output_dir.empty()) fs::create_directories(cfg.output_dir);

    InvariantCache cache;
    for (int level = 0; level <= 3; ++level) {
        const auto t = std::chrono::steady_clock::now();
        std::optional<LevelSet> loaded;
        if (cfg.resume && !cfg.output_dir.empty()) loaded = read_checkpoint(level, cfg.output_dir, report.config_digest);
        LevelSet l = loaded ? std::move(*loaded)
                            : (level == 0 ? initial_level(cfg, cache) : ext_operator(report.levels.back(), cfg, cache));
        if (l.stats.truncated) report.exhaustive = false;
        if (!cfg.output_dir.empty() && !loaded) write_checkpoint(l, cfg.output_dir, report.config_digest);
        report.levels.push_back(std::move(l));
        report.timing["level_" + std::to_string(level)] = seconds_since(t);
    }

    // The search shape needs n = m - 2 at the last level.
    const auto& last = report.levels.back();
    auto t = std::chrono::steady_clock::now();
    std::vector<ExtensionVerdict> verdicts(last.members.size());
    const bool testable = cfg.m == 6;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(last.members.size()); ++i)
        if (testable) verdicts[static_cast<std::size_t>(i)] = extension_test(last.members[static_cast<std::size_t>(i)].f);
    for (const auto& v : verdicts) {
        if (!testable) break;
        ++report.ext_tested;
        if (v.outcome == ExtensionOutcome::Pass) ++report.ext_pass;
        else if (v.outcome == ExtensionOutcome::RejectedDelta) ++report.ext_rejected_delta;
        else ++report.ext_rejected_system;
    }
    report.timing["extension_test"] = seconds_since(t);

    t = std::chrono::steady_clock::now();
    CompletionOptions opts;
    opts.normalize = cfg.normalize;
    opts.max_nodes = cfg.budget_nodes;
    opts.max_seconds = cfg.budget_seconds;
    opts.max_solutions = cfg.max_completions;
    for (std::size_t i = 0; testable && i < last.members.size(); ++i) {
        if (verdicts[i].outcome != ExtensionOutcome::Pass) continue;
        ++report.jobs;
        auto res = backtrack_complete(last.members[i].f, opts);
        report.job_nodes += res.nodes;
        if (res.exhaustive) ++report.exhaustive_jobs;
        else report.exhaustive = false;
        for (auto& g : res.completions) report.completions.push_back({std::move(g), i, {}, false, std::nullopt});
    }
    report.timing["backtracking"] = seconds_since(t);

    t = std::chrono::steady_clock::now();
    auto& comps = report.completions;
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(comps.size()); ++k) try {
        auto& c = comps[static_cast<std::size_t>(k)];
        if (!is_apn(c.f).apn) throw ConsistencyError("completion failed the APN check");
        c.profile = spectral_profile(c.f);
        c.typed = spectral_type(c.profile, cfg.alpha, cfg.beta);
        if (!c.typed) continue;
        const auto a = c.profile.levels.at(cfg.alpha).count;
        const auto b = c.profile.levels.at(cfg.beta).count;
        const auto q = static_cast<i128>(c.f.size());
        if (cfg.alpha * Rational(a) + cfg.beta * Rational(b) != Rational(2 * (q - 1)) || a + b != q - 1)
            throw ConsistencyError("typed completion violates alpha A + beta B = 2(q-1)");
        c.signature = ccz_signature(c.f);
    } catch (...) {
#pragma omp critical
        failure = std::current_exception();
    }
    if (failure) std::rethrow_exception(failure);
    report.timing["classification"] = seconds_since(t);
    report.timing["total"] = seconds_since(t_start);

    if (!cfg.output_dir.empty()) {
        const auto dir = fs::path(cfg.output_dir);
        std::ofstream(dir / "report.json") << report.to_json().dump(2) << "\n";
        std::vector<VectorialFunction> fs_out;
        for (const auto& c : comps) fs_out.push_back(c.f);
        RunManifest man;
        man.command = "search";
        man.config_digest = report.config_digest;
        man.stats = {{"completions", comps.size()}, {"exhaustive", report.exhaustive}};
        corpus_store(fs_out, (dir / "completions.txt").string(), man);
    }
    return report;
}

std::vector<VectorialFunction> corpus_load(const std::string& path, int n) { return read_vectorial_file(path, n); }

void corpus_store(const std::vector<VectorialFunction>& functions, const std::string& path, RunManifest manifest) {
    std::string text;
    for (const auto& f : functions) text += format_vectorial(f) + "\n";
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InvalidArgument("cannot write " + path);
        out << text;
    }
    if (manifest.started.empty()) manifest.started = utc_timestamp();
    manifest.stats["count"] = functions.size();
    manifest.stats["content_digest"] = digest_of(text).hex();
    manifest.finished = utc_timestamp();
    std::ofstream(path + ".manifest.json") << manifest.to_json().dump(2) << "\n";
}

}  // namespace apn
