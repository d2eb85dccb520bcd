// Command-line front end. Every subcommand reads the text formats of
// textio.hpp and prints JSON (one object per input line) or aligned text.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "apnkit/affine.hpp"
#include "apnkit/errors.hpp"
#include "apnkit/extension.hpp"
#include "apnkit/gf2m.hpp"
#include "apnkit/invariants.hpp"
#include "apnkit/kernels.hpp"
#include "apnkit/manifest.hpp"
#include "apnkit/pipeline.hpp"
#include "apnkit/textio.hpp"
#include "apnkit/vectorial.hpp"

using namespace apn;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
    int m = 6;
    int n = 0;   // 0: same as m
    int threads = 0;
    std::string format = "json";
    std::uint64_t budget_nodes = 0;
    double budget_seconds = 0;
    std::string config;
    std::string manifest;
    int out_n() const { return n ? n : m; }
};

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return digest_of(ss.str()).hex();
}

// Aligned text rendering of a JSON value: nested objects indent, arrays of
// flat objects become tables.
void render_text(const json& j, std::ostream& os, int indent = 0);

bool flat_object(const json& j) {
    if (!j.is_object()) return false;
    for (const auto& [k, v] : j.items())
        if (v.is_structured()) return false;
    return true;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render_table(const json& rows, std::ostream& os, int indent) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : rows.front().items()) keys.push_back(k);
    std::vector<std::size_t> width(keys.size());
    for (std::size_t c = 0; c < keys.size(); ++c) width[c] = keys[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < keys.size(); ++c)
            width[c] = std::max(width[c], r.contains(keys[c]) ? scalar_text(r[keys[c]]).size() : 0);
    auto line = [&](auto cell) {
        os << std::string(static_cast<std::size_t>(indent), ' ');
        for (std::size_t c = 0; c < keys.size(); ++c) os << std::left << std::setw(static_cast<int>(width[c]) + 2) << cell(c);
        os << "\n";
    };
    line([&](std::size_t c) { return keys[c]; });
    for (const auto& r : rows) line([&](std::size_t c) { return r.contains(keys[c]) ? scalar_text(r[keys[c]]) : ""; });
}

void render_text(const json& j, std::ostream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        std::size_t w = 0;
        for (const auto& [k, v] : j.items()) w = std::max(w, k.size());
        for (const auto& [k, v] : j.items()) {
            if (v.is_array() && !v.empty() && flat_object(v.front())) {
                os << pad << k << ":\n";
                render_table(v, os, indent + 2);
            } else if (v.is_structured() && !v.empty()) {
                os << pad << k << ":\n";
                render_text(v, os, indent + 2);
            } else {
                os << pad << std::left << std::setw(static_cast<int>(w) + 2) << k << scalar_text(v) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_structured()) {
                render_text(v, os, indent);
                os << "\n";
            } else {
                os << pad << scalar_text(v) << "\n";
            }
        }
    } else {
        os << pad << scalar_text(j) << "\n";
    }
}

void emit(const json& j, const Globals& g) {
    if (g.format == "text") render_text(j, std::cout);
    else std::cout << j.dump() << "\n";
    std::cout.flush();
}

json sourced(const std::string& src, const json& body) {
    json j{{"source", src}};
    j.update(body);
    return j;
}

json multiset_json(const AbsMultiset& ms) {
    json j = json::object();
    for (auto [v, c] : ms) j[std::to_string(v)] = c;
    return j;
}

json profile_json(const SpectralProfile& p) {
    json levels = json::array();
    for (const auto& [k, lvl] : p.levels)
        levels.push_back({{"kappa", k.fraction()},
                          {"count", lvl.count},
                          {"degrees", std::vector<int>(lvl.degrees.begin(), lvl.degrees.end())},
                          {"subspace", lvl.subspace}});
    json ks = json::array();
    for (const auto& k : p.level_set()) ks.push_back(k.fraction());
    return {{"K_F", ks}, {"levels", levels}, {"kappa_sum", p.kappa_sum.fraction()}};
}

class Manifested {
public:
    Manifested(const Globals& g, std::string command) : g_(g) {
        man_.command = std::move(command);
        man_.started = utc_timestamp();
    }
    void input(const std::string& path) { man_.inputs.emplace_back(path, file_digest(path)); }
    json& stats() { return man_.stats; }
    RunManifest& manifest() { return man_; }
    json finish() {
        man_.finished = utc_timestamp();
        return man_.to_json();
    }
    void write(const std::string& path = {}) {
        const std::string target = path.empty() ? g_.manifest : path;
        if (target.empty()) return;
        std::ofstream(target) << finish().dump(2) << "\n";
    }

private:
    const Globals& g_;
    RunManifest man_;
};

// ---- analyze ---------------------------------------------------------------

json analyze(const VectorialFunction& f) {
    json j;
    j["m"] = f.in_dim();
    j["n"] = f.out_dim();
    j["delta"] = kernels::differential_uniformity(f);
    bool apn_flag = false;
    if (f.in_dim() == f.out_dim()) {
        const auto v = is_apn(f);
        apn_flag = v.apn;
        j["apn"] = v.apn;
        j["criteria"] = {{"i_delta_two", v.criterion_i},
                         {"ii_no_zero_flat", v.criterion_ii},
                         {"iii_n4_equals_t4", v.criterion_iii},
                         {"iv_kappa_sum", v.criterion_iv},
                         {"kappa_sum", v.kappa_sum.fraction()}};
    }
    j["N4"] = to_string(n_r(f, 4));
    if (apn_flag || f.in_dim() <= 6) {
        j["T4"] = to_string(t_r(f, 4));
        j["T6"] = to_string(t_r(f, 6));
    }
    j["spectral"] = profile_json(spectral_profile(f));
    j["bent_components"] = bent_component_count(f);
    j["mnbc"] = f.in_dim() % 2 == 0 && is_mnbc(f);
    if (apn_flag) {
        j["crooked"] = is_crooked(f);
        std::map<int, int> hist;
        for (std::uint32_t u = 1; u < f.size(); ++u) ++hist[degree(counting_function(f, u))];
        json h = json::object();
        for (auto [d, c] : hist) h[std::to_string(d)] = c;
        j["counting_degrees"] = h;
    }
    return j;
}

int cmd_analyze(const Globals& g, const std::vector<std::string>& files) {
    Manifested man(g, "analyze");
    std::uint64_t count = 0;
    for (const auto& path : files) {
        man.input(path);
        std::ifstream in(path);
        if (!in) throw InvalidArgument("cannot open " + path);
        try {
            read_vectorial_lines(in, g.out_n(), [&](VectorialFunction f, std::size_t line) {
                emit(sourced(path + ":" + std::to_string(line), analyze(f)), g);
                ++count;
            });
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    man.stats()["functions"] = count;
    man.write();
    return 0;
}

// ---- Boolean commands ------------------------------------------------------

template <typename Fn>
int for_each_boolean(const Globals& g, const std::string& command, const std::vector<std::string>& files, Fn fn) {
    Manifested man(g, command);
    std::uint64_t count = 0;
    for (const auto& path : files) {
        man.input(path);
        std::ifstream in(path);
        if (!in) throw InvalidArgument("cannot open " + path);
        read_boolean_lines(in, g.m, [&](BooleanFunction f, std::size_t line) {
            json j{{"source", path + ":" + std::to_string(line)}, {"f", f.to_hex()}};
            j.update(fn(f));
            emit(j, g);
            ++count;
        });
    }
    man.stats()["functions"] = count;
    man.write();
    return 0;
}

json spectrum(const BooleanFunction& f) {
    const auto w = walsh_transform(f);
    return {{"walsh", w},
            {"abs_multiset", multiset_json(abs_multiset(w))},
            {"kappa", kappa(w, f.vars()).fraction()},
            {"moments", {{"4", moment(4, w, f.vars()).fraction()}, {"6", moment(6, w, f.vars()).fraction()}}},
            {"linearity", linearity(w)},
            {"nonlinearity", nonlinearity(f)},
            {"bent", is_bent(w, f.vars())},
            {"degree", degree(f)}};
}

std::string monomial_text(std::uint32_t subset) {
    if (!subset) return "1";
    std::string out;
    for (int i = 0; i < 32; ++i)
        if ((subset >> i) & 1) out += "x" + std::to_string(i + 1);
    return out;
}

json anf_json(const BooleanFunction& f) {
    const auto a = anf(f);
    json mons = json::array();
    for (std::uint32_t s = 0; s < f.size(); ++s)
        if (a(s)) mons.push_back(monomial_text(s));
    return {{"anf", a.to_hex()}, {"monomials", mons}, {"degree", degree(f)}};
}

// ---- vectorial commands ----------------------------------------------------

template <typename Fn>
int for_each_vectorial(Manifested& man, const std::vector<std::string>& files, int n, Fn fn) {
    std::uint64_t count = 0;
    for (const auto& path : files) {
        man.input(path);
        std::ifstream in(path);
        if (!in) throw InvalidArgument("cannot open " + path);
        read_vectorial_lines(in, n, [&](VectorialFunction f, std::size_t line) {
            fn(f, path + ":" + std::to_string(line));
            ++count;
        });
    }
    man.stats()["functions"] = count;
    return 0;
}

json ccz_json(const CczSignature& s) {
    json diff = json::object();
    for (auto [v, c] : s.differential_spectrum) diff[std::to_string(v)] = c;
    return {{"gamma_rank", s.gamma_rank},
            {"delta_rank", s.delta_rank},
            {"extended_walsh", multiset_json(s.extended_walsh)},
            {"differential_spectrum", diff},
            {"digest", s.digest().hex()}};
}

json ext_json(const ExtensionVerdict& v) {
    json j{{"outcome", to_string(v.outcome)}, {"delta", v.delta}, {"delta_bound", v.delta_bound}};
    if (v.outcome != ExtensionOutcome::RejectedDelta) {
        j["equations"] = v.equations;
        j["rank"] = v.rank;
        j["free_count"] = v.free_count;
    }
    if (v.outcome == ExtensionOutcome::RejectedSystem) {
        j["certificate"] = v.witness;
        j["certificate_verified"] = v.witness_verified;
    }
    if (v.outcome == ExtensionOutcome::Pass) j["meaning"] = ExtensionVerdict::kPassMeaning;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analysis of Boolean and vectorial Boolean functions; APN extension search"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--m", g.m, "number of variables of Boolean inputs")->envname("APNKIT_M")->check(CLI::Range(1, 20));
    app.add_option("--n", g.n, "output dimension of vectorial inputs (default: m)")->envname("APNKIT_N");
    app.add_option("--threads", g.threads, "OpenMP threads (0: runtime default)")->envname("APNKIT_THREADS");
    app.add_option("--format", g.format, "json or text")->envname("APNKIT_FORMAT")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--budget-nodes", g.budget_nodes, "node budget per completion job")->envname("APNKIT_BUDGET_NODES");
    app.add_option("--budget-seconds", g.budget_seconds, "time budget per completion job")
        ->envname("APNKIT_BUDGET_SECONDS");
    app.add_option("--config", g.config, "search configuration file")->envname("APNKIT_CONFIG");
    app.add_option("--manifest", g.manifest, "write a run manifest to this path");

    std::vector<std::string> files;
    auto* analyze_cmd = app.add_subcommand("analyze", "differential and spectral report per vectorial function");
    analyze_cmd->add_option("files", files, "function files")->required();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Walsh spectrum of Boolean functions");
    spectrum_cmd->add_option("files", files, "truth-table files")->required();

    auto* anf_cmd = app.add_subcommand("anf", "algebraic normal form of Boolean functions");
    anf_cmd->add_option("files", files, "truth-table files")->required();

    std::string kind = "w";
    auto* inv_cmd = app.add_subcommand("invariant", "EA invariants (w, I for Boolean input; Jprime for vectorial)");
    inv_cmd->add_option("--kind", kind)->check(CLI::IsMember({"w", "I", "Jprime"}));
    inv_cmd->add_option("files", files)->required();

    std::string kappa_file;
    std::uint64_t q = 64;
    bool subspace_only = false;
    auto* pairs_cmd = app.add_subcommand("pairs", "(alpha, A, beta, B) solutions for a set of kappa values");
    pairs_cmd->add_option("kappas", kappa_file, "file of rationals")->required();
    pairs_cmd->add_option("--q", q, "2^m");
    pairs_cmd->add_flag("--subspace-only", subspace_only, "keep pairs where A or B is 2^k - 1");

    auto* ext_cmd = app.add_subcommand("ext-test", "extension test on (m, m-2)-functions");
    ext_cmd->add_option("files", files)->required();

    std::string out_path;
    bool no_normalize = false;
    std::uint64_t max_solutions = 0;
    auto* complete_cmd = app.add_subcommand("complete", "all APN completions of (m, m-2)-functions");
    complete_cmd->add_option("files", files)->required();
    complete_cmd->add_option("--out", out_path, "write completions here (default: stdout)");
    complete_cmd->add_flag("--no-normalize", no_normalize, "do not fix g on 0 and the unit vectors");
    complete_cmd->add_option("--max-solutions", max_solutions, "stop after this many completions per input");

    std::string output_dir;
    auto* search_cmd = app.add_subcommand("search", "staged extension search from a configuration file");
    search_cmd->add_option("--output-dir", output_dir, "overrides output_dir of the configuration");

    auto* ccz_cmd = app.add_subcommand("ccz-sig", "CCZ-invariant signature of vectorial functions");
    ccz_cmd->add_option("files", files)->required();

    std::string gen_kind;
    std::uint64_t exponent = 3;
    std::uint32_t modulus = 0;
    int trunc_n = 0;
    auto* gen_cmd = app.add_subcommand("gen", "reference functions: power, bent, truncate");
    gen_cmd->add_option("kind", gen_kind)->required()->check(CLI::IsMember({"power", "bent", "truncate"}));
    gen_cmd->add_option("--d", exponent, "exponent of the power function");
    gen_cmd->add_option("--modulus", modulus, "field modulus as an integer (default: built-in primitive)");
    gen_cmd->add_option("--keep", trunc_n, "coordinates kept by truncate");
    gen_cmd->add_option("files", files, "inputs of truncate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (g.threads > 0) set_threads(g.threads);

        if (*analyze_cmd) return cmd_analyze(g, files);
        if (*spectrum_cmd) return for_each_boolean(g, "spectrum", files, spectrum);
        if (*anf_cmd) return for_each_boolean(g, "anf", files, anf_json);

        if (*inv_cmd) {
            if (kind == "Jprime") {
                Manifested man(g, "invariant");
                InvariantCache cache;
                for_each_vectorial(man, files, g.out_n(), [&](const VectorialFunction& f, const std::string& src) {
                    auto jp = cache.j_prime(f);
                    json inner = json::array();
                    for (const auto& d : jp.inner) inner.push_back(d.hex());
                    emit({{"source", src}, {"kind", "Jprime"}, {"digest", jp.digest.hex()}, {"components", inner}}, g);
                });
                man.write();
                return 0;
            }
            return for_each_boolean(g, "invariant", files, [&](const BooleanFunction& f) {
                if (kind == "w")
                    return json{{"kind", "w"},
                                {"multiset", multiset_json(walsh_abs_multiset(f))},
                                {"digest", digest_w(f).digest.hex()}};
                const auto inv = inv_I(f);
                return json{{"kind", "I"}, {"digest", inv.digest.hex()}, {"size", inv.inner.size()}};
            });
        }

        if (*pairs_cmd) {
            Manifested man(g, "pairs");
            man.input(kappa_file);
            std::ifstream in(kappa_file);
            if (!in) throw InvalidArgument("cannot open " + kappa_file);
            // The solver wants a set; a table of pairs naturally repeats values.
            auto kappas = read_rationals(in);
            const auto listed = kappas.size();
            std::sort(kappas.begin(), kappas.end());
            kappas.erase(std::unique(kappas.begin(), kappas.end()), kappas.end());
            man.stats()["duplicates_collapsed"] = listed - kappas.size();
            json rows = json::array();
            for (const auto& p : pair_solver(kappas, q, subspace_only))
                rows.push_back({{"alpha", p.alpha.decimal()}, {"A", p.a}, {"beta", p.beta.decimal()}, {"B", p.b}});
            man.stats()["pairs"] = rows.size();
            if (g.format == "text") {
                if (!rows.empty()) render_table(rows, std::cout, 0);
            } else {
                std::cout << json{{"q", q}, {"pairs", rows}}.dump() << "\n";
            }
            man.write();
            return 0;
        }

        if (*ext_cmd) {
            Manifested man(g, "ext-test");
            const int n = g.n ? g.n : g.m - 2;
            std::map<std::string, std::uint64_t> tally;
            for_each_vectorial(man, files, n, [&](const VectorialFunction& f, const std::string& src) {
                const auto v = extension_test(f);
                ++tally[to_string(v.outcome)];
                emit(sourced(src, ext_json(v)), g);
            });
            for (const auto& [k, c] : tally) man.stats()[k] = c;
            man.write();
            return 0;
        }

        if (*complete_cmd) {
            Manifested man(g, "complete");
            const int n = g.n ? g.n : g.m - 2;
            CompletionOptions opts;
            opts.normalize = !no_normalize;
            opts.max_nodes = g.budget_nodes;
            opts.max_seconds = g.budget_seconds;
            opts.max_solutions = max_solutions;
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw InvalidArgument("cannot write " + out_path);
            }
            std::ostream& out = out_path.empty() ? std::cout : file;
            json jobs = json::array();
            std::uint64_t total = 0;
            for_each_vectorial(man, files, n, [&](const VectorialFunction& f, const std::string& src) {
                const auto res = backtrack_complete(f, opts);
                for (const auto& c : res.completions) out << format_vectorial(c) << "\n";
                total += res.completions.size();
                jobs.push_back({{"source", src},
                                {"seed_digest", digest_of(format_vectorial(f)).hex()},
                                {"solutions", res.completions.size()},
                                {"nodes", res.nodes},
                                {"exhaustive", res.exhaustive},
                                {"elapsed_seconds", res.elapsed_seconds}});
            });
            man.stats()["normalize"] = opts.normalize;
            man.stats()["solutions"] = total;
            man.stats()["jobs"] = jobs;
            if (!out_path.empty()) man.write(g.manifest.empty() ? out_path + ".manifest.json" : g.manifest);
            else if (!g.manifest.empty()) man.write();
            else std::cerr << man.finish().dump() << "\n";
            return 0;
        }

        if (*search_cmd) {
            if (g.config.empty()) throw InvalidArgument("search needs --config");
            auto cfg = SearchConfig::from_file(g.config);
            cfg.apply_env();
            if (!output_dir.empty()) cfg.output_dir = output_dir;
            if (g.threads > 0) cfg.threads = g.threads;
            if (g.budget_nodes) cfg.budget_nodes = g.budget_nodes;
            if (g.budget_seconds > 0) cfg.budget_seconds = g.budget_seconds;
            Manifested man(g, "search");
            man.input(g.config);
            const auto report = run_search(cfg);
            man.manifest().config_digest = report.config_digest;
            man.stats()["completions"] = report.completions.size();
            man.stats()["exhaustive"] = report.exhaustive;
            auto j = report.to_json();
            if (g.format == "text") {
                j.erase("functions");
                render_text(j, std::cout);
            } else {
                std::cout << j.dump(2) << "\n";
            }
            if (!cfg.output_dir.empty())
                man.write(g.manifest.empty() ? cfg.output_dir + "/search.manifest.json" : g.manifest);
            else
                man.write();
            return 0;
        }

        if (*ccz_cmd) {
            Manifested man(g, "ccz-sig");
            for_each_vectorial(man, files, g.out_n(), [&](const VectorialFunction& f, const std::string& src) {
                emit(sourced(src, ccz_json(ccz_signature(f))), g);
            });
            man.write();
            return 0;
        }

        if (*gen_cmd) {
            if (gen_kind == "power") {
                const Gf2mField field(g.m, modulus ? modulus : default_modulus(g.m));
                std::cout << format_vectorial(power_function(exponent, field)) << "\n";
            } else if (gen_kind == "bent") {
                if (g.m % 2) throw InvalidArgument("bent functions need an even number of variables");
                // x1 x2 + x3 x4 + ...
                BooleanFunction f(g.m);
                for (int i = 0; i < g.m; i += 2) f ^= BooleanFunction::monomial(g.m, 3u << i);
                std::cout << f.to_hex() << "\n";
            } else {
                if (trunc_n <= 0) throw InvalidArgument("truncate needs --keep");
                for (const auto& path : files)
                    for (const auto& f : read_vectorial_file(path, g.out_n()))
                        std::cout << format_vectorial(truncate(f, trunc_n)) << "\n";
            }
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
