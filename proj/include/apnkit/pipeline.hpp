#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apnkit/boolean_function.hpp"
#include "apnkit/digest.hpp"
#include "apnkit/extension.hpp"
#include "apnkit/invariants.hpp"
#include "apnkit/manifest.hpp"
#include "apnkit/rational.hpp"
#include "apnkit/vectorial.hpp"

namespace apn {

enum class DedupMode { Extension, Parent, Off };

struct SearchConfig {
    int m = 6;
    Rational alpha{7, 4};
    Rational beta{4};
    /// Degree-4 components must sit at alpha, degree <= 3 components at beta.
    bool degree_policy = true;

    std::vector<BooleanFunction> seeds;
    std::vector<BooleanFunction> pool;

    // Where seeds and pool came from; recorded in the canonical form.
    std::string seeds_file;         // Boolean truth tables
    std::string seed_coordinates;   // vectorial file; admissible coordinates become seeds
    std::string pool_file;
    std::string pool_coordinates;
    /// "orbit:<count>:<seed>" adds f o A + l + c samples of the pool so far;
    /// "shift:<count>:<seed>" adds f + l + c samples.
    std::string pool_generator;

    DedupMode dedup = DedupMode::Extension;
    std::uint64_t max_level_members = 0;   // 0: unlimited
    bool normalize = true;
    std::uint64_t budget_nodes = 0;        // per completion job
    double budget_seconds = 0;             // per completion job
    std::uint64_t max_completions = 0;     // per completion job
    int threads = 0;
    std::string output_dir;
    bool resume = false;

    /// key = value lines, '#' comments, optional double quotes. Relative paths
    /// resolve against `base_dir`.
    static SearchConfig parse(std::istream& in, const std::string& base_dir = ".");
    static SearchConfig from_file(const std::string& path);
    /// Throws InvalidArgument on an unknown key or a bad value.
    void set(const std::string& key, const std::string& value, const std::string& base_dir = ".");
    /// PREFIX + upper-cased key, e.g. APNKIT_ALPHA.
    void apply_env(const std::string& prefix = "APNKIT_");
    /// Reads the files and runs the generator. Idempotent.
    void load_inputs();
    void validate() const;

    /// Sorted key=value text including the seed and pool contents.
    std::string canonical() const;
    Digest digest() const;

private:
    bool inputs_loaded_ = false;
};

std::string to_string(DedupMode d);

/// True iff h satisfies the (alpha, beta) component rule of `cfg`.
bool admissible_component(const BooleanFunction& h, const SearchConfig& cfg);

struct LevelMember {
    VectorialFunction f;
    Digest jprime;
    std::int64_t parent = -1;   // index in the previous level
    std::int64_t pool_index = -1;
};

struct LevelStats {
    std::uint64_t generated = 0;
    std::uint64_t rejected_type = 0;
    std::uint64_t rejected_delta = 0;
    std::uint64_t rejected_dup = 0;
    std::uint64_t kept = 0;
    bool truncated = false;
};

struct LevelSet {
    int level = 0;
    std::vector<LevelMember> members;
    LevelStats stats;
    /// Discarded duplicates: (kept member, dropped function) sharing a digest.
    std::vector<std::pair<std::string, std::string>> collisions;
};

/// Level 0 from the seeds (admissibility and dedup applied).
LevelSet initial_level(const SearchConfig& cfg, InvariantCache& cache);
/// ext(E): append each pool function to each member, filter, dedup.
LevelSet ext_operator(const LevelSet& e, const SearchConfig& cfg, InvariantCache& cache);

struct CompletionRecord {
    VectorialFunction f;
    std::size_t parent = 0;   // index in level 3
    SpectralProfile profile;
    bool typed = false;
    std::optional<CczSignature> signature;
};

struct SearchReport {
    std::string config_digest;
    std::vector<LevelSet> levels;
    std::uint64_t ext_tested = 0, ext_pass = 0, ext_rejected_delta = 0, ext_rejected_system = 0;
    std::uint64_t jobs = 0, job_nodes = 0, exhaustive_jobs = 0;
    std::vector<CompletionRecord> completions;
    bool exhaustive = true;
    std::map<std::string, double> timing;

    /// Deterministic content; timing appears only under "timing".
    nlohmann::ordered_json to_json(bool with_timing = true) const;
};

/// Levels 0..3, extension test, completion, classification. Writes
/// checkpoints and the report when cfg.output_dir is set.
SearchReport run_search(SearchConfig cfg);

std::vector<VectorialFunction> corpus_load(const std::string& path, int n);
/// Writes the functions one per line plus `path.manifest.json`.
void corpus_store(const std::vector<VectorialFunction>& functions, const std::string& path,
                  RunManifest manifest);

}  // namespace apn
