#include "apnkit/extension.hpp"

#include <algorithm>
#include <bit>
#include <atomic>
#include <chrono>
#include <numeric>

#include <omp.h>

#include "apnkit/errors.hpp"
#include "apnkit/kernels.hpp"

namespace apn {

QuadrupleSet quadruple_set(const VectorialFunction& f) {
    QuadrupleSet out{f, {}};
    const auto q = static_cast<std::uint32_t>(f.size());
    for (std::uint32_t x = 0; x < q; ++x)
        for (std::uint32_t y = x + 1; y < q; ++y) {
            const std::uint32_t sxy = f(x) ^ f(y);
            for (std::uint32_t z = y + 1; z < q; ++z) {
                const std::uint32_t t = x ^ y ^ z;
                if (t > z && (sxy ^ f(z) ^ f(t)) == 0) out.quads.push_back({x, y, z, t});
            }
        }
    return out;
}

std::uint32_t delta_bound(int m, int n) {
    if (n > m + 1) return 1;
    return 1u << (m - n + 1);
}

bool delta_filter(const VectorialFunction& f) {
    return differential_uniformity_at_most(f, delta_bound(f.in_dim(), f.out_dim()));
}

std::size_t AffineSystem::v_index(std::uint32_t x, std::uint32_t y) const {
    if (x > y) std::swap(x, y);
    const std::size_t X = x;
    return q + X * q - X * (X + 1) / 2 + (y - x - 1);
}

AffineSystem build_system(const QuadrupleSet& quads) {
    const auto& f = quads.base;
    if (f.out_dim() != f.in_dim() - 2) throw InvalidArgument("extension system needs an (m, m-2)-function");
    AffineSystem sys;
    sys.q = f.size();
    sys.num_vars = sys.q * (sys.q + 1) / 2;
    sys.rows = Gf2Matrix(quads.quads.size(), sys.num_vars + 1);
    for (std::size_t r = 0; r < quads.quads.size(); ++r) {
        const auto& p = quads.quads[r];
        for (int i = 0; i < 4; ++i) {
            sys.rows.set(r, AffineSystem::u_index(p[static_cast<std::size_t>(i)]));
            for (int j = i + 1; j < 4; ++j)
                sys.rows.set(r, sys.v_index(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]));
        }
        sys.rows.set(r, sys.num_vars);
    }
    return sys;
}

Gf2Solution solve_gf2(const AffineSystem& system) { return solve_affine(system.rows, system.num_vars); }

std::string to_string(ExtensionOutcome o) {
    switch (o) {
        case ExtensionOutcome::RejectedDelta: return "RejectedDelta";
        case ExtensionOutcome::RejectedSystem: return "RejectedSystem";
        case ExtensionOutcome::Pass: return "Pass";
    }
    return "?";
}

ExtensionVerdict extension_test(const VectorialFunction& f) {
    if (f.out_dim() != f.in_dim() - 2) throw InvalidArgument("extension test needs an (m, m-2)-function");
    ExtensionVerdict v;
    v.delta_bound = delta_bound(f.in_dim(), f.out_dim());
    v.delta = kernels::differential_uniformity(f);
    if (v.delta > v.delta_bound) {
        v.outcome = ExtensionOutcome::RejectedDelta;
        return v;
    }
    auto sys = build_system(quadruple_set(f));
    auto sol = solve_gf2(sys);
    v.equations = sys.equations();
    v.rank = sol.rank;
    v.free_count = sol.free_count;
    if (!sol.solvable) {
        v.outcome = ExtensionOutcome::RejectedSystem;
        v.witness = sol.witness;
        v.witness_verified = verify_witness(sys.rows, sys.num_vars, v.witness);
        if (!v.witness_verified) throw ConsistencyError("inconsistency certificate does not re-sum to 0 = 1");
        return v;
    }
    v.outcome = ExtensionOutcome::Pass;
    return v;
}

namespace {

constexpr std::uint8_t kUnassigned = 0xff;

// Shared search configuration; each worker owns a Completer with its state.
struct SearchShape {
    std::size_t q = 0;
    std::vector<std::array<std::uint32_t, 4>> quads;
    std::vector<std::vector<std::uint32_t>> incident;   // point -> quad ids
    std::vector<std::uint32_t> fixed;                   // normalised points, value 0
    std::vector<std::uint32_t> order;                   // free points, most incident first
};

struct SharedBudget {
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint64_t> solutions{0};
    std::atomic<bool> stop{false};
    std::uint64_t max_nodes = 0;
    std::uint64_t max_solutions = 0;
    double max_seconds = 0;
    std::chrono::steady_clock::time_point start;
};

class Completer {
public:
    explicit Completer(const SearchShape& shape)
        : shape_(shape),
          value_(shape.q, kUnassigned),
          domain_(shape.q, 0xf),
          count_(shape.quads.size(), 0),
          sum_(shape.quads.size(), 0) {}

    // Returns false on a conflict; the assignment is recorded either way and
    // must be undone with unassign().
    bool assign(std::uint32_t x, std::uint8_t val) {
        value_[x] = val;
        bool ok = true;
        for (auto qi : shape_.incident[x]) {
            const std::uint8_t c = ++count_[qi];
            sum_[qi] ^= val;
            if (c == 3) {
                const auto& quad = shape_.quads[qi];
                std::uint32_t open = 0;
                for (auto p : quad)
                    if (value_[p] == kUnassigned) open = p;
                const std::uint8_t banned = static_cast<std::uint8_t>(1u << sum_[qi]);
                if (domain_[open] & banned) {
                    trail_.emplace_back(open, domain_[open]);
                    domain_[open] &= static_cast<std::uint8_t>(~banned);
                    if (domain_[open] == 0) ok = false;
                }
            } else if (c == 4 && sum_[qi] == 0) {
                ok = false;
            }
        }
        return ok;
    }

    void unassign(std::uint32_t x, std::size_t mark) {
        const std::uint8_t val = value_[x];
        for (auto qi : shape_.incident[x]) {
            --count_[qi];
            sum_[qi] ^= val;
        }
        value_[x] = kUnassigned;
        while (trail_.size() > mark) {
            domain_[trail_.back().first] = trail_.back().second;
            trail_.pop_back();
        }
    }

    std::size_t mark() const { return trail_.size(); }
    std::uint8_t domain(std::uint32_t x) const { return domain_[x]; }
    const std::vector<std::uint8_t>& values() const { return value_; }

    /// Unassigned point with the fewest remaining values; ties go to the
    /// point with more incident quadruples, then the lower rank in `order`.
    /// Returns false when every point is assigned.
    bool pick(std::uint32_t& out) const {
        int best = 5;
        for (auto x : shape_.order) {
            if (value_[x] != kUnassigned) continue;
            const int size = std::popcount(static_cast<unsigned>(domain_[x]));
            if (size < best) {
                best = size;
                out = x;
                if (size <= 1) break;
            }
        }
        return best != 5;
    }

    template <typename Emit>
    void search(SharedBudget& budget, Emit&& emit) {
        if (budget.stop.load(std::memory_order_relaxed)) return;
        std::uint32_t x;
        if (!pick(x)) {
            const std::uint64_t n = budget.solutions.fetch_add(1) + 1;
            if (budget.max_solutions && n > budget.max_solutions) {
                budget.stop.store(true);
                return;
            }
            emit(value_);
            if (budget.max_solutions && n == budget.max_solutions) budget.stop.store(true);
            return;
        }
        for (std::uint8_t val = 0; val < 4; ++val) {
            if (!((domain_[x] >> val) & 1)) continue;
            if (!charge(budget)) return;
            const std::size_t m = mark();
            if (assign(x, val)) search(budget, emit);
            unassign(x, m);
            if (budget.stop.load(std::memory_order_relaxed)) return;
        }
    }

private:
    static bool charge(SharedBudget& budget) {
        const std::uint64_t n = budget.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (budget.max_nodes && n > budget.max_nodes) {
            budget.stop.store(true);
            return false;
        }
        if (budget.max_seconds > 0 && (n & 1023) == 0) {
            std::chrono::duration<double> dt = std::chrono::steady_clock::now() - budget.start;
            if (dt.count() > budget.max_seconds) {
                budget.stop.store(true);
                return false;
            }
        }
        return true;
    }

    const SearchShape& shape_;
    std::vector<std::uint8_t> value_;
    std::vector<std::uint8_t> domain_;
    std::vector<std::uint8_t> count_;
    std::vector<std::uint8_t> sum_;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> trail_;
};

SearchShape make_shape(const VectorialFunction& f, bool normalize) {
    SearchShape s;
    s.q = f.size();
    s.quads = quadruple_set(f).quads;
    s.incident.resize(s.q);
    for (std::uint32_t i = 0; i < s.quads.size(); ++i)
        for (auto p : s.quads[i]) s.incident[p].push_back(i);
    std::vector<bool> is_fixed(s.q, false);
    if (normalize) {
        s.fixed.push_back(0);
        for (int i = 0; i < f.in_dim(); ++i) s.fixed.push_back(1u << i);
        for (auto p : s.fixed) is_fixed[p] = true;
    }
    for (std::uint32_t x = 0; x < s.q; ++x)
        if (!is_fixed[x]) s.order.push_back(x);
    // Most constrained points first; ties by index keep the order deterministic.
    std::stable_sort(s.order.begin(), s.order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return s.incident[a].size() > s.incident[b].size();
    });
    return s;
}

}  // namespace

CompletionResult backtrack_complete(const VectorialFunction& f, const CompletionOptions& opts) {
    if (f.out_dim() != f.in_dim() - 2) throw InvalidArgument("completion needs an (m, m-2)-function");
    const auto t0 = std::chrono::steady_clock::now();
    const SearchShape shape = make_shape(f, opts.normalize);

    SharedBudget budget;
    budget.max_nodes = opts.max_nodes;
    budget.max_seconds = opts.max_seconds;
    budget.max_solutions = opts.max_solutions;
    budget.start = t0;

    CompletionResult result;
    Completer root(shape);
    bool feasible = true;
    for (auto p : shape.fixed) feasible = root.assign(p, 0) && feasible;

    std::vector<std::vector<std::uint8_t>> found;
    if (feasible) {
        int depth = opts.split_depth;
        if (depth < 0) depth = max_threads() > 1 ? 6 : 0;

        // Enumerate consistent prefixes serially, then finish each in parallel.
        using Prefix = std::vector<std::pair<std::uint32_t, std::uint8_t>>;
        std::vector<Prefix> prefixes;
        Prefix prefix;
        auto collect = [&](auto&& self, int d) -> void {
            std::uint32_t x;
            if (d == depth || !root.pick(x)) {
                prefixes.push_back(prefix);
                return;
            }
            for (std::uint8_t val = 0; val < 4; ++val) {
                if (!((root.domain(x) >> val) & 1)) continue;
                const std::size_t m = root.mark();
                if (root.assign(x, val)) {
                    prefix.emplace_back(x, val);
                    self(self, d + 1);
                    prefix.pop_back();
                }
                root.unassign(x, m);
            }
        };
        collect(collect, 0);

        std::vector<std::vector<std::vector<std::uint8_t>>> per_task(prefixes.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(prefixes.size()); ++i) {
            Completer worker(shape);
            bool ok = true;
            for (auto p : shape.fixed) ok = worker.assign(p, 0) && ok;
            for (auto [x, val] : prefixes[static_cast<std::size_t>(i)]) ok = worker.assign(x, val) && ok;
            if (!ok) continue;
            worker.search(budget, [&](const std::vector<std::uint8_t>& g) {
                per_task[static_cast<std::size_t>(i)].push_back(g);
            });
        }
        for (auto& v : per_task)
            for (auto& g : v) found.push_back(std::move(g));
    }

    result.nodes = budget.nodes.load();
    result.exhaustive = !budget.stop.load();
    for (const auto& g : found) {
        auto full = extend(f, g);
        if (kernels::differential_uniformity(full, 2) != 2)
            throw ConsistencyError("backtracking emitted a non-APN completion");
        result.completions.push_back(std::move(full));
    }
    std::sort(result.completions.begin(), result.completions.end());
    result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace apn
