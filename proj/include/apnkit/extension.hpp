#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "apnkit/gf2_linalg.hpp"
#include "apnkit/vectorial.hpp"

namespace apn {

/// 2-flats {x<y<z<t}, t = x^y^z, on which the base function sums to zero.
struct QuadrupleSet {
    VectorialFunction base;
    std::vector<std::array<std::uint32_t, 4>> quads;
};

QuadrupleSet quadruple_set(const VectorialFunction& f);

/// 2^(m-n+1): the largest differential uniformity an (m,n)-function with an
/// APN extension can have.
std::uint32_t delta_bound(int m, int n);
/// Delta_F <= delta_bound(m, n). False proves there is no APN extension.
bool delta_filter(const VectorialFunction& f);

/// One equation per quadruple over the unknowns u_x ~ g(x)^3 and
/// v_{x,y} ~ g(x)g(y)(g(x)+g(y)), x < y, with right-hand side 1.
struct AffineSystem {
    std::size_t q = 0;
    std::size_t num_vars = 0;   // q(q+1)/2
    Gf2Matrix rows;             // num_vars coefficient columns + constant

    static std::size_t u_index(std::uint32_t x) { return x; }
    std::size_t v_index(std::uint32_t x, std::uint32_t y) const;
    std::size_t equations() const { return rows.rows(); }
};

/// Requires the base of `quads` to be an (m, m-2)-function.
AffineSystem build_system(const QuadrupleSet& quads);

Gf2Solution solve_gf2(const AffineSystem& system);

enum class ExtensionOutcome { RejectedDelta, RejectedSystem, Pass };
std::string to_string(ExtensionOutcome o);

struct ExtensionVerdict {
    ExtensionOutcome outcome = ExtensionOutcome::RejectedDelta;
    std::uint32_t delta = 0;
    std::uint32_t delta_bound = 0;
    std::size_t equations = 0;
    std::size_t rank = 0;
    std::size_t free_count = 0;
    /// Input equations summing to 0 = 1 (RejectedSystem only).
    std::vector<std::size_t> witness;
    bool witness_verified = false;

    /// Pass is a necessary condition only: the u/v unknowns are not tied to an
    /// actual GF(4)-valued g.
    static constexpr const char* kPassMeaning = "necessary condition for an APN extension, not sufficient";
};

/// Requires n = m - 2.
ExtensionVerdict extension_test(const VectorialFunction& f);

struct CompletionOptions {
    /// Force g(0) = 0 and g(e_i) = 0: one representative per coset of affine
    /// (m,2)-maps.
    bool normalize = true;
    std::uint64_t max_nodes = 0;     // 0: unlimited
    double max_seconds = 0;          // 0: unlimited
    std::uint64_t max_solutions = 0; // 0: unlimited
    /// Depth at which the search tree is cut into parallel tasks; -1 picks one
    /// from the thread count.
    int split_depth = -1;
};

struct CompletionResult {
    /// (m,m)-functions (F, g), sorted, each verified APN.
    std::vector<VectorialFunction> completions;
    std::uint64_t nodes = 0;
    bool exhaustive = true;
    double elapsed_seconds = 0;
};

/// Depth-first search over g : F_2^m -> GF(4) such that g sums to a nonzero
/// value on every quadruple of F. Throws ConsistencyError if an emitted
/// function fails the independent DDT check.
CompletionResult backtrack_complete(const VectorialFunction& f, const CompletionOptions& opts = {});

}  // namespace apn
