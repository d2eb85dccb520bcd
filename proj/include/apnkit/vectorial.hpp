#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apnkit/boolean_function.hpp"
#include "apnkit/rational.hpp"

namespace apn {

/// F : F_2^m -> F_2^n given by its 2^m images. Coordinate i (0-based) is bit i
/// of every image.
class VectorialFunction {
public:
    VectorialFunction() = default;
    VectorialFunction(int m, int n, std::vector<std::uint32_t> images);

    int in_dim() const { return m_; }
    int out_dim() const { return n_; }
    std::size_t size() const { return images_.size(); }
    std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
    const std::vector<std::uint32_t>& images() const { return images_; }

    bool operator==(const VectorialFunction&) const = default;
    auto operator<=>(const VectorialFunction&) const = default;

    static VectorialFunction identity(int m);

private:
    int m_ = 0;
    int n_ = 0;
    std::vector<std::uint32_t> images_;
};

/// x -> b.F(x). b = 0 gives the null function.
BooleanFunction component(const VectorialFunction& f, std::uint32_t b);
BooleanFunction coordinate(const VectorialFunction& f, int i);

/// Maximum component degree.
int degree(const VectorialFunction& f);

/// Keeps the n' low-order coordinates.
VectorialFunction truncate(const VectorialFunction& f, int new_n);
/// Appends g as the new top coordinate.
VectorialFunction extend(const VectorialFunction& f, const BooleanFunction& g);
/// Appends a 2-bit valued map as two new top coordinates.
VectorialFunction extend(const VectorialFunction& f, const std::vector<std::uint8_t>& top);

/// N_F(u, v) for u != 0.
std::uint32_t diff_count(const VectorialFunction& f, std::uint32_t u, std::uint32_t v);
/// Row u of the DDT: N_F(u, v) for every v.
std::vector<std::uint32_t> ddt_row(const VectorialFunction& f, std::uint32_t u);
/// max over u != 0, v of N_F(u, v).
std::uint32_t differential_uniformity(const VectorialFunction& f);
/// True iff every DDT entry is <= bound. Rows are scanned with early exit.
bool differential_uniformity_at_most(const VectorialFunction& f, std::uint32_t bound);

/// Whether some 2-flat {x,y,z,t} has F(x)+F(y)+F(z)+F(t) = 0.
bool has_zero_flat(const VectorialFunction& f);

/// N_r via the component moments, summed over all 2^n components.
i128 n_r(const VectorialFunction& f, int r);
/// Trivial solutions of the r-term system. Closed form when `f` is APN,
/// enumeration otherwise.
i128 t_r(const VectorialFunction& f, int r);
/// (N_r - T_r) / r!; throws ConsistencyError when not an integer.
i128 q_r(const VectorialFunction& f, int r);
/// Closed forms valid for APN functions.
i128 t4_apn(std::uint64_t q);
i128 t6_apn(std::uint64_t q);
/// Direct enumeration of trivial solutions, r in {4, 6}; requires m <= 6.
i128 t_r_enumerated(const VectorialFunction& f, int r);

/// The four equivalent APN criteria evaluated independently.
struct ApnVerdict {
    bool apn = false;
    std::uint32_t delta = 0;           // (i)
    bool no_zero_flat = false;         // (ii)
    i128 n4 = 0;                       // (iii)
    i128 t4 = 0;
    Rational kappa_sum;                // (iv), nonzero components
    bool criterion_i = false;
    bool criterion_ii = false;
    bool criterion_iii = false;
    bool criterion_iv = false;
};

/// Requires m = n. Throws ConsistencyError if the criteria disagree.
ApnVerdict is_apn(const VectorialFunction& f);

/// n_u(v) = 1 iff N_F(u, v) = 2. Throws InvalidArgument for u = 0 or if some
/// N_F(u, v) lies outside {0, 2}.
BooleanFunction counting_function(const VectorialFunction& f, std::uint32_t u);

/// Checks W(n_u, b) = -(F_b x F_b)(u) for b != 0 and W(n_u, 0) = 0, comparing
/// the transform of n_u with directly computed autocorrelations.
bool verify_counting_link(const VectorialFunction& f, std::uint32_t u);

/// All counting functions affine.
bool is_crooked(const VectorialFunction& f);

std::uint32_t bent_component_count(const VectorialFunction& f);
/// m = 2k, n > k; count of bent components equals 2^n - 2^(n-k).
bool is_mnbc(const VectorialFunction& f);

struct SpectralLevel {
    std::uint32_t count = 0;
    std::set<int> degrees;
    /// Components at this level together with 0 form a linear subspace.
    bool subspace = false;
};

struct SpectralProfile {
    std::map<Rational, SpectralLevel> levels;
    Rational kappa_sum;

    std::set<Rational> level_set() const;
    std::uint32_t total() const;
};

SpectralProfile spectral_profile(const VectorialFunction& f);

/// K_F = {alpha, beta} exactly.
bool spectral_type(const SpectralProfile& p, const Rational& alpha, const Rational& beta);

struct PairSolution {
    Rational alpha;
    std::uint64_t a = 0;
    Rational beta;
    std::uint64_t b = 0;
    auto operator<=>(const PairSolution&) const = default;
};

/// Every (alpha, A, beta, B) with alpha < beta taken from `kappas` and
/// positive integers A, B satisfying alpha A + beta B = 2(q-1), A + B = q-1.
/// Throws InvalidArgument on repeated or non-positive values.
std::vector<PairSolution> pair_solver(const std::vector<Rational>& kappas, std::uint64_t q,
                                      bool subspace_only = false);

}  // namespace apn
