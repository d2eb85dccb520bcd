#include "apnkit/vectorial.hpp"

#include <algorithm>
#include <bit>

#include "apnkit/errors.hpp"
#include "apnkit/kernels.hpp"

namespace apn {

namespace {

int span_rank(std::vector<std::uint32_t> v) {
    int rank = 0;
    for (int bit = 31; bit >= 0; --bit) {
        auto pivot = std::find_if(v.begin() + rank, v.end(), [bit](std::uint32_t c) { return (c >> bit) & 1; });
        if (pivot == v.end()) continue;
        std::iter_swap(v.begin() + rank, pivot);
        for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < v.size(); ++i)
            if ((v[i] >> bit) & 1) v[i] ^= v[static_cast<std::size_t>(rank)];
        ++rank;
    }
    return rank;
}

// Calls visit(b, spectrum) for each b in [first, 2^n), in parallel where the
// full spectra table fits.
template <typename Visit>
void for_each_component_spectrum(const VectorialFunction& f, std::uint32_t first, Visit&& visit) {
    const std::uint32_t nb = 1u << f.out_dim();
    if (f.in_dim() + f.out_dim() <= 24) {
        auto all = kernels::component_spectra(f);
        const std::size_t q = f.size();
        for (std::uint32_t b = first; b < nb; ++b) {
            WalshSpectrum w(all.begin() + static_cast<std::ptrdiff_t>(b * q),
                            all.begin() + static_cast<std::ptrdiff_t>((b + 1) * q));
            visit(b, w);
        }
        return;
    }
    for (std::uint32_t b = first; b < nb; ++b) visit(b, walsh_transform(component(f, b)));
}

}  // namespace

VectorialFunction::VectorialFunction(int m, int n, std::vector<std::uint32_t> images)
    : m_(m), n_(n), images_(std::move(images)) {
    if (m < 1 || m > kMaxVars) throw InvalidArgument("input dimension must be in 1..16");
    if (n < 1 || n > kMaxVars) throw InvalidArgument("output dimension must be in 1..16");
    if (images_.size() != (std::size_t{1} << m))
        throw InvalidArgument("expected " + std::to_string(std::size_t{1} << m) + " images, got " +
                              std::to_string(images_.size()));
    const std::uint32_t limit = 1u << n;
    for (auto y : images_)
        if (y >= limit) throw InvalidArgument("image " + std::to_string(y) + " exceeds 2^n");
}

VectorialFunction VectorialFunction::identity(int m) {
    std::vector<std::uint32_t> img(std::size_t{1} << m);
    for (std::uint32_t x = 0; x < img.size(); ++x) img[x] = x;
    return VectorialFunction(m, m, std::move(img));
}

BooleanFunction component(const VectorialFunction& f, std::uint32_t b) {
    BooleanFunction g(f.in_dim());
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if (dot(b, f(x))) g.set(x, true);
    return g;
}

BooleanFunction coordinate(const VectorialFunction& f, int i) {
    if (i < 0 || i >= f.out_dim()) throw InvalidArgument("coordinate index out of range");
    return component(f, 1u << i);
}

int degree(const VectorialFunction& f) {
    // The maximum over all components is attained on a coordinate.
    int best = 0;
    for (int i = 0; i < f.out_dim(); ++i) best = std::max(best, degree(coordinate(f, i)));
    return best;
}

VectorialFunction truncate(const VectorialFunction& f, int new_n) {
    if (new_n < 1 || new_n >= f.out_dim()) throw InvalidArgument("truncation must keep 1..n-1 coordinates");
    std::vector<std::uint32_t> img(f.images());
    const std::uint32_t mask = (1u << new_n) - 1;
    for (auto& y : img) y &= mask;
    return VectorialFunction(f.in_dim(), new_n, std::move(img));
}

VectorialFunction extend(const VectorialFunction& f, const BooleanFunction& g) {
    if (g.vars() != f.in_dim()) throw InvalidArgument("extension coordinate has the wrong number of variables");
    if (f.out_dim() + 1 > kMaxVars) throw InvalidArgument("extension exceeds 16 output bits");
    std::vector<std::uint32_t> img(f.images());
    for (std::uint32_t x = 0; x < img.size(); ++x)
        if (g(x)) img[x] |= 1u << f.out_dim();
    return VectorialFunction(f.in_dim(), f.out_dim() + 1, std::move(img));
}

VectorialFunction extend(const VectorialFunction& f, const std::vector<std::uint8_t>& top) {
    if (top.size() != f.size()) throw InvalidArgument("extension map has the wrong length");
    if (f.out_dim() + 2 > kMaxVars) throw InvalidArgument("extension exceeds 16 output bits");
    std::vector<std::uint32_t> img(f.images());
    for (std::uint32_t x = 0; x < img.size(); ++x) {
        if (top[x] > 3) throw InvalidArgument("extension value outside GF(4)");
        img[x] |= static_cast<std::uint32_t>(top[x]) << f.out_dim();
    }
    return VectorialFunction(f.in_dim(), f.out_dim() + 2, std::move(img));
}

std::uint32_t diff_count(const VectorialFunction& f, std::uint32_t u, std::uint32_t v) {
    if (u == 0) throw InvalidArgument("input difference must be nonzero");
    if (u >= f.size()) throw InvalidArgument("input difference out of range");
    std::uint32_t n = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x) n += (f(x) ^ f(x ^ u)) == v;
    return n;
}

std::vector<std::uint32_t> ddt_row(const VectorialFunction& f, std::uint32_t u) {
    if (u == 0) throw InvalidArgument("input difference must be nonzero");
    std::vector<std::uint32_t> row(std::size_t{1} << f.out_dim(), 0);
    for (std::uint32_t x = 0; x < f.size(); ++x) ++row[f(x) ^ f(x ^ u)];
    return row;
}

std::uint32_t differential_uniformity(const VectorialFunction& f) { return kernels::differential_uniformity(f); }

bool differential_uniformity_at_most(const VectorialFunction& f, std::uint32_t bound) {
    return kernels::differential_uniformity(f, bound) <= bound;
}

bool has_zero_flat(const VectorialFunction& f) {
    const auto q = static_cast<std::uint32_t>(f.size());
    for (std::uint32_t x = 0; x < q; ++x)
        for (std::uint32_t y = x + 1; y < q; ++y) {
            const std::uint32_t sxy = f(x) ^ f(y);
            for (std::uint32_t z = y + 1; z < q; ++z) {
                const std::uint32_t t = x ^ y ^ z;
                if (t > z && (sxy ^ f(z) ^ f(t)) == 0) return true;
            }
        }
    return false;
}

i128 n_r(const VectorialFunction& f, int r) {
    if (r != 4 && r != 6) throw InvalidArgument("N_r is provided for r = 4 and r = 6");
    u128 total = 0;
    for_each_component_spectrum(f, 0, [&](std::uint32_t, const WalshSpectrum& w) {
        for (auto c : w) {
            u128 a = static_cast<u128>(c < 0 ? -static_cast<std::int64_t>(c) : c);
            u128 p = a * a * a * a;
            if (r == 6) p *= a * a;
            total += p;
        }
    });
    const int shift = f.in_dim() + f.out_dim();
    if ((total & ((static_cast<u128>(1) << shift) - 1)) != 0)
        throw ConsistencyError("spectral solution count is not an integer");
    return static_cast<i128>(total >> shift);
}

i128 t4_apn(std::uint64_t q) {
    const i128 Q = static_cast<i128>(q);
    return 3 * Q * Q - 2 * Q;
}

i128 t6_apn(std::uint64_t q) {
    const i128 Q = static_cast<i128>(q);
    return Q + 15 * Q * (Q - 1) + 15 * Q * (Q - 1) * (Q - 2);
}

i128 t_r_enumerated(const VectorialFunction& f, int r) { return kernels::trivial_solutions(f, r); }

i128 t_r(const VectorialFunction& f, int r) {
    if (r != 4 && r != 6) throw InvalidArgument("T_r is provided for r = 4 and r = 6");
    if (f.in_dim() == f.out_dim() && differential_uniformity_at_most(f, 2))
        return r == 4 ? t4_apn(f.size()) : t6_apn(f.size());
    return t_r_enumerated(f, r);
}

i128 q_r(const VectorialFunction& f, int r) {
    const i128 diff = n_r(f, r) - t_r(f, r);
    const i128 fact = r == 4 ? 24 : 720;
    if (diff < 0 || diff % fact != 0) throw ConsistencyError("(N_r - T_r) / r! is not a nonnegative integer");
    return diff / fact;
}

ApnVerdict is_apn(const VectorialFunction& f) {
    if (f.in_dim() != f.out_dim()) throw InvalidArgument("APN criteria apply to (m,m)-functions");
    const std::uint64_t q = f.size();
    ApnVerdict v;
    v.delta = differential_uniformity(f);
    v.criterion_i = v.delta == 2;
    v.no_zero_flat = !has_zero_flat(f);
    v.criterion_ii = v.no_zero_flat;
    v.n4 = n_r(f, 4);
    v.t4 = t4_apn(q);
    v.criterion_iii = v.n4 == v.t4;
    Rational sum;
    for_each_component_spectrum(f, 1, [&](std::uint32_t, const WalshSpectrum& w) { sum += kappa(w, f.in_dim()); });
    v.kappa_sum = sum;
    v.criterion_iv = sum == Rational(2 * static_cast<i128>(q - 1));
    v.apn = v.criterion_i;
    if (v.criterion_ii != v.apn || v.criterion_iii != v.apn || v.criterion_iv != v.apn)
        throw ConsistencyError("APN criteria (i)-(iv) disagree");
    return v;
}

BooleanFunction counting_function(const VectorialFunction& f, std::uint32_t u) {
    auto row = ddt_row(f, u);
    BooleanFunction n(f.out_dim());
    for (std::uint32_t v = 0; v < row.size(); ++v) {
        if (row[v] == 2)
            n.set(v, true);
        else if (row[v] != 0)
            throw InvalidArgument("counting function needs an APN function (N_F(u,v) = " + std::to_string(row[v]) +
                                  ")");
    }
    return n;
}

bool verify_counting_link(const VectorialFunction& f, std::uint32_t u) {
    const auto w = walsh_transform(counting_function(f, u));
    if (w[0] != 0) return false;
    for (std::uint32_t b = 1; b < w.size(); ++b) {
        std::int64_t corr = 0;
        for (std::uint32_t x = 0; x < f.size(); ++x) corr += dot(b, f(x) ^ f(x ^ u)) ? -1 : 1;
        if (w[b] != -corr) return false;
    }
    return true;
}

bool is_crooked(const VectorialFunction& f) {
    for (std::uint32_t u = 1; u < f.size(); ++u)
        if (degree(counting_function(f, u)) > 1) return false;
    return true;
}

std::uint32_t bent_component_count(const VectorialFunction& f) {
    std::uint32_t count = 0;
    for_each_component_spectrum(f, 1, [&](std::uint32_t, const WalshSpectrum& w) {
        if (is_bent(w, f.in_dim())) ++count;
    });
    return count;
}

bool is_mnbc(const VectorialFunction& f) {
    const int m = f.in_dim();
    const int n = f.out_dim();
    if (m % 2 != 0) throw InvalidArgument("MNBC is defined for even m");
    const int k = m / 2;
    if (n <= k) throw InvalidArgument("MNBC requires n > m/2");
    return bent_component_count(f) == (1u << n) - (1u << (n - k));
}

std::set<Rational> SpectralProfile::level_set() const {
    std::set<Rational> out;
    for (const auto& [k, _] : levels) out.insert(k);
    return out;
}

std::uint32_t SpectralProfile::total() const {
    std::uint32_t t = 0;
    for (const auto& [_, lvl] : levels) t += lvl.count;
    return t;
}

SpectralProfile spectral_profile(const VectorialFunction& f) {
    SpectralProfile p;
    std::map<Rational, std::vector<std::uint32_t>> members;
    for_each_component_spectrum(f, 1, [&](std::uint32_t b, const WalshSpectrum& w) {
        Rational k = kappa(w, f.in_dim());
        auto& lvl = p.levels[k];
        ++lvl.count;
        lvl.degrees.insert(degree(component(f, b)));
        members[k].push_back(b);
        p.kappa_sum += k;
    });
    for (auto& [k, lvl] : p.levels) {
        const auto& s = members[k];
        const int r = span_rank(s);
        lvl.subspace = s.size() + 1 == (std::size_t{1} << r);
    }
    return p;
}

bool spectral_type(const SpectralProfile& p, const Rational& alpha, const Rational& beta) {
    return p.level_set() == std::set<Rational>{alpha, beta} && alpha != beta;
}

std::vector<PairSolution> pair_solver(const std::vector<Rational>& kappas, std::uint64_t q, bool subspace_only) {
    std::vector<Rational> ks = kappas;
    std::sort(ks.begin(), ks.end());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] <= Rational(0)) throw InvalidArgument("kappa values must be positive");
        if (i > 0 && ks[i] == ks[i - 1]) throw InvalidArgument("kappa values must be distinct: " + ks[i].decimal());
    }
    const Rational qm1(static_cast<i128>(q - 1));
    const Rational two(2);
    auto is_mersenne = [](std::uint64_t v) { return std::has_single_bit(v + 1); };
    std::vector<PairSolution> out;
    for (std::size_t i = 0; i < ks.size(); ++i)
        for (std::size_t j = i + 1; j < ks.size(); ++j) {
            const Rational& alpha = ks[i];
            const Rational& beta = ks[j];
            Rational a = (beta - two) * qm1 / (beta - alpha);
            if (!a.is_integer() || a.num() <= 0 || a >= qm1) continue;
            const auto A = static_cast<std::uint64_t>(a.num());
            const std::uint64_t B = q - 1 - A;
            if (subspace_only && !is_mersenne(A) && !is_mersenne(B)) continue;
            out.push_back({alpha, A, beta, B});
        }
    return out;
}

}  // namespace apn
