#include "apnkit/invariants.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <memory>
#include <set>

#include "apnkit/errors.hpp"
#include "apnkit/gf2_linalg.hpp"
#include "apnkit/kernels.hpp"

namespace apn {

namespace {

int alternating_rank(int m, const std::vector<std::pair<int, int>>& pairs, std::uint32_t mask) {
    std::uint32_t rows[6] = {};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (!((mask >> k) & 1)) continue;
        auto [i, j] = pairs[k];
        rows[i] |= 1u << j;
        rows[j] |= 1u << i;
    }
    int rank = 0;
    for (int bit = 0; bit < m; ++bit) {
        int p = rank;
        while (p < m && !((rows[p] >> bit) & 1)) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[rank]);
        for (int r = 0; r < m; ++r)
            if (r != rank && ((rows[r] >> bit) & 1)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

RankTwoQuadraticSet build_quadratics(int m) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    std::vector<BooleanFunction> monomials;
    for (auto [i, j] : pairs) monomials.push_back(BooleanFunction::monomial(m, (1u << i) | (1u << j)));

    RankTwoQuadraticSet set{m, {}};
    const std::uint32_t candidates = 1u << pairs.size();
    for (std::uint32_t mask = 1; mask < candidates; ++mask) {
        if (alternating_rank(m, pairs, mask) != 2) continue;
        BooleanFunction g(m);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if ((mask >> k) & 1) g ^= monomials[k];
        set.members.push_back(std::move(g));
    }
    return set;
}

// Serialized |W| multiset of f, avoiding heap traffic for m <= 6.
std::string abs_multiset_key(const BooleanFunction& f) {
    const int m = f.vars();
    if (m > 6) return serialize(walsh_abs_multiset(f));
    std::array<std::int32_t, 64> w{};
    const std::size_t q = f.size();
    const std::uint64_t word = f.word();
    for (std::size_t x = 0; x < q; ++x) w[x] = ((word >> x) & 1) ? -1 : 1;
    fwht(std::span<std::int32_t>(w.data(), q));
    std::array<std::uint8_t, 65> hist{};
    for (std::size_t a = 0; a < q; ++a) ++hist[static_cast<std::size_t>(std::abs(w[a]))];
    std::string out;
    for (std::size_t v = 0; v <= q; ++v) {
        if (hist[v] == 0) continue;
        if (!out.empty()) out += ',';
        out += std::to_string(v) + ':' + std::to_string(hist[v]);
    }
    return out;
}

}  // namespace

const RankTwoQuadraticSet& rank2_quadratics(int m) {
    if (m < 2 || m > 6) throw InvalidArgument("rank-2 quadratic enumeration supports 2 <= m <= 6");
    static std::once_flag flags[7];
    static std::unique_ptr<RankTwoQuadraticSet> sets[7];
    std::call_once(flags[m], [m] { sets[m] = std::make_unique<RankTwoQuadraticSet>(build_quadratics(m)); });
    return *sets[m];
}

std::string to_string(InvariantKind k) {
    switch (k) {
        case InvariantKind::W: return "w";
        case InvariantKind::I: return "I";
        case InvariantKind::JPrime: return "Jprime";
        case InvariantKind::Ccz: return "ccz";
    }
    return "?";
}

InvariantDigest digest_w(const BooleanFunction& f) {
    return {InvariantKind::W, digest_of("w|" + serialize(walsh_abs_multiset(f)))};
}

InvariantI inv_I(const BooleanFunction& f) {
    const auto& quads = rank2_quadratics(f.vars());
    InvariantI out;
    out.inner.reserve(quads.members.size());
    for (const auto& g : quads.members) out.inner.push_back(abs_multiset_key(f ^ g));
    std::sort(out.inner.begin(), out.inner.end());
    std::string canon = "I|" + std::to_string(f.vars());
    for (const auto& s : out.inner) canon += ';' + s;
    out.digest = digest_of(canon);
    return out;
}

Digest InvariantCache::i_digest(const BooleanFunction& f) {
    std::string key = f.to_hex();
    {
        std::shared_lock lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    Digest d = inv_I(f).digest;
    std::unique_lock lock(mutex_);
    memo_.emplace(std::move(key), d);
    return d;
}

std::size_t InvariantCache::size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
}

InvariantJPrime InvariantCache::j_prime(const VectorialFunction& f) {
    InvariantJPrime out;
    const std::uint32_t nb = 1u << f.out_dim();
    for (std::uint32_t b = 1; b < nb; ++b) out.inner.push_back(i_digest(component(f, b)));
    std::sort(out.inner.begin(), out.inner.end());
    std::string canon = "J'|" + std::to_string(f.in_dim()) + "," + std::to_string(f.out_dim());
    for (const auto& d : out.inner) canon += ';' + d.hex();
    out.digest = digest_of(canon);
    return out;
}

InvariantJPrime inv_Jprime(const VectorialFunction& f) {
    InvariantCache cache;
    return cache.j_prime(f);
}

namespace {
// Bit i of the result is bit i ^ a of w, for a < 64.
std::uint64_t xor_permute(std::uint64_t w, unsigned a) {
    static constexpr std::uint64_t kMask[6] = {0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
                                               0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL};
    for (unsigned k = 0; k < 6; ++k)
        if ((a >> k) & 1) {
            const unsigned s = 1u << k;
            w = ((w & kMask[k]) << s) | ((w >> s) & kMask[k]);
        }
    return w;
}
}  // namespace

std::size_t incidence_rank(const std::vector<std::uint32_t>& set, int dim) {
    const std::size_t n = std::size_t{1} << dim;
    Gf2Matrix mat(n, n);
    if (dim < 6) {
        for (std::size_t u = 0; u < n; ++u)
            for (auto s : set) mat.set(u, u ^ s);
        return mat.rank();
    }
    // Row u is the indicator of S translated by u: word j of row u is word
    // j ^ (u >> 6) of the indicator with its bits permuted by u & 63.
    const std::size_t words = n / 64;
    std::vector<std::uint64_t> ind(words, 0);
    for (auto s : set) ind[s >> 6] |= std::uint64_t{1} << (s & 63);
    for (std::size_t u = 0; u < n; ++u) {
        auto row = mat.row(u);
        for (std::size_t j = 0; j < words; ++j) row[j] = xor_permute(ind[j ^ (u >> 6)], static_cast<unsigned>(u & 63));
    }
    return mat.rank();
}

namespace {
void require_rank_size(const VectorialFunction& f) {
    if (f.in_dim() + f.out_dim() > 12) throw InvalidArgument("incidence ranks limited to m + n <= 12");
}
}  // namespace

std::size_t gamma_rank(const VectorialFunction& f) {
    require_rank_size(f);
    std::vector<std::uint32_t> graph(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x) graph[x] = x | (f(x) << f.in_dim());
    return incidence_rank(graph, f.in_dim() + f.out_dim());
}

std::size_t delta_rank(const VectorialFunction& f) {
    require_rank_size(f);
    std::vector<char> seen(std::size_t{1} << (f.in_dim() + f.out_dim()), 0);
    for (std::uint32_t a = 1; a < f.size(); ++a)
        for (std::uint32_t x = 0; x < f.size(); ++x) seen[a | ((f(x) ^ f(x ^ a)) << f.in_dim())] = 1;
    std::vector<std::uint32_t> pts;
    for (std::uint32_t p = 0; p < seen.size(); ++p)
        if (seen[p]) pts.push_back(p);
    return incidence_rank(pts, f.in_dim() + f.out_dim());
}

std::string CczSignature::serialize() const {
    std::string out = "gamma=" + std::to_string(gamma_rank) + ";delta=" + std::to_string(delta_rank) +
                      ";walsh=" + apn::serialize(extended_walsh) + ";diff=";
    bool first = true;
    for (auto [v, n] : differential_spectrum) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(v) + ':' + std::to_string(n);
    }
    return out;
}

CczSignature ccz_signature(const VectorialFunction& f) {
    require_rank_size(f);
    CczSignature sig;
    sig.gamma_rank = gamma_rank(f);
    sig.delta_rank = delta_rank(f);

    const auto spectra = kernels::component_spectra(f);
    std::map<std::uint32_t, std::uint32_t> walsh;
    for (std::size_t i = f.size(); i < spectra.size(); ++i) ++walsh[static_cast<std::uint32_t>(std::abs(spectra[i]))];
    sig.extended_walsh.assign(walsh.begin(), walsh.end());

    const auto table = kernels::ddt(f);
    const std::size_t nv = std::size_t{1} << f.out_dim();
    for (std::size_t i = nv; i < table.size(); ++i) ++sig.differential_spectrum[table[i]];
    return sig;
}

}  // namespace apn
