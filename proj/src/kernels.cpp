#include "apnkit/kernels.hpp"

#include <algorithm>
#include <atomic>

#include <omp.h>

#include "apnkit/errors.hpp"

namespace apn {

void set_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

namespace {

void require_small(const VectorialFunction& f) {
    if (f.in_dim() + f.out_dim() > 24)
        throw InvalidArgument("component spectra table limited to m + n <= 24");
}

void fill_component_signs(const VectorialFunction& f, std::uint32_t b, std::int32_t* row) {
    for (std::uint32_t x = 0; x < f.size(); ++x) row[x] = dot(b, f(x)) ? -1 : 1;
}

void require_enumerable(const VectorialFunction& f, int r) {
    if (r != 4 && r != 6) throw InvalidArgument("solution enumeration supports r = 4 or 6");
    if (f.in_dim() > 6) throw InvalidArgument("solution enumeration limited to m <= 6");
}

bool all_distinct6(const std::uint32_t* v) {
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (v[i] == v[j]) return false;
    return true;
}

// Counts solutions with x_1 fixed; `trivial_only` restricts to tuples with a
// repeated point.
i128 count_from(const VectorialFunction& f, int r, std::uint32_t x1, bool trivial_only) {
    const std::uint32_t q = static_cast<std::uint32_t>(f.size());
    const auto& img = f.images();
    i128 count = 0;
    if (r == 4) {
        for (std::uint32_t x2 = 0; x2 < q; ++x2)
            for (std::uint32_t x3 = 0; x3 < q; ++x3) {
                std::uint32_t x4 = x1 ^ x2 ^ x3;
                if ((img[x1] ^ img[x2] ^ img[x3] ^ img[x4]) != 0) continue;
                bool distinct = x1 != x2 && x1 != x3 && x1 != x4 && x2 != x3 && x2 != x4 && x3 != x4;
                if (!trivial_only || !distinct) ++count;
            }
        return count;
    }
    std::uint32_t v[6];
    v[0] = x1;
    for (v[1] = 0; v[1] < q; ++v[1])
        for (v[2] = 0; v[2] < q; ++v[2])
            for (v[3] = 0; v[3] < q; ++v[3]) {
                const std::uint32_t s3 = v[0] ^ v[1] ^ v[2] ^ v[3];
                const std::uint32_t i3 = img[v[0]] ^ img[v[1]] ^ img[v[2]] ^ img[v[3]];
                for (v[4] = 0; v[4] < q; ++v[4]) {
                    v[5] = s3 ^ v[4];
                    if ((i3 ^ img[v[4]] ^ img[v[5]]) != 0) continue;
                    if (!trivial_only || !all_distinct6(v)) ++count;
                }
            }
    return count;
}

}  // namespace

namespace kernels {

std::vector<std::int32_t> component_spectra(const VectorialFunction& f) {
    require_small(f);
    const std::size_t q = f.size();
    const std::size_t nb = std::size_t{1} << f.out_dim();
    std::vector<std::int32_t> out(nb * q);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nb); ++b) {
        std::int32_t* row = out.data() + static_cast<std::size_t>(b) * q;
        fill_component_signs(f, static_cast<std::uint32_t>(b), row);
        fwht(std::span<std::int32_t>(row, q));
    }
    return out;
}

std::vector<std::uint32_t> ddt(const VectorialFunction& f) {
    const std::size_t q = f.size();
    const std::size_t nv = std::size_t{1} << f.out_dim();
    std::vector<std::uint32_t> table(q * nv, 0);
    const auto& img = f.images();
#pragma omp parallel for schedule(static)
    for (std::int64_t u = 0; u < static_cast<std::int64_t>(q); ++u) {
        std::uint32_t* row = table.data() + static_cast<std::size_t>(u) * nv;
        for (std::uint32_t x = 0; x < q; ++x) ++row[img[x] ^ img[x ^ static_cast<std::uint32_t>(u)]];
    }
    return table;
}

std::uint32_t differential_uniformity(const VectorialFunction& f, std::uint32_t stop_above) {
    const std::size_t q = f.size();
    const std::size_t nv = std::size_t{1} << f.out_dim();
    const auto& img = f.images();
    std::atomic<std::uint32_t> best{0};
    std::atomic<bool> stop{false};
#pragma omp parallel
    {
        std::vector<std::uint32_t> row(nv);
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t u = 1; u < static_cast<std::int64_t>(q); ++u) {
            if (stop.load(std::memory_order_relaxed)) continue;
            std::fill(row.begin(), row.end(), 0);
            std::uint32_t local = 0;
            for (std::uint32_t x = 0; x < q; ++x) {
                std::uint32_t c = ++row[img[x] ^ img[x ^ static_cast<std::uint32_t>(u)]];
                if (c > local) {
                    local = c;
                    if (local > stop_above) break;
                }
            }
            std::uint32_t prev = best.load();
            while (local > prev && !best.compare_exchange_weak(prev, local)) {
            }
            if (local > stop_above) stop.store(true);
        }
    }
    return best.load();
}

i128 trivial_solutions(const VectorialFunction& f, int r) {
    require_enumerable(f, r);
    const std::int64_t q = static_cast<std::int64_t>(f.size());
    std::vector<i128> partial(static_cast<std::size_t>(q), 0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t x1 = 0; x1 < q; ++x1)
        partial[static_cast<std::size_t>(x1)] = count_from(f, r, static_cast<std::uint32_t>(x1), true);
    i128 total = 0;
    for (auto p : partial) total += p;
    return total;
}

}  // namespace kernels

namespace reference {

WalshSpectrum walsh_naive(const BooleanFunction& f) {
    WalshSpectrum w(f.size(), 0);
    for (std::uint32_t a = 0; a < f.size(); ++a) {
        std::int32_t s = 0;
        for (std::uint32_t x = 0; x < f.size(); ++x) s += (f(x) ^ dot(a, x)) ? -1 : 1;
        w[a] = s;
    }
    return w;
}

std::vector<std::int32_t> component_spectra(const VectorialFunction& f) {
    require_small(f);
    const std::size_t q = f.size();
    const std::size_t nb = std::size_t{1} << f.out_dim();
    std::vector<std::int32_t> out(nb * q);
    for (std::uint32_t b = 0; b < nb; ++b) {
        std::int32_t* row = out.data() + static_cast<std::size_t>(b) * q;
        fill_component_signs(f, b, row);
        fwht(std::span<std::int32_t>(row, q));
    }
    return out;
}

std::vector<std::uint32_t> ddt(const VectorialFunction& f) {
    const std::size_t q = f.size();
    const std::size_t nv = std::size_t{1} << f.out_dim();
    std::vector<std::uint32_t> table(q * nv, 0);
    for (std::uint32_t u = 0; u < q; ++u)
        for (std::uint32_t x = 0; x < q; ++x) ++table[u * nv + (f(x) ^ f(x ^ u))];
    return table;
}

std::uint32_t differential_uniformity(const VectorialFunction& f) {
    auto t = ddt(f);
    const std::size_t nv = std::size_t{1} << f.out_dim();
    return *std::max_element(t.begin() + static_cast<std::ptrdiff_t>(nv), t.end());
}

i128 n4_enumerated(const VectorialFunction& f) { return n_r_enumerated(f, 4); }

i128 n_r_enumerated(const VectorialFunction& f, int r) {
    require_enumerable(f, r);
    i128 total = 0;
    for (std::uint32_t x1 = 0; x1 < f.size(); ++x1) total += count_from(f, r, x1, false);
    return total;
}

i128 trivial_solutions(const VectorialFunction& f, int r) {
    require_enumerable(f, r);
    i128 total = 0;
    for (std::uint32_t x1 = 0; x1 < f.size(); ++x1) total += count_from(f, r, x1, true);
    return total;
}

}  // namespace reference

}  // namespace apn
