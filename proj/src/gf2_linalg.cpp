#include "apnkit/gf2_linalg.hpp"

#include <algorithm>
#include <bit>

#include "apnkit/errors.hpp"

namespace apn {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

template <bool Parallel>
std::size_t eliminate(std::vector<std::uint64_t>& data, std::size_t rows, std::size_t cols, std::size_t wpr) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        const std::size_t w = c >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        std::size_t pivot = rank;
        while (pivot < rows && !(data[pivot * wpr + w] & bit)) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            std::swap_ranges(data.begin() + static_cast<std::ptrdiff_t>(pivot * wpr),
                             data.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * wpr),
                             data.begin() + static_cast<std::ptrdiff_t>(rank * wpr));
        const std::uint64_t* prow = data.data() + rank * wpr;
        const auto first = static_cast<std::int64_t>(rank + 1);
        const auto last = static_cast<std::int64_t>(rows);
        if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (last - first > 256)
            for (std::int64_t r = first; r < last; ++r) {
                std::uint64_t* row = data.data() + static_cast<std::size_t>(r) * wpr;
                if (row[w] & bit)
                    for (std::size_t k = w; k < wpr; ++k) row[k] ^= prow[k];
            }
        } else {
            for (std::int64_t r = first; r < last; ++r) {
                std::uint64_t* row = data.data() + static_cast<std::size_t>(r) * wpr;
                if (row[w] & bit)
                    for (std::size_t k = w; k < wpr; ++k) row[k] ^= prow[k];
            }
        }
        ++rank;
    }
    return rank;
}

// Method of Four Russians: pivots are found 8 columns at a time inside one
// word, then every remaining row is cleared with a single table lookup.
std::size_t eliminate_m4(std::vector<std::uint64_t>& data, std::size_t rows, std::size_t cols, std::size_t wpr) {
    constexpr std::size_t kStrip = 8;
    std::vector<std::uint64_t> table((std::size_t{1} << kStrip) * wpr);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; c += kStrip) {
        const std::size_t w = c >> 6;
        const unsigned shift = static_cast<unsigned>(c & 63);
        const std::size_t width = std::min(kStrip, cols - c);
        auto row = [&](std::size_t r) { return data.data() + r * wpr; };
        auto strip = [&](std::size_t r) { return static_cast<unsigned>((row(r)[w] >> shift) & ((1u << width) - 1)); };

        // Reduced pivots for this strip: pivot j has bit piv_bit[j] set and
        // zeros at the other pivot bits.
        std::size_t found = 0;
        unsigned piv_bit[kStrip];
        for (std::size_t p = rank; p < rows && found < width; ++p) {
            for (std::size_t j = 0; j < found; ++j)
                if ((strip(p) >> piv_bit[j]) & 1)
                    for (std::size_t k = w; k < wpr; ++k) row(p)[k] ^= row(rank + j)[k];
            const unsigned bits = strip(p);
            if (!bits) continue;
            const auto b = static_cast<unsigned>(std::countr_zero(bits));
            const std::size_t dst = rank + found;
            if (p != dst) std::swap_ranges(row(p) + w, row(p) + wpr, row(dst) + w);
            for (std::size_t j = 0; j < found; ++j)
                if ((strip(rank + j) >> b) & 1)
                    for (std::size_t k = w; k < wpr; ++k) row(rank + j)[k] ^= row(dst)[k];
            piv_bit[found++] = b;
        }
        if (!found) continue;

        // table[mask] = sum of pivots selected by mask, indexed by strip bits.
        const std::size_t entries = std::size_t{1} << found;
        std::vector<unsigned> key(entries, 0);
        std::fill(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(entries * wpr), 0);
        std::vector<std::uint32_t> slot(std::size_t{1} << width, 0);
        for (std::size_t mask = 1; mask < entries; ++mask) {
            const auto j = static_cast<std::size_t>(std::countr_zero(mask));
            const std::size_t prev = mask & (mask - 1);
            std::uint64_t* dstrow = table.data() + mask * wpr;
            const std::uint64_t* a = table.data() + prev * wpr;
            const std::uint64_t* b = row(rank + j);
            for (std::size_t k = w; k < wpr; ++k) dstrow[k] = a[k] ^ b[k];
            key[mask] = key[prev] | (1u << piv_bit[j]);
            slot[key[mask]] = static_cast<std::uint32_t>(mask);
        }
        const auto first = static_cast<std::int64_t>(rank + found);
        const auto last = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (last - first > 512)
        for (std::int64_t r = first; r < last; ++r) {
            const unsigned bits = strip(static_cast<std::size_t>(r));
            if (!bits) continue;
            const std::uint64_t* t = table.data() + slot[bits] * wpr;
            std::uint64_t* dst = row(static_cast<std::size_t>(r));
            for (std::size_t k = w; k < wpr; ++k) dst[k] ^= t[k];
        }
        rank += found;
    }
    return rank;
}

}  // namespace

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(words_for(cols)), data_(rows * wpr_, 0) {}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    if (v)
        row(r)[c >> 6] |= bit;
    else
        row(r)[c >> 6] &= ~bit;
}

std::size_t Gf2Matrix::rank() const {
    std::vector<std::uint64_t> copy = data_;
    return eliminate_m4(copy, rows_, cols_, wpr_);
}

namespace reference {
std::size_t gf2_rank(const Gf2Matrix& m) {
    std::vector<std::uint64_t> copy(m.rows() * m.words_per_row());
    for (std::size_t r = 0; r < m.rows(); ++r) std::copy(m.row(r).begin(), m.row(r).end(), copy.begin() + static_cast<std::ptrdiff_t>(r * m.words_per_row()));
    return eliminate<false>(copy, m.rows(), m.cols(), m.words_per_row());
}
}  // namespace reference

Gf2Solution solve_affine(const Gf2Matrix& augmented, std::size_t vars) {
    if (augmented.cols() != vars + 1) throw InvalidArgument("augmented matrix must have vars + 1 columns");
    const std::size_t n = augmented.rows();
    const std::size_t wpr = augmented.words_per_row();
    const std::size_t cwpr = words_for(n);

    // Each working row keeps the set of input rows it was summed from.
    std::vector<std::uint64_t> eq(n * wpr);
    std::vector<std::uint64_t> combo(n * cwpr, 0);
    for (std::size_t r = 0; r < n; ++r) {
        std::copy(augmented.row(r).begin(), augmented.row(r).end(), eq.begin() + static_cast<std::ptrdiff_t>(r * wpr));
        combo[r * cwpr + (r >> 6)] |= std::uint64_t{1} << (r & 63);
    }
    auto eq_row = [&](std::size_t r) { return std::span<std::uint64_t>(eq.data() + r * wpr, wpr); };
    auto combo_row = [&](std::size_t r) { return std::span<std::uint64_t>(combo.data() + r * cwpr, cwpr); };
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        std::swap_ranges(eq_row(a).begin(), eq_row(a).end(), eq_row(b).begin());
        std::swap_ranges(combo_row(a).begin(), combo_row(a).end(), combo_row(b).begin());
    };

    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < vars && rank < n; ++c) {
        const std::size_t w = c >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        std::size_t p = rank;
        while (p < n && !(eq[p * wpr + w] & bit)) ++p;
        if (p == n) continue;
        if (p != rank) swap_rows(p, rank);
        const auto first = static_cast<std::int64_t>(0);
        const auto last = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (n > 512)
        for (std::int64_t r = first; r < last; ++r) {
            const auto ur = static_cast<std::size_t>(r);
            if (ur == rank || !(eq[ur * wpr + w] & bit)) continue;
            xor_into(eq_row(ur), eq_row(rank));
            xor_into(combo_row(ur), combo_row(rank));
        }
        pivot_cols.push_back(c);
        ++rank;
    }

    Gf2Solution out;
    out.rank = rank;
    out.free_count = vars - rank;
    const std::size_t cw = vars >> 6;
    const std::uint64_t cbit = std::uint64_t{1} << (vars & 63);
    for (std::size_t r = rank; r < n; ++r) {
        if (eq[r * wpr + cw] & cbit) {
            // All coefficients are zero below the pivots, so this row reads 0 = 1.
            for (std::size_t i = 0; i < n; ++i)
                if ((combo[r * cwpr + (i >> 6)] >> (i & 63)) & 1) out.witness.push_back(i);
            out.solvable = false;
            return out;
        }
    }
    out.solvable = true;
    out.assignment.assign(vars, 0);
    for (std::size_t i = 0; i < rank; ++i) out.assignment[pivot_cols[i]] = (eq[i * wpr + cw] & cbit) ? 1 : 0;
    return out;
}

bool verify_witness(const Gf2Matrix& augmented, std::size_t vars, std::span<const std::size_t> witness) {
    if (witness.empty()) return false;
    std::vector<std::uint64_t> acc(augmented.words_per_row(), 0);
    for (auto r : witness) {
        if (r >= augmented.rows()) return false;
        xor_into(acc, augmented.row(r));
    }
    for (std::size_t c = 0; c < vars; ++c)
        if ((acc[c >> 6] >> (c & 63)) & 1) return false;
    return (acc[vars >> 6] >> (vars & 63)) & 1;
}

}  // namespace apn
