#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace apn {

/// Dense GF(2) matrix, rows packed into 64-bit words.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1; }
    void set(std::size_t r, std::size_t c, bool v = true);
    void flip(std::size_t r, std::size_t c) { row(r)[c >> 6] ^= std::uint64_t{1} << (c & 63); }

    std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * wpr_, wpr_}; }
    std::span<const std::uint64_t> row(std::size_t r) const { return {data_.data() + r * wpr_, wpr_}; }

    /// Elimination on a copy, eight pivot columns per pass with a lookup
    /// table of pivot combinations; row updates run in parallel.
    std::size_t rank() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

namespace reference {
/// Single-threaded elimination, kept as the oracle for Gf2Matrix::rank.
std::size_t gf2_rank(const Gf2Matrix& m);
}  // namespace reference

/// Outcome of solving an affine system A x = c over GF(2).
struct Gf2Solution {
    bool solvable = false;
    std::size_t rank = 0;
    std::size_t free_count = 0;
    /// One solution (free variables set to zero) when solvable.
    std::vector<std::uint8_t> assignment;
    /// Input rows whose sum is the equation 0 = 1 when unsolvable.
    std::vector<std::size_t> witness;
};

/// Rows carry `vars` coefficient bits followed by the constant at bit `vars`.
Gf2Solution solve_affine(const Gf2Matrix& augmented, std::size_t vars);

/// Re-sums the cited rows; true iff every coefficient cancels and the
/// constant is 1.
bool verify_witness(const Gf2Matrix& augmented, std::size_t vars, std::span<const std::size_t> witness);

}  // namespace apn
