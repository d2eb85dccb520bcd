#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "apnkit/boolean_function.hpp"
#include "apnkit/vectorial.hpp"

namespace apn {

using Rng = std::mt19937_64;

BitMatrix random_invertible(int dim, Rng& rng);

/// Parameters of G = B o F o A + C with A, B affine permutations and C affine.
struct EaTransform {
    BitMatrix a;                    // input, m x m
    std::uint32_t a_shift = 0;
    BitMatrix b;                    // output, n x n
    std::uint32_t b_shift = 0;
    std::vector<std::uint32_t> c;   // m columns of n bits
    std::uint32_t c_shift = 0;

    static EaTransform random(int m, int n, Rng& rng);
};

VectorialFunction apply_ea(const VectorialFunction& f, const EaTransform& t);

/// f o A + l + c with random invertible A, random l and c.
BooleanFunction random_affine_variant(const BooleanFunction& f, Rng& rng);

}  // namespace apn
