#include "apnkit/affine.hpp"

#include "apnkit/errors.hpp"

namespace apn {

BitMatrix random_invertible(int dim, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> col(0, (1u << dim) - 1);
    BitMatrix a{dim, std::vector<std::uint32_t>(static_cast<std::size_t>(dim))};
    do {
        for (auto& c : a.cols) c = col(rng);
    } while (!a.invertible());
    return a;
}

EaTransform EaTransform::random(int m, int n, Rng& rng) {
    EaTransform t;
    t.a = random_invertible(m, rng);
    t.b = random_invertible(n, rng);
    std::uniform_int_distribution<std::uint32_t> in(0, (1u << m) - 1);
    std::uniform_int_distribution<std::uint32_t> out(0, (1u << n) - 1);
    t.a_shift = in(rng);
    t.b_shift = out(rng);
    t.c.resize(static_cast<std::size_t>(m));
    for (auto& col : t.c) col = out(rng);
    t.c_shift = out(rng);
    return t;
}

VectorialFunction apply_ea(const VectorialFunction& f, const EaTransform& t) {
    const int m = f.in_dim();
    const int n = f.out_dim();
    if (t.a.dim != m || t.b.dim != n || t.c.size() != static_cast<std::size_t>(m))
        throw InvalidArgument("EA transform dimensions do not match the function");
    if (!t.a.invertible() || !t.b.invertible()) throw InvalidArgument("EA transform is not invertible");
    std::vector<std::uint32_t> img(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        std::uint32_t cx = t.c_shift;
        for (int j = 0; j < m; ++j)
            if ((x >> j) & 1) cx ^= t.c[static_cast<std::size_t>(j)];
        img[x] = t.b.apply(f(t.a.apply(x) ^ t.a_shift)) ^ t.b_shift ^ cx;
    }
    return VectorialFunction(m, n, std::move(img));
}

BooleanFunction random_affine_variant(const BooleanFunction& f, Rng& rng) {
    const int m = f.vars();
    auto a = random_invertible(m, rng);
    std::uniform_int_distribution<std::uint32_t> vec(0, (1u << m) - 1);
    const std::uint32_t b = vec(rng);
    const std::uint32_t l = vec(rng);
    const bool c = (rng() & 1) != 0;
    return apply_affine(f, a, b, l, c);
}

}  // namespace apn
