#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "apnkit/boolean_function.hpp"
#include "apnkit/digest.hpp"
#include "apnkit/vectorial.hpp"

namespace apn {

/// Homogeneous quadratic forms whose bilinear form has rank 2, i.e. the
/// EA-orbit of x1 x2 among homogeneous quadratics.
struct RankTwoQuadraticSet {
    int m = 0;
    std::vector<BooleanFunction> members;
};

/// Enumerates all 2^(m(m-1)/2) homogeneous quadratics, 2 <= m <= 6. The
/// result is computed once per m and shared.
const RankTwoQuadraticSet& rank2_quadratics(int m);

enum class InvariantKind { W, I, JPrime, Ccz };
std::string to_string(InvariantKind k);

struct InvariantDigest {
    InvariantKind kind;
    Digest digest;
    bool operator==(const InvariantDigest&) const = default;
};

/// Multiset {{ w(f+g) : g in Q }} in canonical form: inner multisets are
/// serialized then the list is sorted.
struct InvariantI {
    std::vector<std::string> inner;
    Digest digest;
};

InvariantDigest digest_w(const BooleanFunction& f);
InvariantI inv_I(const BooleanFunction& f);

/// {{ I(f) : 0 != f in comp(F) }} as sorted I-digests.
struct InvariantJPrime {
    std::vector<Digest> inner;
    Digest digest;
};

/// Memoises I-digests by truth table; safe to share between threads.
class InvariantCache {
public:
    Digest i_digest(const BooleanFunction& f);
    InvariantJPrime j_prime(const VectorialFunction& f);
    std::size_t size() const;

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, Digest> memo_;
};

InvariantJPrime inv_Jprime(const VectorialFunction& f);

/// Rank over GF(2) of M[u][v] = [u + v in S] for S a subset of F_2^(m+n).
std::size_t incidence_rank(const std::vector<std::uint32_t>& set, int dim);

/// S = graph {(x, F(x))}. Requires m + n <= 12.
std::size_t gamma_rank(const VectorialFunction& f);
/// S = {(a, F(x) + F(x+a)) : a != 0}. Requires m + n <= 12.
std::size_t delta_rank(const VectorialFunction& f);

struct CczSignature {
    std::size_t gamma_rank = 0;
    std::size_t delta_rank = 0;
    /// {{ |W(F_b, a)| : b != 0 }}.
    AbsMultiset extended_walsh;
    /// {{ N_F(u, v) : u != 0 }}.
    std::map<std::uint32_t, std::uint32_t> differential_spectrum;

    std::string serialize() const;
    Digest digest() const { return digest_of(serialize()); }
    bool operator==(const CczSignature&) const = default;
};

CczSignature ccz_signature(const VectorialFunction& f);

}  // namespace apn
