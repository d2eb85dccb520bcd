#pragma once

#include <bit>
#include <cstdint>

namespace apn {

inline unsigned parity(std::uint64_t x) { return static_cast<unsigned>(std::popcount(x) & 1); }

/// Inner product a.x over GF(2).
inline unsigned dot(std::uint64_t a, std::uint64_t x) { return parity(a & x); }

using u128 = unsigned __int128;
using i128 = __int128;

}  // namespace apn
