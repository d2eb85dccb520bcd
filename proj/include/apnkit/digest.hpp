#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace apn {

/// 128-bit BLAKE2b digest of a canonical serialization.
struct Digest {
    std::array<std::uint8_t, 16> bytes{};

    std::string hex() const;
    static Digest from_hex(std::string_view hex);
    auto operator<=>(const Digest&) const = default;
};

inline constexpr std::string_view kDigestAlgorithm = "blake2b-128";

Digest digest_of(std::string_view data);

struct DigestHash {
    std::size_t operator()(const Digest& d) const noexcept {
        std::size_t h = 0;
        for (int i = 0; i < 8; ++i) h = (h << 8) | d.bytes[static_cast<std::size_t>(i)];
        return h;
    }
};

}  // namespace apn
