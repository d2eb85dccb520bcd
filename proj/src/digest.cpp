#include "apnkit/digest.hpp"

#include <sodium.h>

#include "apnkit/errors.hpp"

namespace apn {

std::string Digest::hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(32);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 15]);
    }
    return out;
}

Digest Digest::from_hex(std::string_view hex) {
    if (hex.size() != 32) throw ParseError("digest must be 32 hex characters");
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ParseError(std::string("invalid hex character '") + c + "'");
    };
    Digest d;
    for (std::size_t i = 0; i < 16; ++i)
        d.bytes[i] = static_cast<std::uint8_t>((nib(hex[2 * i]) << 4) | nib(hex[2 * i + 1]));
    return d;
}

Digest digest_of(std::string_view data) {
    Digest d;
    crypto_generichash(d.bytes.data(), d.bytes.size(), reinterpret_cast<const unsigned char*>(data.data()),
                       data.size(), nullptr, 0);
    return d;
}

}  // namespace apn
