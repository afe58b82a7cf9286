#include "kedge/digest.hpp"

#include <openssl/evp.h>

#include "kedge/errors.hpp"

namespace kedge {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

std::string Digest::hex() const {
    std::string out;
    out.reserve(64);
    for (auto b : bytes) {
        out += kHexDigits[b >> 4];
        out += kHexDigits[b & 0x0f];
    }
    return out;
}

Digest Digest::from_hex(std::string_view hex) {
    if (hex.size() != 64)
        raise(Errc::MalformedRecord, "digest hex must be 64 chars, got " + std::to_string(hex.size()));
    Digest d;
    for (std::size_t i = 0; i < 32; ++i) {
        const int hi = hex_nibble(hex[2 * i]);
        const int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            raise(Errc::MalformedRecord, "non-hex character in digest");
        d.bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return d;
}

Digest sha256(std::span<const std::uint8_t> data) {
    Digest d;
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32)
        raise(Errc::IoError, "SHA-256 computation failed");
    return d;
}

Digest sha256(std::string_view text) {
    return sha256(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

} // namespace kedge
