#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace kedge {

// 32-byte SHA-256 digest. The all-zero digest marks the genesis link.
struct Digest {
    std::array<std::uint8_t, 32> bytes{};

    bool is_zero() const {
        for (auto b : bytes)
            if (b != 0) return false;
        return true;
    }

    std::string hex() const;
    static Digest from_hex(std::string_view hex); // throws Errc::MalformedRecord

    friend auto operator<=>(const Digest&, const Digest&) = default;
};

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view text);

} // namespace kedge
