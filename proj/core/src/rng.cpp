#include "kedge/rng.hpp"

#include <random>

namespace kedge {

namespace {

std::string to_hex128(std::uint64_t hi, std::uint64_t lo) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(32, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[hi & 0x0f];
        out[static_cast<std::size_t>(16 + i)] = digits[lo & 0x0f];
        hi >>= 4;
        lo >>= 4;
    }
    return out;
}

} // namespace

std::string DeterministicRng::hex128() {
    const std::uint64_t hi = next();
    const std::uint64_t lo = next();
    return to_hex128(hi, lo);
}

std::string entropy_hex128() {
    std::random_device rd;
    const std::uint64_t hi = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    const std::uint64_t lo = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    return to_hex128(hi, lo);
}

} // namespace kedge
