#pragma once

#include <cstdint>
#include <string>

#include "kedge/fixed.hpp"

namespace kedge {

// Deterministic 64-bit generator (splitmix64). The whole harness draws from
// this; no standard-library distributions, whose sequences are not pinned by
// the standard, and no wall clock anywhere in the pipeline.
class DeterministicRng {
public:
    explicit constexpr DeterministicRng(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n > 0. Rejection-free multiply-shift would bias
    // imperceptibly; plain modulo is fine for workload shaping and keeps the
    // draw count per decision fixed.
    constexpr std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Inclusive integer range.
    constexpr std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform fixed-point in [0, 1].
    Fixed4 unit_fixed4() { return Fixed4::from_raw(static_cast<std::int64_t>(below(Fixed4::kScale + 1))); }

    // 128-bit lowercase hex identifier.
    std::string hex128();

private:
    std::uint64_t state_;
};

// 128-bit hex identifier from OS entropy (non-simulation token minting).
std::string entropy_hex128();

} // namespace kedge
