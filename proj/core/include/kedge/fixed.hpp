#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace kedge {

// Fixed-point decimal with 4 fractional digits. This is the numeric type for
// trust scores, authority, arbitration weights and policy decimal literals;
// it keeps evaluation bit-exact across runs and implementations.
class Fixed4 {
public:
    static constexpr std::int64_t kScale = 10'000;

    constexpr Fixed4() = default;

    static constexpr Fixed4 from_raw(std::int64_t mantissa) {
        Fixed4 v;
        v.raw_ = mantissa;
        return v;
    }

    // Exact parse of "12", "0.97", "-0.5", ".25"; rejects more than 4
    // fractional digits. Throws Errc::SyntaxError.
    static Fixed4 parse(std::string_view text);

    // Nearest 4-digit value (round half away from zero). Used for config
    // files where values arrive as JSON numbers.
    static Fixed4 from_double(double v);

    constexpr std::int64_t raw() const { return raw_; }
    constexpr bool is_zero() const { return raw_ == 0; }

    // Canonical rendering: always 4 fractional digits ("0.9700").
    std::string str() const;

    friend constexpr auto operator<=>(Fixed4 a, Fixed4 b) = default;

    friend constexpr Fixed4 operator+(Fixed4 a, Fixed4 b) { return from_raw(a.raw_ + b.raw_); }
    friend constexpr Fixed4 operator-(Fixed4 a, Fixed4 b) { return from_raw(a.raw_ - b.raw_); }

private:
    std::int64_t raw_ = 0;
};

// Scalar priority score. Products of two Fixed4 values are kept at scale
// 1e8 without dividing back down, so jointly scaling the weights and the
// tie epsilon rescales every score exactly (no rounding anywhere).
class PriorityScore {
public:
    static constexpr std::int64_t kScale = 100'000'000;

    constexpr PriorityScore() = default;
    static constexpr PriorityScore from_raw(std::int64_t mantissa) {
        PriorityScore v;
        v.raw_ = mantissa;
        return v;
    }

    // alpha*authority + beta*trust, exact.
    static constexpr PriorityScore weighted(Fixed4 alpha, Fixed4 authority, Fixed4 beta, Fixed4 trust) {
        return from_raw(alpha.raw() * authority.raw() + beta.raw() * trust.raw());
    }

    constexpr std::int64_t raw() const { return raw_; }

    // Tie test against a Fixed4 epsilon (lifted to this scale).
    static constexpr bool within_epsilon(PriorityScore a, PriorityScore b, Fixed4 epsilon) {
        const std::int64_t diff = a.raw_ > b.raw_ ? a.raw_ - b.raw_ : b.raw_ - a.raw_;
        return diff <= epsilon.raw() * Fixed4::kScale;
    }

    // "0.9700" when the value is exact at 4 digits, 8 digits otherwise.
    std::string str() const;

    friend constexpr auto operator<=>(PriorityScore a, PriorityScore b) = default;

private:
    std::int64_t raw_ = 0;
};

} // namespace kedge
