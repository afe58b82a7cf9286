#include "kedge/fixed.hpp"

#include <cmath>
#include <cstdlib>

#include "kedge/errors.hpp"

namespace kedge {

Fixed4 Fixed4::parse(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::int64_t whole = 0;
    bool any_digit = false;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        whole = whole * 10 + (text[pos] - '0');
        any_digit = true;
        ++pos;
    }
    std::int64_t frac = 0;
    int frac_digits = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (frac_digits == 4)
                raise(Errc::SyntaxError, "more than 4 fractional digits in '" + std::string(text) + "'");
            frac = frac * 10 + (text[pos] - '0');
            ++frac_digits;
            any_digit = true;
            ++pos;
        }
    }
    if (!any_digit || pos != text.size())
        raise(Errc::SyntaxError, "bad decimal literal '" + std::string(text) + "'");
    while (frac_digits < 4) {
        frac *= 10;
        ++frac_digits;
    }
    const std::int64_t mantissa = whole * kScale + frac;
    return from_raw(negative ? -mantissa : mantissa);
}

Fixed4 Fixed4::from_double(double v) {
    return from_raw(static_cast<std::int64_t>(std::llround(v * static_cast<double>(kScale))));
}

std::string Fixed4::str() const {
    const bool negative = raw_ < 0;
    const std::int64_t a = negative ? -raw_ : raw_;
    std::string out = negative ? "-" : "";
    out += std::to_string(a / kScale);
    out += '.';
    const std::int64_t frac = a % kScale;
    char buf[5];
    std::snprintf(buf, sizeof(buf), "%04lld", static_cast<long long>(frac));
    out += buf;
    return out;
}

std::string PriorityScore::str() const {
    const bool negative = raw_ < 0;
    const std::int64_t a = negative ? -raw_ : raw_;
    std::string out = negative ? "-" : "";
    out += std::to_string(a / kScale);
    out += '.';
    const std::int64_t frac = a % kScale;
    char buf[9];
    if (frac % 10'000 == 0)
        std::snprintf(buf, sizeof(buf), "%04lld", static_cast<long long>(frac / 10'000));
    else
        std::snprintf(buf, sizeof(buf), "%08lld", static_cast<long long>(frac));
    out += buf;
    return out;
}

} // namespace kedge
