#pragma once

#include <stdexcept>
#include <string>

namespace kedge {

// Error taxonomy across the pipeline. Chain and governance errors signal
// caller/harness bugs; policy errors carry source positions; denials are
// never errors (see contracts::AuthorizationOutcome).
enum class Errc {
    TimeRegression,
    DanglingIntent,
    UnknownIntent,
    OutOfBounds,
    MalformedEntry,
    MalformedRecord,
    IndexGap,
    UnknownEntity,
    SyntaxError,
    TypeError,
    MissingAttribute,
    ClockSkew,
    NotApproved,
    Expired,
    UnknownToken,
    SpecError,
    ScenarioError,
    BadParams,
    IoError,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace kedge
