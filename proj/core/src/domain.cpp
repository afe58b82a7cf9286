#include "kedge/domain.hpp"

#include "kedge/errors.hpp"

namespace kedge {

const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::TimeRegression: return "TimeRegression";
    case Errc::DanglingIntent: return "DanglingIntent";
    case Errc::UnknownIntent: return "UnknownIntent";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::MalformedEntry: return "MalformedEntry";
    case Errc::MalformedRecord: return "MalformedRecord";
    case Errc::IndexGap: return "IndexGap";
    case Errc::UnknownEntity: return "UnknownEntity";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::TypeError: return "TypeError";
    case Errc::MissingAttribute: return "MissingAttribute";
    case Errc::ClockSkew: return "ClockSkew";
    case Errc::NotApproved: return "NotApproved";
    case Errc::Expired: return "Expired";
    case Errc::UnknownToken: return "UnknownToken";
    case Errc::SpecError: return "SpecError";
    case Errc::ScenarioError: return "ScenarioError";
    case Errc::BadParams: return "BadParams";
    case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

std::string_view role_name(Role role) noexcept {
    switch (role) {
    case Role::Human: return "Human";
    case Role::VerifiedAgent: return "VerifiedAgent";
    case Role::UnverifiedAgent: return "UnverifiedAgent";
    case Role::Automation: return "Automation";
    }
    return "UnverifiedAgent";
}

Role role_from_name(std::string_view name) {
    if (name == "Human") return Role::Human;
    if (name == "VerifiedAgent") return Role::VerifiedAgent;
    if (name == "UnverifiedAgent") return Role::UnverifiedAgent;
    if (name == "Automation") return Role::Automation;
    raise(Errc::BadParams, "unknown role '" + std::string(name) + "'");
}

std::string fact_value_str(const FactValue& value) {
    if (const auto* s = std::get_if<std::string>(&value)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
    return std::get<bool>(value) ? "true" : "false";
}

std::string attr_value_str(const AttrValue& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
    if (const auto* f = std::get_if<Fixed4>(&value)) return f->str();
    if (const auto* s = std::get_if<std::string>(&value)) return *s;
    return std::get<bool>(value) ? "true" : "false";
}

std::string_view outcome_name(Outcome outcome) noexcept {
    switch (outcome) {
    case Outcome::Approve: return "Approve";
    case Outcome::Reject: return "Reject";
    case Outcome::Escalate: return "Escalate";
    }
    return "Reject";
}

Outcome outcome_from_name(std::string_view name) {
    if (name == "Approve") return Outcome::Approve;
    if (name == "Reject") return Outcome::Reject;
    if (name == "Escalate") return Outcome::Escalate;
    raise(Errc::BadParams, "unknown outcome '" + std::string(name) + "'");
}

std::string_view effect_name(Effect effect) noexcept {
    switch (effect) {
    case Effect::Permit: return "permit";
    case Effect::Forbid: return "forbid";
    case Effect::Escalate: return "escalate";
    }
    return "permit";
}

} // namespace kedge
