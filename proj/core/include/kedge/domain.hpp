#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kedge/fixed.hpp"

namespace kedge {

// Logical simulation tick. All temporal fields use this clock; the pipeline
// never reads wall time.
using Tick = std::int64_t;

// time_since_owner_update sentinel when an entity has never been touched by
// a human: 2^31 - 1 ticks, which keeps "< 3600"-style guards false.
inline constexpr Tick kNoHumanUpdateSentinel = 2147483647;

enum class Role { Human, VerifiedAgent, UnverifiedAgent, Automation };

std::string_view role_name(Role role) noexcept;
Role role_from_name(std::string_view name); // throws Errc::BadParams

// Scalar fact values: strings, integers, booleans.
using FactValue = std::variant<std::string, std::int64_t, bool>;

std::string fact_value_str(const FactValue& value);

// An (entity, key, value) assertion with provenance and temporal validity.
struct Fact {
    std::string entity_id;
    std::string key;
    FactValue value;
    std::string asserted_by;
    Tick asserted_at = 0;
    std::optional<Tick> valid_until; // absent = open-ended

    friend bool operator==(const Fact&, const Fact&) = default;
};

// Context attribute values exposed to policy conditions.
using AttrValue = std::variant<std::int64_t, Fixed4, std::string, bool>;

std::string attr_value_str(const AttrValue& value);

struct Actor {
    std::string actor_id;
    Role role = Role::UnverifiedAgent;
    Fixed4 authority; // role-derived, in [0,1]
    Fixed4 trust;     // configured input, in [0,1]
};

// A declarative desired state transition. Intents never execute directly;
// they enter arbitration and policy evaluation first.
struct IntentProposal {
    std::string intent_id;
    Actor actor;
    std::string action;
    std::string target;
    std::vector<Fact> asserted_facts;
    Tick origin_tick = 0;
    std::string batch_id;
};

enum class Outcome { Approve, Reject, Escalate };

std::string_view outcome_name(Outcome outcome) noexcept;
Outcome outcome_from_name(std::string_view name); // throws Errc::BadParams

enum class Effect { Permit, Forbid, Escalate };

std::string_view effect_name(Effect effect) noexcept;

// Per-rule evaluation record embedded in decision payloads.
struct RuleTrace {
    std::string rule_id;
    bool matched = false;
    Effect effect = Effect::Permit;

    friend bool operator==(const RuleTrace&, const RuleTrace&) = default;
};

} // namespace kedge
