#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kedge/domain.hpp"

namespace kedge {

enum class EventKind {
    IntentProposed,
    ContextSnapshotted,
    DecisionRendered,
    ContractIssued,
    ExecutionOutcome,
};

std::string_view event_kind_name(EventKind kind) noexcept;
EventKind event_kind_from_name(std::string_view name); // throws Errc::MalformedRecord

// --- kind-specific payloads -------------------------------------------------
// The payload variant alternative determines the event kind exactly; mixed
// payloads are unrepresentable in memory and rejected on load.

struct IntentPayload {
    std::string action;
    std::string actor_id;
    Role actor_role = Role::UnverifiedAgent;
    std::vector<Fact> asserted_facts;
    std::string batch_id;
    Tick origin_tick = 0;
    std::string target;

    friend bool operator==(const IntentPayload&, const IntentPayload&) = default;
};

struct ContextPayload {
    std::map<std::string, AttrValue> attributes;
    std::string intent_id;
    std::vector<std::string> resource_scope; // sorted
    Tick snapshot_tick = 0;

    friend bool operator==(const ContextPayload&, const ContextPayload&) = default;
};

struct DecisionPayload {
    std::vector<std::string> conflicts_with; // opposing intent ids, sorted
    std::vector<RuleTrace> evaluated_rules;
    std::vector<std::string> explanation; // matched rule ids in precedence order
    Outcome outcome = Outcome::Reject;
    std::string reason; // "Policy", "Stale", "LostArbitration", "TiedPriority", "MissingAttribute: <key>"

    friend bool operator==(const DecisionPayload&, const DecisionPayload&) = default;
};

struct ContractPayload {
    std::string action;
    std::string contract_id;
    Tick issued_at = 0;
    std::vector<std::string> resource_scope; // sorted
    Tick valid_from = 0;
    Tick valid_until = 0;

    friend bool operator==(const ContractPayload&, const ContractPayload&) = default;
};

struct OutcomePayload {
    std::string action;
    Role actor_role = Role::UnverifiedAgent;
    bool allowed = false;
    Tick completed_at = 0;
    std::string contract_id;
    std::string deny_reason; // empty when allowed
    std::vector<Fact> effects; // empty unless allowed
    std::string resource;

    friend bool operator==(const OutcomePayload&, const OutcomePayload&) = default;
};

using EventPayload =
    std::variant<IntentPayload, ContextPayload, DecisionPayload, ContractPayload, OutcomePayload>;

struct LifecycleEvent {
    std::string event_id;
    std::string intent_id; // causal thread; "system" events do not exist, every event has one
    std::string actor_id;  // responsible actor, or "system"
    Tick logical_time = 0;
    EventPayload payload;

    EventKind kind() const noexcept { return static_cast<EventKind>(payload.index()); }

    friend bool operator==(const LifecycleEvent&, const LifecycleEvent&) = default;
};

} // namespace kedge
