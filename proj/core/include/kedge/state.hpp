#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "kedge/chain.hpp"
#include "kedge/digest.hpp"
#include "kedge/domain.hpp"
#include "kedge/world.hpp"

namespace kedge {

// Context attributes handed to policy evaluation for one proposal.
struct ContextSnapshot {
    std::string intent_id;
    std::vector<std::string> resource_scope; // entity ids consulted, sorted
    std::map<std::string, AttrValue> attributes;
    Tick snapshot_tick = 0;
};

// Deterministic fold of the evidence chain. Immutable value; fold/apply are
// pure, so states can be shared freely across threads.
class DerivedState {
public:
    using FactKey = std::pair<std::string, std::string>; // (entity_id, key)

    // Current facts only: entries whose valid_until is open or >= the state
    // tick. Expired facts drop out of both the view and the digest.
    std::optional<Fact> fact(const std::string& entity_id, const std::string& key) const;
    std::map<FactKey, Fact> current_facts() const;

    std::optional<Tick> last_human_update(const std::string& entity_id) const;
    const std::map<std::string, Tick>& human_updates() const { return last_human_update_; }

    std::uint64_t event_count() const { return event_count_; }
    Tick current_tick() const { return current_tick_; }

    // SHA-256 over the canonical serialization of current facts sorted by
    // (entity_id, key).
    Digest state_digest() const;

private:
    friend DerivedState apply(DerivedState state, const ChainEntry& entry);

    std::map<FactKey, Fact> facts_;
    std::map<std::string, Tick> last_human_update_;
    std::uint64_t event_count_ = 0;
    Tick current_tick_ = 0;
};

// Full fold over a verified chain prefix. Only ExecutionOutcome entries
// mutate facts; all other kinds advance the clock and the count.
// Throws Errc::MalformedEntry.
DerivedState fold(std::span<const ChainEntry> entries);

// Incremental step: requires entry.index == state.event_count().
// Throws Errc::IndexGap.
DerivedState apply(DerivedState state, const ChainEntry& entry);

// fold over the first n entries. Throws Errc::OutOfBounds.
DerivedState replay_at(const EvidenceChain& log, std::size_t n);

// Build the governance context for one proposal: owner-update recency from
// the derived state (sentinel when no human ever touched the target), the
// proposing actor's trust, and world signals. Throws Errc::UnknownEntity
// when the target is known to neither state nor world.
ContextSnapshot snapshot_context(const DerivedState& state, const IntentProposal& proposal,
                                 const WorldState& world, Tick now);

// Canonical JSON dump of a state: digest, counters, current facts sorted by
// (entity, key), and the per-entity human-update ticks.
std::string state_to_json_text(const DerivedState& state);

} // namespace kedge
