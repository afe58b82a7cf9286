#include "kedge/state.hpp"

#include <algorithm>

#include "json_codec.hpp"
#include "kedge/errors.hpp"

namespace kedge {

namespace {

bool expired(const Fact& fact, Tick at) {
    return fact.valid_until && *fact.valid_until < at;
}

} // namespace

std::optional<Fact> DerivedState::fact(const std::string& entity_id, const std::string& key) const {
    auto it = facts_.find({entity_id, key});
    if (it == facts_.end() || expired(it->second, current_tick_)) return std::nullopt;
    return it->second;
}

std::map<DerivedState::FactKey, Fact> DerivedState::current_facts() const {
    std::map<FactKey, Fact> out;
    for (const auto& [key, fact] : facts_)
        if (!expired(fact, current_tick_)) out.emplace(key, fact);
    return out;
}

std::optional<Tick> DerivedState::last_human_update(const std::string& entity_id) const {
    auto it = last_human_update_.find(entity_id);
    if (it == last_human_update_.end()) return std::nullopt;
    return it->second;
}

Digest DerivedState::state_digest() const {
    codec::json arr = codec::json::array();
    for (const auto& [key, fact] : current_facts()) arr.push_back(codec::fact_to_json(fact));
    return sha256(arr.dump());
}

std::string state_to_json_text(const DerivedState& state) {
    codec::json j;
    j["current_tick"] = state.current_tick();
    j["event_count"] = state.event_count();
    codec::json facts = codec::json::array();
    for (const auto& [key, fact] : state.current_facts()) facts.push_back(codec::fact_to_json(fact));
    j["facts"] = facts;
    codec::json human = codec::json::object();
    for (const auto& [entity, tick] : state.human_updates()) human[entity] = tick;
    j["last_human_update"] = human;
    j["state_digest"] = state.state_digest().hex();
    return j.dump(2);
}

DerivedState apply(DerivedState state, const ChainEntry& entry) {
    if (entry.index != state.event_count_)
        raise(Errc::IndexGap, "entry index " + std::to_string(entry.index) +
                                  " does not follow event count " +
                                  std::to_string(state.event_count_));

    state.current_tick_ = std::max(state.current_tick_, entry.event.logical_time);
    state.event_count_ += 1;

    if (const auto* outcome = std::get_if<OutcomePayload>(&entry.event.payload)) {
        if (!outcome->allowed && !outcome->effects.empty())
            raise(Errc::MalformedEntry, "denied outcome carries effects (entry " +
                                            std::to_string(entry.index) + ")");
        for (const Fact& effect : outcome->effects) {
            if (effect.valid_until && *effect.valid_until <= effect.asserted_at)
                raise(Errc::MalformedEntry, "fact valid_until precedes asserted_at (entry " +
                                                std::to_string(entry.index) + ")");
            state.facts_.insert_or_assign({effect.entity_id, effect.key}, effect);
            if (outcome->actor_role == Role::Human) {
                auto [it, inserted] =
                    state.last_human_update_.try_emplace(effect.entity_id, entry.event.logical_time);
                if (!inserted) it->second = std::max(it->second, entry.event.logical_time);
            }
        }
    }
    return state;
}

DerivedState fold(std::span<const ChainEntry> entries) {
    DerivedState state;
    for (const ChainEntry& entry : entries) state = apply(std::move(state), entry);
    return state;
}

DerivedState replay_at(const EvidenceChain& log, std::size_t n) {
    if (n > log.size())
        raise(Errc::OutOfBounds, "replay index " + std::to_string(n) + " beyond log length " +
                                     std::to_string(log.size()));
    return fold(log.entries().subspan(0, n));
}

ContextSnapshot snapshot_context(const DerivedState& state, const IntentProposal& proposal,
                                 const WorldState& world, Tick now) {
    bool known = world.has(proposal.target);
    if (!known) {
        for (const auto& [key, fact] : state.current_facts()) {
            if (key.first == proposal.target) {
                known = true;
                break;
            }
        }
    }
    if (!known) raise(Errc::UnknownEntity, "proposal target '" + proposal.target + "' unknown");

    ContextSnapshot snapshot;
    snapshot.intent_id = proposal.intent_id;
    snapshot.snapshot_tick = now;

    snapshot.resource_scope.push_back(proposal.target);
    for (const Fact& fact : proposal.asserted_facts) snapshot.resource_scope.push_back(fact.entity_id);
    std::sort(snapshot.resource_scope.begin(), snapshot.resource_scope.end());
    snapshot.resource_scope.erase(
        std::unique(snapshot.resource_scope.begin(), snapshot.resource_scope.end()),
        snapshot.resource_scope.end());

    const auto human_tick = state.last_human_update(proposal.target);
    snapshot.attributes["time_since_owner_update"] =
        human_tick ? now - *human_tick : kNoHumanUpdateSentinel;
    snapshot.attributes["trust_score"] = proposal.actor.trust;

    std::int64_t dependency_count = 0;
    TrafficLevel traffic = TrafficLevel::Normal;
    if (world.has(proposal.target))
        std::tie(dependency_count, traffic) = context_signals(world, proposal.target);
    snapshot.attributes["dependency_count"] = dependency_count;
    snapshot.attributes["traffic_level"] = std::string(traffic_level_name(traffic));
    return snapshot;
}

} // namespace kedge
