#include "kedge/execution.hpp"

#include <algorithm>

#include "kedge/errors.hpp"

namespace kedge {

namespace {

// By value: execute() appends to the same log while consuming this.
IntentPayload intent_payload_for(const EvidenceChain& log, const std::string& intent_id) {
    for (const ChainEntry& entry : log.lineage(intent_id))
        if (const auto* p = std::get_if<IntentPayload>(&entry.event.payload)) return *p;
    raise(Errc::UnknownIntent, "no IntentProposed entry for '" + intent_id + "'");
}

std::vector<Fact> facts_for_resource(const IntentPayload& intent, const std::string& resource,
                                     const Actor& actor, Tick at) {
    std::vector<Fact> out;
    for (Fact fact : intent.asserted_facts) {
        if (fact.entity_id != resource) continue;
        fact.asserted_by = actor.actor_id;
        fact.asserted_at = at;
        out.push_back(std::move(fact));
    }
    return out;
}

} // namespace

std::vector<ChainEntry> execute(const ExecutionContract& contract, const TaskToken& token,
                                std::span<const ExecRequest> requests, WorldState& world,
                                const TokenRegistry& registry, EvidenceChain& log, Tick now,
                                const Actor& actor) {
    const IntentPayload intent = intent_payload_for(log, contract.intent_id);
    std::vector<ChainEntry> outcomes;

    for (const ExecRequest& request : requests) {
        const Tick at = request.at.value_or(now);
        OutcomePayload outcome;
        outcome.action = request.action;
        outcome.actor_role = actor.role;
        outcome.completed_at = at;
        outcome.contract_id = contract.contract_id;
        outcome.resource = request.resource;

        const AuthorizationOutcome auth =
            registry.authorize(token.token_id, request.action, request.resource, at);
        if (!auth.allowed) {
            outcome.allowed = false;
            outcome.deny_reason = deny_reason_name(*auth.reason);
        } else if (!world.has(request.resource)) {
            outcome.allowed = false;
            outcome.deny_reason = "UnknownResource";
        } else if (!world.at(request.resource).alive) {
            outcome.allowed = false;
            outcome.deny_reason = "ResourceTerminated";
        } else {
            Resource& resource = world.at(request.resource);
            std::vector<Fact> effects = facts_for_resource(intent, request.resource, actor, at);

            if (request.action == "ScaleCluster") {
                // capacity floor is a world-level refusal, not a policy matter
                std::optional<std::int64_t> capacity;
                for (const Fact& f : effects)
                    if (f.key == "capacity")
                        if (const auto* v = std::get_if<std::int64_t>(&f.value)) capacity = *v;
                if (capacity && *capacity < 0) {
                    outcome.allowed = false;
                    outcome.deny_reason = "CapacityFloor";
                    outcomes.push_back(log.append({"evt-" + std::to_string(log.size()),
                                                   contract.intent_id, actor.actor_id, at,
                                                   outcome}));
                    continue;
                }
                if (capacity) world.capacity[request.resource] = *capacity;
            }

            if (request.action == "TerminateInstance") {
                resource.alive = false;
                const bool asserted = std::any_of(effects.begin(), effects.end(),
                                                  [](const Fact& f) { return f.key == "alive"; });
                if (!asserted) {
                    Fact dead;
                    dead.entity_id = request.resource;
                    dead.key = "alive";
                    dead.value = false;
                    dead.asserted_by = actor.actor_id;
                    dead.asserted_at = at;
                    effects.push_back(std::move(dead));
                }
            }

            for (const Fact& fact : effects) resource.attributes[fact.key] = fact.value;
            outcome.allowed = true;
            outcome.effects = std::move(effects);
        }

        outcomes.push_back(log.append(
            {"evt-" + std::to_string(log.size()), contract.intent_id, actor.actor_id, at, outcome}));
    }
    return outcomes;
}

} // namespace kedge
