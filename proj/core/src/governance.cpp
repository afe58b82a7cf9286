#include "kedge/governance.hpp"

#include <algorithm>
#include <deque>

#include "kedge/errors.hpp"

namespace kedge {

Fixed4 GovernanceConfig::authority_for(Role role) const {
    auto it = authority_map.find(role);
    if (it == authority_map.end())
        raise(Errc::BadParams, "no authority configured for role " + std::string(role_name(role)));
    return it->second;
}

bool GovernanceConfig::actions_exclusive(const std::string& a, const std::string& b) const {
    if (conflicts_with_any.contains(a) || conflicts_with_any.contains(b)) return true;
    auto normalized = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    return exclusive_pairs.contains(normalized);
}

namespace {

bool fact_values_equal(const FactValue& a, const FactValue& b) { return a == b; }

std::vector<std::string> involved_entities(const IntentProposal& p) {
    std::vector<std::string> out{p.target};
    for (const Fact& f : p.asserted_facts) out.push_back(f.entity_id);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool proposals_conflict(const IntentProposal& a, const IntentProposal& b,
                        const GovernanceConfig& config) {
    // Intersecting (entity, key) assertions with unequal values.
    for (const Fact& fa : a.asserted_facts)
        for (const Fact& fb : b.asserted_facts)
            if (fa.entity_id == fb.entity_id && fa.key == fb.key &&
                !fact_values_equal(fa.value, fb.value))
                return true;
    // Mutually exclusive actions touching a shared entity.
    if (config.actions_exclusive(a.action, b.action)) {
        const auto ea = involved_entities(a);
        const auto eb = involved_entities(b);
        for (const auto& e : ea)
            if (std::binary_search(eb.begin(), eb.end(), e)) return true;
    }
    return false;
}

} // namespace

std::vector<std::pair<std::string, std::string>>
detect_conflicts(std::span<const IntentProposal> batch, const GovernanceConfig& config) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        for (std::size_t j = i + 1; j < batch.size(); ++j) {
            if (!proposals_conflict(batch[i], batch[j], config)) continue;
            auto pair = batch[i].intent_id <= batch[j].intent_id
                            ? std::make_pair(batch[i].intent_id, batch[j].intent_id)
                            : std::make_pair(batch[j].intent_id, batch[i].intent_id);
            pairs.push_back(std::move(pair));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

PriorityScore priority(const IntentProposal& proposal, const GovernanceConfig& config) {
    return PriorityScore::weighted(config.alpha, config.authority_for(proposal.actor.role),
                                   config.beta, proposal.actor.trust);
}

Tick recency(const IntentProposal& proposal, Tick now) {
    if (proposal.origin_tick > now)
        raise(Errc::ClockSkew, "intent '" + proposal.intent_id + "' originates at tick " +
                                   std::to_string(proposal.origin_tick) + " > now " +
                                   std::to_string(now));
    return now - proposal.origin_tick;
}

std::vector<std::size_t> batch_order(std::span<const IntentProposal> batch,
                                     const GovernanceConfig& config) {
    std::vector<std::size_t> order(batch.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const PriorityScore pa = priority(batch[a], config);
        const PriorityScore pb = priority(batch[b], config);
        if (pa != pb) return pa > pb;
        if (batch[a].origin_tick != batch[b].origin_tick)
            return batch[a].origin_tick > batch[b].origin_tick; // smaller recency first
        if (batch[a].actor.actor_id != batch[b].actor.actor_id)
            return batch[a].actor.actor_id < batch[b].actor.actor_id;
        return batch[a].intent_id < batch[b].intent_id;
    });
    return order;
}

ArbitrationResult arbitrate(std::span<const IntentProposal> batch, const GovernanceConfig& config,
                            Tick now) {
    ArbitrationResult result;
    result.conflict_pairs = detect_conflicts(batch, config);

    std::map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < batch.size(); ++i) by_id.emplace(batch[i].intent_id, i);

    std::set<std::string> stale;
    for (const IntentProposal& p : batch)
        if (recency(p, now) > config.max_recency) stale.insert(p.intent_id);

    // Conflict graph among survivors.
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const auto& [a, b] : result.conflict_pairs) {
        if (stale.contains(a) || stale.contains(b)) continue;
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }

    std::set<std::string> admitted, escalated;
    std::map<std::string, std::string> rejected; // id -> reason
    for (const auto& id : stale) rejected.emplace(id, "Stale");

    std::set<std::string> visited;
    const auto order = batch_order(batch, config);
    for (const std::size_t idx : order) {
        const std::string& root = batch[idx].intent_id;
        if (stale.contains(root) || visited.contains(root)) continue;
        // Collect the connected conflict component.
        std::vector<std::string> component;
        std::deque<std::string> frontier{root};
        visited.insert(root);
        while (!frontier.empty()) {
            std::string id = frontier.front();
            frontier.pop_front();
            component.push_back(id);
            for (const auto& next : adjacency[id])
                if (visited.insert(next).second) frontier.push_back(next);
        }
        if (component.size() == 1) {
            admitted.insert(root);
            continue;
        }
        // Unique priority maximum wins; epsilon-ties escalate the component.
        std::sort(component.begin(), component.end(), [&](const std::string& a, const std::string& b) {
            const PriorityScore pa = priority(batch[by_id.at(a)], config);
            const PriorityScore pb = priority(batch[by_id.at(b)], config);
            if (pa != pb) return pa > pb;
            return a < b;
        });
        const PriorityScore top = priority(batch[by_id.at(component[0])], config);
        const PriorityScore second = priority(batch[by_id.at(component[1])], config);
        if (PriorityScore::within_epsilon(top, second, config.priority_epsilon)) {
            for (const auto& id : component) escalated.insert(id);
        } else {
            admitted.insert(component[0]);
            for (std::size_t k = 1; k < component.size(); ++k)
                rejected.emplace(component[k], "LostArbitration");
        }
    }

    // Emit all three lists in canonical batch order.
    for (const std::size_t idx : order) {
        const std::string& id = batch[idx].intent_id;
        if (admitted.contains(id)) result.admitted.push_back(id);
        else if (escalated.contains(id)) result.escalated.push_back(id);
        else result.rejected.emplace_back(id, rejected.at(id));
    }
    return result;
}

std::vector<ChainEntry> govern(std::span<const IntentProposal> batch, const DerivedState& state,
                               const WorldState& world, const PolicySet& policies,
                               const GovernanceConfig& config, EvidenceChain& log, Tick now) {
    if (batch.empty()) return {};
    for (const IntentProposal& p : batch) {
        if (p.batch_id != batch.front().batch_id)
            raise(Errc::BadParams, "batch mixes batch ids");
        if (p.asserted_facts.empty())
            raise(Errc::BadParams, "intent '" + p.intent_id + "' asserts no facts");
        if (log.contains_intent(p.intent_id))
            raise(Errc::BadParams, "intent '" + p.intent_id + "' already present in log");
    }

    const auto order = batch_order(batch, config);
    const ArbitrationResult arb = arbitrate(batch, config, now);

    enum class Disposition { Admitted, Stale, Loser, Tied };
    std::map<std::string, Disposition> dispositions;
    for (const auto& id : arb.admitted) dispositions[id] = Disposition::Admitted;
    for (const auto& id : arb.escalated) dispositions[id] = Disposition::Tied;
    for (const auto& [id, reason] : arb.rejected)
        dispositions[id] = reason == "Stale" ? Disposition::Stale : Disposition::Loser;

    std::map<std::string, std::vector<std::string>> conflicts_of;
    for (const auto& [a, b] : arb.conflict_pairs) {
        conflicts_of[a].push_back(b);
        conflicts_of[b].push_back(a);
    }
    for (auto& [id, list] : conflicts_of) std::sort(list.begin(), list.end());

    auto next_event_id = [&log] { return "evt-" + std::to_string(log.size()); };

    for (const std::size_t idx : order) {
        const IntentProposal& p = batch[idx];
        IntentPayload payload;
        payload.action = p.action;
        payload.actor_id = p.actor.actor_id;
        payload.actor_role = p.actor.role;
        payload.asserted_facts = p.asserted_facts;
        payload.batch_id = p.batch_id;
        payload.origin_tick = p.origin_tick;
        payload.target = p.target;
        log.append({next_event_id(), p.intent_id, p.actor.actor_id, now, payload});
    }

    std::vector<ChainEntry> decisions;
    for (const std::size_t idx : order) {
        const IntentProposal& p = batch[idx];
        const ContextSnapshot ctx = snapshot_context(state, p, world, now);

        ContextPayload ctx_payload;
        ctx_payload.attributes = ctx.attributes;
        ctx_payload.intent_id = p.intent_id;
        ctx_payload.resource_scope = ctx.resource_scope;
        ctx_payload.snapshot_tick = ctx.snapshot_tick;
        log.append({next_event_id(), p.intent_id, "system", now, ctx_payload});

        DecisionPayload decision;
        if (auto it = conflicts_of.find(p.intent_id); it != conflicts_of.end())
            decision.conflicts_with = it->second;
        switch (dispositions.at(p.intent_id)) {
        case Disposition::Stale:
            decision.outcome = Outcome::Reject;
            decision.reason = "Stale";
            break;
        case Disposition::Loser:
            decision.outcome = Outcome::Reject;
            decision.reason = "LostArbitration";
            break;
        case Disposition::Tied:
            decision.outcome = Outcome::Escalate;
            decision.reason = "TiedPriority";
            break;
        case Disposition::Admitted: {
            EvaluationRequest request;
            request.actor_id = p.actor.actor_id;
            request.role = std::string(role_name(p.actor.role));
            request.action = p.action;
            request.resource_id = p.target;
            request.resource_kind =
                world.has(p.target) ? std::string(resource_kind_name(world.at(p.target).kind)) : "";
            request.context = ctx.attributes;
            try {
                const Decision verdict = evaluate(policies, request);
                decision.outcome = verdict.outcome;
                decision.evaluated_rules = verdict.evaluated_rules;
                decision.explanation = verdict.explanation;
                decision.reason = "Policy";
            } catch (const Error& e) {
                if (e.code() != Errc::MissingAttribute) throw;
                decision.outcome = Outcome::Escalate;
                decision.reason = e.what();
            }
            break;
        }
        }
        decisions.push_back(log.append({next_event_id(), p.intent_id, "system", now, decision}));
    }
    return decisions;
}

} // namespace kedge
