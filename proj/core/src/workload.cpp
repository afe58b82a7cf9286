#include "kedge/harness.hpp"

#include "kedge/errors.hpp"
#include "kedge/rng.hpp"

namespace kedge {

// Synthetic mixed-actor workload. Proposals arrive in small same-tick
// batches; a conflict-rate draw routes a proposal onto the batch's shared
// "hot" entity with a value unique to it, so any two hot members of a batch
// conflict. Everything else targets a private entity.
Scenario generate_workload(const WorkloadSpec& spec) {
    if (spec.n_proposals <= 0) raise(Errc::BadParams, "n_proposals must be positive");
    if (spec.actor_mix.empty()) raise(Errc::BadParams, "actor_mix must not be empty");
    int total_weight = 0;
    for (const auto& [role, weight] : spec.actor_mix) {
        if (weight <= 0) raise(Errc::BadParams, "actor weights must be positive");
        total_weight += weight;
    }
    if (spec.conflict_rate < Fixed4::from_raw(0) ||
        spec.conflict_rate > Fixed4::from_raw(Fixed4::kScale))
        raise(Errc::BadParams, "conflict_rate must lie in [0, 1]");

    DeterministicRng rng(spec.seed);
    Scenario scenario;
    scenario.name = "workload-" + std::to_string(spec.seed) + "-" +
                    std::to_string(spec.n_proposals);
    scenario.seed = spec.seed;
    scenario.policy_source =
        "permit (principal, action, resource);\n"
        "forbid (principal in Role::\"UnverifiedAgent\", action, resource) when {\n"
        "    context.trust_score < 0.4\n"
        "};\n";

    // one actor per weight unit, trust drawn per actor
    for (const auto& [role, weight] : spec.actor_mix) {
        for (int k = 0; k < weight; ++k) {
            Actor actor;
            actor.actor_id = "w-" + std::string(role_name(role)) + "-" + std::to_string(k);
            actor.role = role;
            actor.authority = scenario.governance.authority_for(role);
            actor.trust = rng.unit_fixed4();
            scenario.actors.push_back(std::move(actor));
        }
    }

    auto pick_actor = [&]() -> const Actor& {
        return scenario.actors[rng.below(scenario.actors.size())];
    };

    Tick tick = 5000;
    int seq = 0;
    while (seq < spec.n_proposals) {
        const int remaining = spec.n_proposals - seq;
        int batch_size = static_cast<int>(1 + rng.below(4));
        if (batch_size > remaining) batch_size = remaining;
        const std::string hot_entity = "hot-" + std::to_string(tick);
        bool hot_used = false;
        for (int b = 0; b < batch_size; ++b, ++seq) {
            ScriptStep step;
            step.tick = tick;
            const Actor& actor = pick_actor();
            step.actor_id = actor.actor_id;
            step.intent_id = "w-i-" + std::to_string(seq);
            step.action = "UpdateMetric";
            const bool hot =
                rng.below(static_cast<std::uint64_t>(Fixed4::kScale)) <
                static_cast<std::uint64_t>(spec.conflict_rate.raw());
            step.target = hot ? hot_entity : "ent-" + std::to_string(seq);
            hot_used |= hot;
            Fact fact;
            fact.entity_id = step.target;
            fact.key = "metric";
            fact.value = static_cast<std::int64_t>(seq); // unique per proposal
            step.facts = {fact};
            if (rng.below(40) == 0) step.origin_tick = tick - 4000; // occasionally stale
            scenario.script.push_back(std::move(step));
        }
        if (hot_used) {
            Resource r;
            r.entity_id = hot_entity;
            r.kind = ResourceKind::Service;
            scenario.world.resources.emplace(r.entity_id, std::move(r));
        }
        tick += 1 + static_cast<Tick>(rng.below(3));
    }

    for (const ScriptStep& step : scenario.script) {
        if (scenario.world.resources.contains(step.target)) continue;
        Resource r;
        r.entity_id = step.target;
        r.kind = ResourceKind::Service;
        scenario.world.resources.emplace(r.entity_id, std::move(r));
    }
    return scenario;
}

} // namespace kedge
