#include <doctest.h>

#include <set>

#include "kedge/errors.hpp"
#include "kedge/execution.hpp"
#include "kedge/rng.hpp"
#include "kedge/state.hpp"

using namespace kedge;

namespace {

WorldState fleet_world(int instances = 20) {
    WorldState world;
    for (int i = 0; i < instances; ++i) {
        Resource r;
        r.entity_id = "i-" + std::to_string(i);
        r.kind = ResourceKind::ComputeInstance;
        world.resources.emplace(r.entity_id, r);
    }
    Resource cluster;
    cluster.entity_id = "cluster-1";
    cluster.kind = ResourceKind::Cluster;
    world.resources.emplace(cluster.entity_id, cluster);
    world.capacity["cluster-1"] = 10;
    return world;
}

struct Pipeline {
    EvidenceChain log;
    TokenRegistry registry{11};
    Actor actor{"agent-1", Role::VerifiedAgent, Fixed4::parse("0.6"), Fixed4::parse("0.9")};

    ExecutionContract issue(const std::string& intent_id, const std::string& action,
                            const std::string& target, std::vector<Fact> facts, Tick now,
                            Tick ttl = 300) {
        IntentProposal p;
        p.intent_id = intent_id;
        p.actor = actor;
        p.action = action;
        p.target = target;
        p.asserted_facts = std::move(facts);
        p.origin_tick = now;
        p.batch_id = "b";

        IntentPayload payload;
        payload.action = p.action;
        payload.actor_id = actor.actor_id;
        payload.actor_role = actor.role;
        payload.asserted_facts = p.asserted_facts;
        payload.batch_id = p.batch_id;
        payload.origin_tick = p.origin_tick;
        payload.target = p.target;
        log.append({"evt-" + std::to_string(log.size()), intent_id, actor.actor_id, now, payload});

        DecisionPayload d;
        d.outcome = Outcome::Approve;
        d.reason = "Policy";
        return compile_contract(d, p, now, ttl, log);
    }
};

Fact fact_of(std::string entity, std::string key, FactValue value, Tick at) {
    return Fact{std::move(entity), std::move(key), std::move(value), "agent-1", at, std::nullopt};
}

} // namespace

TEST_CASE("in-scope termination kills the instance and records one allow") {
    WorldState world = fleet_world();
    Pipeline pipe;
    auto contract = pipe.issue("i-term", "TerminateInstance", "i-3",
                               {fact_of("i-3", "alive", false, 100)}, 100);
    TaskToken token = pipe.registry.mint(contract, 100);
    std::vector<ExecRequest> requests{{"TerminateInstance", "i-3", std::nullopt}};
    auto outcomes = execute(contract, token, requests, world, pipe.registry, pipe.log, 100,
                            pipe.actor);
    REQUIRE(outcomes.size() == 1);
    const auto& payload = std::get<OutcomePayload>(outcomes[0].event.payload);
    CHECK(payload.allowed);
    CHECK_FALSE(world.at("i-3").alive);
    CHECK(pipe.log.verify().ok);
}

TEST_CASE("destructive loop is caged to the contract scope") {
    WorldState world = fleet_world();
    Pipeline pipe;
    auto contract = pipe.issue("i-term", "TerminateInstance", "i-3",
                               {fact_of("i-3", "alive", false, 100)}, 100);
    TaskToken token = pipe.registry.mint(contract, 100);

    // 50 terminations: the contracted one plus 49 hallucinated targets.
    DeterministicRng rng(3);
    std::vector<ExecRequest> requests{{"TerminateInstance", "i-3", std::nullopt}};
    for (int k = 0; k < 49; ++k) {
        std::string victim = "i-" + std::to_string(rng.below(20));
        if (victim == "i-3") victim = "i-4";
        requests.push_back({"TerminateInstance", victim, std::nullopt});
    }
    auto outcomes = execute(contract, token, requests, world, pipe.registry, pipe.log, 100,
                            pipe.actor);
    REQUIRE(outcomes.size() == 50);

    int allowed = 0, denied_out_of_scope = 0;
    for (const auto& entry : outcomes) {
        const auto& payload = std::get<OutcomePayload>(entry.event.payload);
        if (payload.allowed) ++allowed;
        else if (payload.deny_reason == "OutOfScope") ++denied_out_of_scope;
    }
    CHECK(allowed == 1);
    CHECK(denied_out_of_scope == 49);

    for (const auto& [id, resource] : world.resources)
        CHECK(resource.alive == (id != "i-3"));
}

TEST_CASE("requests after the window close are denied even mid-list") {
    WorldState world = fleet_world();
    Pipeline pipe;
    auto contract = pipe.issue("i-upd", "UpdateMetric", "i-5",
                               {fact_of("i-5", "error_rate", std::string("0.02"), 100)}, 100, 50);
    TaskToken token = pipe.registry.mint(contract, 100);
    std::vector<ExecRequest> requests{
        {"UpdateMetric", "i-5", 120},
        {"UpdateMetric", "i-5", 151}, // one past valid_until = 150
    };
    auto outcomes = execute(contract, token, requests, world, pipe.registry, pipe.log, 100,
                            pipe.actor);
    REQUIRE(outcomes.size() == 2);
    CHECK(std::get<OutcomePayload>(outcomes[0].event.payload).allowed);
    const auto& late = std::get<OutcomePayload>(outcomes[1].event.payload);
    CHECK_FALSE(late.allowed);
    CHECK(late.deny_reason == "Expired");
}

TEST_CASE("terminated resources refuse further mutation") {
    WorldState world = fleet_world();
    world.at("i-7").alive = false;
    Pipeline pipe;
    auto contract = pipe.issue("i-upd", "UpdateMetric", "i-7",
                               {fact_of("i-7", "error_rate", std::string("0.5"), 100)}, 100);
    TaskToken token = pipe.registry.mint(contract, 100);
    std::vector<ExecRequest> requests{{"UpdateMetric", "i-7", std::nullopt}};
    auto outcomes = execute(contract, token, requests, world, pipe.registry, pipe.log, 100,
                            pipe.actor);
    const auto& payload = std::get<OutcomePayload>(outcomes[0].event.payload);
    CHECK_FALSE(payload.allowed);
    CHECK(payload.deny_reason == "ResourceTerminated");
    CHECK(payload.effects.empty());
    CHECK_FALSE(world.at("i-7").attributes.contains("error_rate"));
}

TEST_CASE("scaling below zero hits the capacity floor") {
    WorldState world = fleet_world();
    Pipeline pipe;
    auto contract = pipe.issue("i-scale", "ScaleCluster", "cluster-1",
                               {fact_of("cluster-1", "capacity", std::int64_t{-3}, 100)}, 100);
    TaskToken token = pipe.registry.mint(contract, 100);
    std::vector<ExecRequest> requests{{"ScaleCluster", "cluster-1", std::nullopt}};
    auto outcomes = execute(contract, token, requests, world, pipe.registry, pipe.log, 100,
                            pipe.actor);
    const auto& payload = std::get<OutcomePayload>(outcomes[0].event.payload);
    CHECK_FALSE(payload.allowed);
    CHECK(payload.deny_reason == "CapacityFloor");
    CHECK(world.capacity["cluster-1"] == 10);
}

TEST_CASE("scaling applies capacity and records the fact") {
    WorldState world = fleet_world();
    Pipeline pipe;
    auto contract = pipe.issue("i-scale", "ScaleCluster", "cluster-1",
                               {fact_of("cluster-1", "capacity", std::int64_t{4}, 100)}, 100);
    TaskToken token = pipe.registry.mint(contract, 100);
    std::vector<ExecRequest> requests{{"ScaleCluster", "cluster-1", std::nullopt}};
    auto outcomes = execute(contract, token, requests, world, pipe.registry, pipe.log, 100,
                            pipe.actor);
    CHECK(std::get<OutcomePayload>(outcomes[0].event.payload).allowed);
    CHECK(world.capacity["cluster-1"] == 4);
    DerivedState state = fold(pipe.log.entries());
    auto fact = state.fact("cluster-1", "capacity");
    REQUIRE(fact.has_value());
    CHECK(std::get<std::int64_t>(fact->value) == 4);
}

TEST_CASE("world mutation containment: every attribute delta maps to one allow outcome") {
    WorldState world = fleet_world();
    const WorldState before = world;
    Pipeline pipe;
    DeterministicRng rng(17);

    int issued = 0;
    for (int round = 0; round < 10; ++round) {
        const std::string target = "i-" + std::to_string(rng.below(20));
        const std::string key = "metric-" + std::to_string(rng.below(3));
        auto contract = pipe.issue("i-" + std::to_string(round), "UpdateMetric", target,
                                   {fact_of(target, key, static_cast<std::int64_t>(rng.below(50)),
                                            100 + round)},
                                   100 + round);
        TaskToken token = pipe.registry.mint(contract, 100 + round);
        std::vector<ExecRequest> requests{{"UpdateMetric", target, std::nullopt}};
        // sprinkle a hallucinated extra request
        if (rng.below(2) == 0)
            requests.push_back({"UpdateMetric", "i-" + std::to_string(rng.below(20)), std::nullopt});
        auto outcomes = execute(contract, token, requests, world, pipe.registry, pipe.log,
                                100 + round, pipe.actor);
        issued += static_cast<int>(outcomes.size());
    }

    // collect allowed effects from the log
    std::set<std::pair<std::string, std::string>> touched;
    int recorded = 0;
    for (const auto& entry : pipe.log.entries()) {
        if (const auto* p = std::get_if<OutcomePayload>(&entry.event.payload)) {
            ++recorded;
            if (p->allowed)
                for (const auto& f : p->effects) touched.insert({f.entity_id, f.key});
        }
    }
    CHECK(recorded == issued); // evidence totality

    for (const auto& [id, resource] : world.resources) {
        for (const auto& [key, value] : resource.attributes) {
            const auto& old = before.at(id).attributes;
            auto it = old.find(key);
            const bool changed = it == old.end() || !(it->second == value);
            if (changed) {
                const bool covered = touched.contains({id, key});
                CHECK_MESSAGE(covered, "delta on ", id, "/", key, " lacks an allow outcome");
            }
        }
    }
}

TEST_CASE("context signals report dependents and traffic") {
    WorldState world = parse_world(R"({
        "version": 1,
        "resources": [
            {"entity_id": "i-042", "kind": "ComputeInstance"},
            {"entity_id": "svc-7", "kind": "Service"},
            {"entity_id": "job-3", "kind": "Service"}
        ],
        "dependencies": [["svc-7", "i-042"], ["job-3", "i-042"]],
        "traffic": {"i-042": "normal"}
    })");
    auto [deps, traffic] = context_signals(world, "i-042");
    CHECK(deps == 2);
    CHECK(traffic == TrafficLevel::Normal);
    auto [no_deps, svc_traffic] = context_signals(world, "svc-7");
    CHECK(no_deps == 0);
    CHECK_THROWS_AS(context_signals(world, "ghost"), Error);
}
