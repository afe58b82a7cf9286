#include <doctest.h>

#include "kedge/errors.hpp"
#include "kedge/rng.hpp"
#include "kedge/state.hpp"

using namespace kedge;

namespace {

Fact make_fact(std::string entity, std::string key, FactValue value, Tick at,
               std::optional<Tick> until = std::nullopt, std::string by = "actor-1") {
    Fact f;
    f.entity_id = std::move(entity);
    f.key = std::move(key);
    f.value = std::move(value);
    f.asserted_by = std::move(by);
    f.asserted_at = at;
    f.valid_until = until;
    return f;
}

LifecycleEvent intent_event(const std::string& intent_id, Tick tick, Role role = Role::Human,
                            const std::string& actor = "actor-1") {
    IntentPayload p;
    p.action = "UpdateOperatingStatus";
    p.actor_id = actor;
    p.actor_role = role;
    p.asserted_facts = {make_fact("e-1", "k", std::string("v"), tick)};
    p.batch_id = "b";
    p.origin_tick = tick;
    p.target = "e-1";

    LifecycleEvent e;
    e.event_id = "ev-" + intent_id;
    e.intent_id = intent_id;
    e.actor_id = actor;
    e.logical_time = tick;
    e.payload = p;
    return e;
}

LifecycleEvent outcome_event(const std::string& intent_id, Tick tick, std::vector<Fact> effects,
                             Role role = Role::Human, const std::string& actor = "actor-1") {
    OutcomePayload p;
    p.action = "UpdateOperatingStatus";
    p.actor_role = role;
    p.allowed = true;
    p.completed_at = tick;
    p.contract_id = "ct-" + intent_id;
    p.effects = std::move(effects);
    p.resource = p.effects.empty() ? "e-1" : p.effects.front().entity_id;

    LifecycleEvent e;
    e.event_id = "evo-" + intent_id + "-" + std::to_string(tick);
    e.intent_id = intent_id;
    e.actor_id = actor;
    e.logical_time = tick;
    e.payload = p;
    return e;
}

// Random but structurally valid chain: intents followed by effectful
// outcomes, monotone ticks, occasional expiring facts.
EvidenceChain fuzz_chain(DeterministicRng& rng, int n_events) {
    EvidenceChain chain;
    Tick tick = 1;
    int intents = 0;
    for (int i = 0; i < n_events; ++i) {
        tick += static_cast<Tick>(rng.below(3));
        if (intents == 0 || rng.below(3) == 0) {
            chain.append(intent_event("i-" + std::to_string(intents), tick,
                                      rng.below(2) ? Role::Human : Role::VerifiedAgent));
            ++intents;
            continue;
        }
        const auto intent = "i-" + std::to_string(rng.below(static_cast<std::uint64_t>(intents)));
        const auto entity = "e-" + std::to_string(rng.below(4));
        const auto key = "k-" + std::to_string(rng.below(3));
        std::optional<Tick> until;
        if (rng.below(4) == 0) until = tick + static_cast<Tick>(1 + rng.below(5));
        FactValue value;
        switch (rng.below(3)) {
        case 0: value = std::string("v-" + std::to_string(rng.below(10))); break;
        case 1: value = static_cast<std::int64_t>(rng.below(100)); break;
        default: value = rng.below(2) == 0;
        }
        chain.append(outcome_event(intent, tick, {make_fact(entity, key, value, tick, until)},
                                   rng.below(3) == 0 ? Role::Human : Role::VerifiedAgent));
    }
    return chain;
}

bool same_state(const DerivedState& a, const DerivedState& b) {
    return a.state_digest() == b.state_digest() && a.event_count() == b.event_count() &&
           a.current_tick() == b.current_tick() && a.human_updates() == b.human_updates();
}

} // namespace

TEST_CASE("fold of the empty log") {
    DerivedState state = fold({});
    CHECK(state.event_count() == 0);
    CHECK(state.current_facts().empty());
    CHECK(state.state_digest() == sha256(std::string_view("[]")));
}

TEST_CASE("fold of one outcome holds exactly that fact") {
    EvidenceChain chain;
    chain.append(intent_event("i-0", 5));
    chain.append(outcome_event("i-0", 5, {make_fact("store-1", "operating_status",
                                                    std::string("open"), 5)}));
    DerivedState state = fold(chain.entries());
    CHECK(state.event_count() == 2);
    auto facts = state.current_facts();
    REQUIRE(facts.size() == 1);
    auto fact = state.fact("store-1", "operating_status");
    REQUIRE(fact.has_value());
    CHECK(std::get<std::string>(fact->value) == "open");
}

TEST_CASE("only outcome entries mutate facts") {
    EvidenceChain chain;
    chain.append(intent_event("i-0", 5));
    DerivedState state = apply(DerivedState{}, chain.at(0));
    CHECK(state.event_count() == 1);
    CHECK(state.current_facts().empty());
}

TEST_CASE("apply rejects index gaps") {
    EvidenceChain chain;
    chain.append(intent_event("i-0", 5));
    chain.append(outcome_event("i-0", 6, {make_fact("e", "k", std::string("v"), 6)}));
    try {
        apply(DerivedState{}, chain.at(1));
        FAIL("expected IndexGap");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::IndexGap);
    }
}

TEST_CASE("expired facts drop out of the current view") {
    EvidenceChain chain;
    chain.append(intent_event("i-0", 10));
    chain.append(outcome_event("i-0", 10, {make_fact("e-1", "k", std::string("v"), 10, 12)}));
    DerivedState mid = fold(chain.entries());
    CHECK(mid.fact("e-1", "k").has_value());

    chain.append(outcome_event("i-0", 20, {make_fact("e-2", "k", std::string("w"), 20)}));
    DerivedState after = fold(chain.entries());
    CHECK_FALSE(after.fact("e-1", "k").has_value()); // valid_until 12 < tick 20
    CHECK(after.fact("e-2", "k").has_value());

    // incremental application agrees with the full fold
    DerivedState stepped = apply(mid, chain.at(2));
    CHECK(same_state(stepped, after));
}

TEST_CASE("fold/apply equivalence oracle over fuzzed logs") {
    DeterministicRng rng(20260809);
    for (int round = 0; round < 300; ++round) {
        EvidenceChain chain = fuzz_chain(rng, 1 + static_cast<int>(rng.below(40)));
        const auto entries = chain.entries();
        const std::size_t split = rng.below(entries.size() + 1);

        DerivedState full = fold(entries);
        DerivedState partial = fold(entries.subspan(0, split));
        for (std::size_t i = split; i < entries.size(); ++i)
            partial = apply(std::move(partial), entries[i]);

        REQUIRE_MESSAGE(same_state(full, partial), "round ", round, " split ", split);
    }
}

TEST_CASE("replay_at matches stepwise application at every index") {
    DeterministicRng rng(7);
    EvidenceChain chain = fuzz_chain(rng, 50);
    DerivedState stepped;
    for (std::size_t n = 0; n <= chain.size(); ++n) {
        DerivedState replayed = replay_at(chain, n);
        CHECK(same_state(replayed, stepped));
        if (n < chain.size()) stepped = apply(std::move(stepped), chain.at(n));
    }
    CHECK(replay_at(chain, 0).event_count() == 0);
    CHECK(same_state(replay_at(chain, chain.size()), fold(chain.entries())));
    CHECK_THROWS_AS(replay_at(chain, chain.size() + 1), Error);
}

TEST_CASE("fold is deterministic and pure") {
    DeterministicRng rng(99);
    EvidenceChain chain = fuzz_chain(rng, 30);
    const Digest head_before = chain.head_digest();
    const Digest digest_a = fold(chain.entries()).state_digest();
    const Digest digest_b = fold(chain.entries()).state_digest();
    CHECK(digest_a == digest_b);
    CHECK(chain.head_digest() == head_before);
    CHECK(chain.verify().ok);
}

TEST_CASE("snapshot_context derives owner recency and world signals") {
    WorldState world = parse_world(R"({
        "version": 1,
        "resources": [
            {"entity_id": "i-042", "kind": "ComputeInstance"},
            {"entity_id": "svc-7", "kind": "Service"},
            {"entity_id": "job-3", "kind": "Service"},
            {"entity_id": "lone-1", "kind": "ComputeInstance"}
        ],
        "dependencies": [["svc-7", "i-042"], ["job-3", "i-042"]],
        "traffic": {"i-042": "normal", "lone-1": "low"}
    })");

    IntentProposal proposal;
    proposal.intent_id = "i-1";
    proposal.actor = {"agent-1", Role::VerifiedAgent, Fixed4::parse("0.6"), Fixed4::parse("0.8")};
    proposal.action = "TerminateInstance";
    proposal.target = "i-042";
    proposal.asserted_facts = {make_fact("i-042", "alive", false, 1000)};
    proposal.origin_tick = 1000;
    proposal.batch_id = "b";

    SUBCASE("human updated the entity at tick 100, now 1000") {
        EvidenceChain chain;
        chain.append(intent_event("i-0", 100));
        chain.append(outcome_event("i-0", 100,
                                   {make_fact("i-042", "operating_status", std::string("ok"), 100)},
                                   Role::Human));
        DerivedState state = fold(chain.entries());
        ContextSnapshot ctx = snapshot_context(state, proposal, world, 1000);
        CHECK(std::get<std::int64_t>(ctx.attributes.at("time_since_owner_update")) == 900);
        CHECK(std::get<std::int64_t>(ctx.attributes.at("dependency_count")) == 2);
        CHECK(std::get<std::string>(ctx.attributes.at("traffic_level")) == "normal");
        CHECK(std::get<Fixed4>(ctx.attributes.at("trust_score")) == Fixed4::parse("0.8"));
        CHECK(ctx.resource_scope == std::vector<std::string>{"i-042"});
    }
    SUBCASE("no prior human update yields the sentinel") {
        ContextSnapshot ctx = snapshot_context(DerivedState{}, proposal, world, 1000);
        CHECK(std::get<std::int64_t>(ctx.attributes.at("time_since_owner_update")) ==
              kNoHumanUpdateSentinel);
    }
    SUBCASE("isolated instance has zero dependents and low traffic") {
        proposal.target = "lone-1";
        proposal.asserted_facts = {make_fact("lone-1", "alive", false, 1000)};
        ContextSnapshot ctx = snapshot_context(DerivedState{}, proposal, world, 1000);
        CHECK(std::get<std::int64_t>(ctx.attributes.at("dependency_count")) == 0);
        CHECK(std::get<std::string>(ctx.attributes.at("traffic_level")) == "low");
    }
    SUBCASE("unknown target") {
        proposal.target = "ghost-9";
        try {
            snapshot_context(DerivedState{}, proposal, world, 1000);
            FAIL("expected UnknownEntity");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::UnknownEntity);
        }
    }
}

TEST_CASE("world spec errors") {
    CHECK_THROWS_AS(parse_world("{}"), Error);
    CHECK_THROWS_AS(parse_world(R"({"version":1,"dependencies":[["a","b"]]})"), Error);
    CHECK_THROWS_AS(parse_world(R"({"version":1,"resources":[
        {"entity_id":"a"},{"entity_id":"a"}]})"),
                    Error);
    WorldState empty = parse_world(R"({"version":1})");
    CHECK(empty.resources.empty());
}
