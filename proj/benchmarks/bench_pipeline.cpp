#include <benchmark/benchmark.h>

#include "kedge/harness.hpp"
#include "kedge/rng.hpp"

using namespace kedge;

namespace {

const char* kPolicySource = R"(
permit (principal, action, resource);
forbid (
    principal in Role::"Agent",
    action == Action::"UpdateOperatingStatus",
    resource
) when {
    context.time_since_owner_update < 3600 && context.trust_score < 0.8
};
)";

EvaluationRequest sample_request() {
    EvaluationRequest req;
    req.actor_id = "agent-1";
    req.role = "VerifiedAgent";
    req.action = "UpdateOperatingStatus";
    req.resource_id = "store-1";
    req.resource_kind = "Store";
    req.context["time_since_owner_update"] = std::int64_t{900};
    req.context["trust_score"] = Fixed4::parse("0.6");
    req.context["dependency_count"] = std::int64_t{2};
    req.context["traffic_level"] = std::string("normal");
    return req;
}

LifecycleEvent outcome_event(int i) {
    OutcomePayload p;
    p.action = "UpdateMetric";
    p.actor_role = Role::VerifiedAgent;
    p.allowed = true;
    p.completed_at = i;
    p.contract_id = "ct-i";
    p.effects = {Fact{"ent-" + std::to_string(i % 64), "metric",
                      static_cast<std::int64_t>(i), "bench", i, {}}};
    p.resource = p.effects[0].entity_id;
    return {"evt-" + std::to_string(i), "i-0", "bench", i, p};
}

} // namespace

static void BM_PolicyEvaluate(benchmark::State& state) {
    const PolicySet policies = parse_policies(kPolicySource);
    const EvaluationRequest request = sample_request();
    for (auto _ : state) {
        Decision d = evaluate(policies, request);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_PolicyEvaluate);

static void BM_ChainAppend(benchmark::State& state) {
    for (auto _ : state) {
        state.PauseTiming();
        EvidenceChain chain;
        IntentPayload intent;
        intent.action = "UpdateMetric";
        intent.actor_id = "bench";
        intent.actor_role = Role::VerifiedAgent;
        intent.asserted_facts = {Fact{"ent-0", "metric", std::int64_t{0}, "bench", 0, {}}};
        intent.batch_id = "b";
        intent.origin_tick = 0;
        intent.target = "ent-0";
        chain.append({"evt-genesis", "i-0", "bench", 0, intent});
        state.ResumeTiming();
        for (int i = 1; i <= state.range(0); ++i) chain.append(outcome_event(i));
        benchmark::DoNotOptimize(chain.head_digest());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChainAppend)->Arg(1000);

static void BM_FoldChain(benchmark::State& state) {
    EvidenceChain chain;
    IntentPayload intent;
    intent.action = "UpdateMetric";
    intent.actor_id = "bench";
    intent.actor_role = Role::VerifiedAgent;
    intent.asserted_facts = {Fact{"ent-0", "metric", std::int64_t{0}, "bench", 0, {}}};
    intent.batch_id = "b";
    intent.origin_tick = 0;
    intent.target = "ent-0";
    chain.append({"evt-genesis", "i-0", "bench", 0, intent});
    for (int i = 1; i <= state.range(0); ++i) chain.append(outcome_event(i));
    for (auto _ : state) {
        DerivedState derived = fold(chain.entries());
        benchmark::DoNotOptimize(derived.event_count());
    }
    state.SetItemsProcessed(state.iterations() * chain.size());
}
BENCHMARK(BM_FoldChain)->Arg(1000)->Arg(10000);

static void BM_Arbitrate(benchmark::State& state) {
    GovernanceConfig cfg;
    DeterministicRng rng(1);
    std::vector<IntentProposal> batch;
    for (int k = 0; k < state.range(0); ++k) {
        IntentProposal p;
        p.intent_id = "i-" + std::to_string(k);
        const Role role = k % 2 ? Role::VerifiedAgent : Role::Automation;
        p.actor = {"actor-" + std::to_string(k), role, cfg.authority_for(role), rng.unit_fixed4()};
        p.action = "UpdateMetric";
        p.target = "ent-" + std::to_string(k % 4);
        p.asserted_facts = {Fact{p.target, "metric", static_cast<std::int64_t>(k),
                                 p.actor.actor_id, 100, {}}};
        p.origin_tick = 100;
        p.batch_id = "b";
        batch.push_back(std::move(p));
    }
    for (auto _ : state) {
        ArbitrationResult r = arbitrate(batch, cfg, 100);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_Arbitrate)->Arg(8)->Arg(64);

// End-to-end governed mutations per second: full pipeline over a generated
// workload.
static void BM_GovernedPipeline(benchmark::State& state) {
    WorkloadSpec spec;
    spec.seed = 5;
    spec.n_proposals = static_cast<int>(state.range(0));
    spec.actor_mix = {{Role::Human, 1}, {Role::VerifiedAgent, 2}, {Role::Automation, 1}};
    spec.conflict_rate = Fixed4::parse("0.2");
    const Scenario scenario = generate_workload(spec);
    for (auto _ : state) {
        RunArtifacts run = run_scenario(scenario);
        benchmark::DoNotOptimize(run.report.log_digest);
    }
    state.SetItemsProcessed(state.iterations() * spec.n_proposals);
}
BENCHMARK(BM_GovernedPipeline)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
