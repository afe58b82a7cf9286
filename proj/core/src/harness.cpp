#include "kedge/harness.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "json_codec.hpp"
#include "kedge/errors.hpp"
#include "kedge/rng.hpp"

namespace kedge {

IntentProposal proposal_from_step(const Scenario& scenario, const ScriptStep& step) {
    const Actor* actor = nullptr;
    for (const Actor& a : scenario.actors)
        if (a.actor_id == step.actor_id) {
            actor = &a;
            break;
        }
    if (!actor)
        raise(Errc::ScenarioError, "script references unknown actor '" + step.actor_id + "'");

    IntentProposal p;
    p.intent_id = step.intent_id;
    p.actor = *actor;
    p.action = step.action;
    p.target = step.target;
    p.origin_tick = step.origin_tick.value_or(step.tick);
    p.batch_id = "batch-" + std::to_string(step.tick);
    p.asserted_facts = step.facts;
    for (Fact& fact : p.asserted_facts) {
        if (fact.entity_id.empty()) fact.entity_id = step.target;
        fact.asserted_by = actor->actor_id;
        fact.asserted_at = p.origin_tick;
    }
    return p;
}

namespace {

void validate_scenario(const Scenario& scenario) {
    Tick last = std::numeric_limits<Tick>::min();
    std::set<std::string> ids;
    for (const ScriptStep& step : scenario.script) {
        if (step.tick < last)
            raise(Errc::ScenarioError, "script ticks decrease at intent '" + step.intent_id + "'");
        last = step.tick;
        if (!ids.insert(step.intent_id).second)
            raise(Errc::ScenarioError, "duplicate intent id '" + step.intent_id + "'");
        if (step.facts.empty())
            raise(Errc::ScenarioError, "intent '" + step.intent_id + "' asserts no facts");
        bool actor_known = false;
        for (const Actor& a : scenario.actors) actor_known |= a.actor_id == step.actor_id;
        if (!actor_known)
            raise(Errc::ScenarioError, "script references unknown actor '" + step.actor_id + "'");
    }
}

std::vector<std::string> spray_pool(const WorldState& world, const std::string& target) {
    std::vector<std::string> pool;
    for (const auto& [id, resource] : world.resources)
        if (id != target) pool.push_back(id);
    return pool;
}

struct IntentStats {
    std::string decision;
    int allowed = 0;
    int denied = 0;
};

std::map<std::string, IntentStats> collect_stats(const EvidenceChain& log) {
    std::map<std::string, IntentStats> stats;
    for (const ChainEntry& entry : log.entries()) {
        if (const auto* d = std::get_if<DecisionPayload>(&entry.event.payload)) {
            stats[entry.event.intent_id].decision = outcome_name(d->outcome);
        } else if (const auto* o = std::get_if<OutcomePayload>(&entry.event.payload)) {
            auto& s = stats[entry.event.intent_id];
            if (o->allowed) ++s.allowed;
            else ++s.denied;
        }
    }
    return stats;
}

} // namespace

RunArtifacts run_scenario(const Scenario& scenario) {
    const auto started = std::chrono::steady_clock::now();
    validate_scenario(scenario);

    const PolicySet policies = parse_policies(scenario.policy_source);
    RunArtifacts artifacts;
    artifacts.world = scenario.world;
    EvidenceChain& log = artifacts.log;
    TokenRegistry registry(scenario.seed);
    DeterministicRng rng(scenario.seed);

    DerivedState state;
    std::size_t cursor = 0;
    auto advance_state = [&] {
        while (cursor < log.size()) state = apply(std::move(state), log.at(cursor++));
    };

    // batches: contiguous runs of equal tick
    std::size_t i = 0;
    while (i < scenario.script.size()) {
        std::size_t j = i;
        while (j < scenario.script.size() && scenario.script[j].tick == scenario.script[i].tick)
            ++j;
        const Tick tick = scenario.script[i].tick;

        std::vector<IntentProposal> batch;
        std::map<std::string, const ScriptStep*> steps_by_intent;
        for (std::size_t k = i; k < j; ++k) {
            batch.push_back(proposal_from_step(scenario, scenario.script[k]));
            steps_by_intent.emplace(scenario.script[k].intent_id, &scenario.script[k]);
        }

        const std::vector<ChainEntry> decisions =
            govern(batch, state, artifacts.world, policies, scenario.governance, log, tick);
        advance_state();

        for (const ChainEntry& decision_entry : decisions) {
            const auto& decision = std::get<DecisionPayload>(decision_entry.event.payload);
            if (decision.outcome != Outcome::Approve) continue;
            const std::string& intent_id = decision_entry.event.intent_id;
            const IntentProposal* proposal = nullptr;
            for (const IntentProposal& p : batch)
                if (p.intent_id == intent_id) proposal = &p;
            const ScriptStep& step = *steps_by_intent.at(intent_id);

            const ExecutionContract contract =
                compile_contract(decision, *proposal, tick, scenario.governance.contract_ttl, log);
            const TaskToken token = registry.mint(contract, tick);

            std::vector<ExecRequest> requests{{proposal->action, proposal->target, std::nullopt}};
            for (const ExecRequest& extra : step.hallucination.extra_requests)
                requests.push_back(extra);
            if (step.hallucination.terminate_spray > 0) {
                const auto pool = spray_pool(artifacts.world, proposal->target);
                if (pool.empty())
                    raise(Errc::ScenarioError, "terminate_spray with no other resources");
                for (int s = 0; s < step.hallucination.terminate_spray; ++s)
                    requests.push_back(
                        {proposal->action, pool[rng.below(pool.size())], std::nullopt});
            }
            execute(contract, token, requests, artifacts.world, registry, log, tick,
                    proposal->actor);
            advance_state();
        }
        i = j;
    }

    // Internal consistency: the chain must verify and the incremental state
    // must agree with a fresh fold.
    if (const auto verdict = log.verify(); !verdict.ok)
        raise(Errc::ScenarioError, "run produced a broken chain at index " +
                                       std::to_string(verdict.first_broken_index));
    const DerivedState refolded = fold(log.entries());
    if (refolded.state_digest() != state.state_digest())
        raise(Errc::ScenarioError, "incremental state diverged from the fold");

    RunReport& report = artifacts.report;
    report.scenario = scenario.name;
    report.log_digest = log.head_digest();
    report.state_digest = state.state_digest();
    report.invariant_1 = check_invariant_1(log);
    report.invariant_2 = check_invariant_2(log);
    report.invariant_3 = check_invariant_3(log);

    for (const auto& [intent_id, stats] : collect_stats(log)) {
        if (!stats.decision.empty()) report.intent_decisions[intent_id] = stats.decision;
        if (stats.allowed || stats.denied)
            report.intent_executions[intent_id] = {stats.allowed, stats.denied};
    }

    for (const auto& [intent_id, want] : scenario.expected.decisions) {
        auto it = report.intent_decisions.find(intent_id);
        if (it == report.intent_decisions.end())
            report.expectation_diffs.push_back("intent " + intent_id + ": no decision rendered");
        else if (it->second != outcome_name(want))
            report.expectation_diffs.push_back("intent " + intent_id + ": decision " + it->second +
                                               ", expected " + std::string(outcome_name(want)));
    }
    for (const auto& [intent_id, want] : scenario.expected.executions) {
        auto it = report.intent_executions.find(intent_id);
        const auto got = it == report.intent_executions.end() ? std::make_pair(0, 0) : it->second;
        if (got != want)
            report.expectation_diffs.push_back(
                "intent " + intent_id + ": executions allowed=" + std::to_string(got.first) +
                " denied=" + std::to_string(got.second) + ", expected allowed=" +
                std::to_string(want.first) + " denied=" + std::to_string(want.second));
    }
    for (const Fact& want : scenario.expected.facts) {
        const auto got = state.fact(want.entity_id, want.key);
        if (!got)
            report.expectation_diffs.push_back("fact (" + want.entity_id + ", " + want.key +
                                               "): absent, expected " + fact_value_str(want.value));
        else if (!(got->value == want.value))
            report.expectation_diffs.push_back("fact (" + want.entity_id + ", " + want.key +
                                               "): " + fact_value_str(got->value) + ", expected " +
                                               fact_value_str(want.value));
    }

    artifacts.state = std::move(state);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return artifacts;
}

InvariantResult check_invariant_1(const EvidenceChain& log) {
    InvariantResult result;
    std::map<std::string, std::pair<std::size_t, ContractPayload>> contracts;
    for (std::size_t i = 0; i < log.size(); ++i)
        if (const auto* c = std::get_if<ContractPayload>(&log.at(i).event.payload))
            contracts.emplace(c->contract_id, std::make_pair(i, *c));

    for (std::size_t i = 0; i < log.size(); ++i) {
        const auto* o = std::get_if<OutcomePayload>(&log.at(i).event.payload);
        if (!o || !o->allowed || o->effects.empty()) continue;
        const std::string where = "outcome " + log.at(i).event.event_id;
        auto it = contracts.find(o->contract_id);
        if (it == contracts.end()) {
            result.violations.push_back(where + ": no ContractIssued for '" + o->contract_id + "'");
            continue;
        }
        const auto& [contract_index, contract] = it->second;
        if (contract_index > i) {
            result.violations.push_back(where + ": contract issued after execution");
            continue;
        }
        const bool in_scope =
            std::binary_search(contract.resource_scope.begin(), contract.resource_scope.end(),
                               o->resource);
        if (o->action != contract.action || !in_scope || o->completed_at < contract.valid_from ||
            o->completed_at > contract.valid_until) {
            result.violations.push_back(where + ": attempt outside contract bounds");
            continue;
        }
        for (const Fact& effect : o->effects)
            if (!std::binary_search(contract.resource_scope.begin(),
                                    contract.resource_scope.end(), effect.entity_id))
                result.violations.push_back(where + ": effect on '" + effect.entity_id +
                                            "' outside contract scope");
    }
    result.pass = result.violations.empty();
    return result;
}

InvariantResult check_invariant_2(const EvidenceChain& log) {
    InvariantResult result;
    std::set<std::pair<std::string, std::string>> pairs;
    std::set<std::string> effectful;
    for (const ChainEntry& entry : log.entries()) {
        if (const auto* d = std::get_if<DecisionPayload>(&entry.event.payload)) {
            for (const std::string& other : d->conflicts_with) {
                auto pair = entry.event.intent_id <= other
                                ? std::make_pair(entry.event.intent_id, other)
                                : std::make_pair(other, entry.event.intent_id);
                pairs.insert(std::move(pair));
            }
        } else if (const auto* o = std::get_if<OutcomePayload>(&entry.event.payload)) {
            if (o->allowed && !o->effects.empty()) effectful.insert(entry.event.intent_id);
        }
    }
    for (const auto& [a, b] : pairs)
        if (effectful.contains(a) && effectful.contains(b))
            result.violations.push_back("conflict pair (" + a + ", " + b +
                                        ") executed on both sides");
    result.pass = result.violations.empty();
    return result;
}

InvariantResult check_invariant_3(const EvidenceChain& log) {
    InvariantResult result;
    std::map<std::string, bool> contract_seen; // id -> has outcome
    for (const ChainEntry& entry : log.entries()) {
        if (const auto* c = std::get_if<ContractPayload>(&entry.event.payload))
            contract_seen.try_emplace(c->contract_id, false);
        else if (const auto* o = std::get_if<OutcomePayload>(&entry.event.payload)) {
            auto it = contract_seen.find(o->contract_id);
            if (it != contract_seen.end()) it->second = true;
        }
    }
    for (const auto& [id, seen] : contract_seen)
        if (!seen) result.violations.push_back("contract '" + id + "' produced no outcome");
    result.pass = result.violations.empty();
    return result;
}

std::string report_to_json_text(const RunReport& report) {
    codec::json j;
    j["scenario"] = report.scenario;
    j["log_digest"] = report.log_digest.hex();
    j["state_digest"] = report.state_digest.hex();
    codec::json decisions = codec::json::object();
    for (const auto& [intent, outcome] : report.intent_decisions) decisions[intent] = outcome;
    j["intent_decisions"] = decisions;
    codec::json executions = codec::json::object();
    for (const auto& [intent, counts] : report.intent_executions)
        executions[intent] = {{"allowed", counts.first}, {"denied", counts.second}};
    j["intent_executions"] = executions;
    auto inv = [](const InvariantResult& r) {
        codec::json ij;
        ij["pass"] = r.pass;
        ij["violations"] = r.violations;
        return ij;
    };
    j["invariants"] = {{"execution_event_consistency", inv(report.invariant_1)},
                       {"multi_agent_conflict_safety", inv(report.invariant_2)},
                       {"liveness_and_progress", inv(report.invariant_3)}};
    j["expectation_diffs"] = report.expectation_diffs;
    j["wall_seconds"] = report.wall_seconds;
    return j.dump(2);
}

bool determinism_run(const Scenario& scenario, int repetitions) {
    if (repetitions < 2) raise(Errc::BadParams, "determinism_run needs at least 2 repetitions");
    const RunArtifacts first = run_scenario(scenario);
    for (int r = 1; r < repetitions; ++r) {
        const RunArtifacts next = run_scenario(scenario);
        if (next.report.log_digest != first.report.log_digest ||
            next.report.state_digest != first.report.state_digest)
            return false;
    }
    return true;
}

} // namespace kedge
