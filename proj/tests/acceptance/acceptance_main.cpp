// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance and runtime bound is pinned here, in code.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "kedge/chain_io.hpp"
#include "kedge/harness.hpp"

using namespace kedge;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarioDir = fs::path(KEDGE_SOURCE_DIR) / "scenarios";

struct Criterion {
    Criterion(int n, std::string t) : number(n), title(std::move(t)) {}

    int number;
    std::string title;
    bool pass = true;
    std::vector<std::string> notes;

    void fail(std::string note) {
        pass = false;
        notes.push_back(std::move(note));
    }
    void require(bool ok, const std::string& note) {
        if (!ok) fail(note);
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---- criterion 1: scenario outcome parity ---------------------------------

const char* kParityCorpus[] = {
    "authority_conflict", "trust_race",            "orthogonal_merge", "stale_preemption",
    "unsafe_deletion",    "traffic_blind_scaling", "destructive_loop",
};

std::map<std::string, RunArtifacts> g_corpus_runs; // reused by criterion 3

Criterion criterion_1() {
    Criterion c{1, "scenario outcome parity (exact expectations, < 5 s)"};
    const auto start = std::chrono::steady_clock::now();
    for (const char* name : kParityCorpus) {
        try {
            Scenario scenario = load_scenario(kScenarioDir / (std::string(name) + ".json"));
            RunArtifacts run = run_scenario(scenario);
            for (const auto& diff : run.report.expectation_diffs)
                c.fail(std::string(name) + ": " + diff);
            c.require(run.log.verify().ok, std::string(name) + ": chain failed verification");
            g_corpus_runs.emplace(name, std::move(run));
        } catch (const std::exception& e) {
            c.fail(std::string(name) + ": " + e.what());
        }
    }
    const double elapsed = seconds_since(start);
    c.require(elapsed < 5.0, "corpus took " + std::to_string(elapsed) + " s (bound 5 s)");
    return c;
}

// ---- criterion 2: determinism at scale -------------------------------------

Digest g_workload_log_digest; // for criterion 3 reuse
EvidenceChain g_workload_log;

Criterion criterion_2() {
    Criterion c{2, "determinism at 10,000 proposals (identical digests, < 60 s per run)"};
    try {
        WorkloadSpec spec;
        spec.seed = 0;
        spec.n_proposals = 10'000;
        spec.actor_mix = {{Role::Human, 2},
                          {Role::VerifiedAgent, 3},
                          {Role::UnverifiedAgent, 3},
                          {Role::Automation, 2}};
        spec.conflict_rate = Fixed4::parse("0.2");
        Scenario scenario = generate_workload(spec);

        const auto start_a = std::chrono::steady_clock::now();
        RunArtifacts first = run_scenario(scenario);
        const double elapsed_a = seconds_since(start_a);

        const auto start_b = std::chrono::steady_clock::now();
        RunArtifacts second = run_scenario(scenario);
        const double elapsed_b = seconds_since(start_b);

        c.require(first.report.log_digest == second.report.log_digest,
                  "log digests differ between runs");
        c.require(first.report.state_digest == second.report.state_digest,
                  "state digests differ between runs");
        c.require(elapsed_a < 60.0 && elapsed_b < 60.0,
                  "runs took " + std::to_string(elapsed_a) + " s / " + std::to_string(elapsed_b) +
                      " s (bound 60 s each)");
        c.notes.push_back(std::to_string(first.log.size()) + " entries per run");
        g_workload_log_digest = first.report.log_digest;
        g_workload_log = std::move(first.log);
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
    return c;
}

// ---- criterion 3: invariant suite ------------------------------------------

LifecycleEvent forged(std::string event_id, std::string intent_id, Tick tick, EventPayload payload) {
    return {std::move(event_id), std::move(intent_id), "forger", tick, std::move(payload)};
}

Criterion criterion_3() {
    Criterion c{3, "invariants pass on corpus logs and fail on constructed violations"};
    for (const auto& [name, run] : g_corpus_runs) {
        c.require(check_invariant_1(run.log).pass, name + ": invariant 1 failed");
        c.require(check_invariant_2(run.log).pass, name + ": invariant 2 failed");
        c.require(check_invariant_3(run.log).pass, name + ": invariant 3 failed");
    }
    if (g_workload_log.size() > 0) {
        c.require(check_invariant_1(g_workload_log).pass, "workload: invariant 1 failed");
        c.require(check_invariant_2(g_workload_log).pass, "workload: invariant 2 failed");
        c.require(check_invariant_3(g_workload_log).pass, "workload: invariant 3 failed");
    } else {
        c.fail("workload log unavailable");
    }

    // orphan outcome: effectful execution without any contract
    {
        EvidenceChain log;
        IntentPayload intent;
        intent.action = "UpdateMetric";
        intent.actor_id = "forger";
        intent.actor_role = Role::VerifiedAgent;
        intent.asserted_facts = {Fact{"ent-1", "metric", std::int64_t{1}, "forger", 10, {}}};
        intent.batch_id = "b";
        intent.origin_tick = 10;
        intent.target = "ent-1";
        log.append(forged("f-0", "i-x", 10, intent));
        OutcomePayload outcome;
        outcome.action = "UpdateMetric";
        outcome.actor_role = Role::VerifiedAgent;
        outcome.allowed = true;
        outcome.completed_at = 11;
        outcome.contract_id = "ct-none";
        outcome.effects = intent.asserted_facts;
        outcome.resource = "ent-1";
        log.append(forged("f-1", "i-x", 11, outcome));
        c.require(!check_invariant_1(log).pass, "orphan outcome not flagged by invariant 1");
    }
    // double-conflict execution
    {
        EvidenceChain log;
        for (const char* id : {"i-a", "i-b"}) {
            IntentPayload intent;
            intent.action = "UpdateMetric";
            intent.actor_id = "forger";
            intent.actor_role = Role::VerifiedAgent;
            intent.asserted_facts = {Fact{"ent-1", "metric", std::string(id), "forger", 10, {}}};
            intent.batch_id = "b";
            intent.origin_tick = 10;
            intent.target = "ent-1";
            log.append(forged(std::string("fi-") + id, id, 10, intent));
        }
        for (const char* id : {"i-a", "i-b"}) {
            DecisionPayload decision;
            decision.outcome = Outcome::Approve;
            decision.reason = "Policy";
            decision.conflicts_with = {std::string(id) == "i-a" ? "i-b" : "i-a"};
            log.append(forged(std::string("fd-") + id, id, 10, decision));
            ContractPayload contract;
            contract.action = "UpdateMetric";
            contract.contract_id = std::string("ct-") + id;
            contract.issued_at = 10;
            contract.resource_scope = {"ent-1"};
            contract.valid_from = 10;
            contract.valid_until = 20;
            log.append(forged(std::string("fc-") + id, id, 10, contract));
        }
        for (const char* id : {"i-a", "i-b"}) {
            OutcomePayload outcome;
            outcome.action = "UpdateMetric";
            outcome.actor_role = Role::VerifiedAgent;
            outcome.allowed = true;
            outcome.completed_at = 11;
            outcome.contract_id = std::string("ct-") + id;
            outcome.effects = {Fact{"ent-1", "metric", std::string(id), "forger", 11, {}}};
            outcome.resource = "ent-1";
            log.append(forged(std::string("fo-") + id, id, 11, outcome));
        }
        c.require(!check_invariant_2(log).pass, "double execution not flagged by invariant 2");
        c.require(check_invariant_1(log).pass, "double-execution fixture should satisfy invariant 1");
    }
    // starved contract: truncate a healthy run right after ContractIssued
    {
        const auto& run = g_corpus_runs.at("trust_race");
        std::size_t contract_index = 0;
        for (const auto& entry : run.log.entries())
            if (std::holds_alternative<ContractPayload>(entry.event.payload))
                contract_index = entry.index;
        auto truncated = EvidenceChain::adopt(run.log.read_range(0, contract_index + 1));
        c.require(!check_invariant_3(truncated).pass, "starved contract not flagged by invariant 3");
    }
    return c;
}

// ---- criterion 4: tamper detection ------------------------------------------

Criterion criterion_4() {
    Criterion c{4, "single-bit tamper detection over every field of a 100-entry log (< 10 s)"};
    const auto start = std::chrono::steady_clock::now();
    try {
        // fixture: exactly 100 entries from a small governed workload
        WorkloadSpec spec;
        spec.seed = 11;
        spec.n_proposals = 40;
        spec.actor_mix = {{Role::Human, 1}, {Role::VerifiedAgent, 2}, {Role::UnverifiedAgent, 1}};
        spec.conflict_rate = Fixed4::parse("0.3");
        RunArtifacts run = run_scenario(generate_workload(spec));
        if (run.log.size() < 100) {
            c.fail("fixture log too small: " + std::to_string(run.log.size()));
            return c;
        }
        auto fixture = EvidenceChain::adopt(run.log.read_range(0, 100));

        const fs::path dir = fs::temp_directory_path() / "kedge_acceptance_tamper";
        fs::create_directories(dir);
        const fs::path clean_path = dir / "clean.jsonl";
        save_chain(fixture, clean_path);
        {
            std::ostringstream out;
            if (cli::cmd_verify({clean_path.string(), false}, out) != cli::kExitOk) {
                c.fail("clean fixture did not verify");
                return c;
            }
        }
        std::vector<std::string> lines;
        {
            std::ifstream in(clean_path);
            std::string line;
            while (std::getline(in, line))
                if (!line.empty()) lines.push_back(line);
        }

        // locate every serialized field: each `"key":` at any depth; the
        // mutation flips one bit of the first byte of its value
        auto field_value_positions = [](const std::string& line) {
            std::vector<std::size_t> positions;
            for (std::size_t i = 1; i + 1 < line.size(); ++i) {
                if (line[i] != ':') continue;
                if (line[i - 1] != '"') continue;
                std::size_t k = i - 1;
                // walk back over the key to its opening quote
                std::size_t open = line.rfind('"', k - 1);
                if (open == std::string::npos) continue;
                positions.push_back(i + 1);
            }
            return positions;
        };

        int mutations = 0;
        const fs::path mutated_path = dir / "mutated.jsonl";
        for (std::size_t i = 0; i < lines.size(); ++i) {
            for (const std::size_t pos : field_value_positions(lines[i])) {
                std::vector<std::string> mutated = lines;
                mutated[i][pos] = static_cast<char>(mutated[i][pos] ^ 0x02);
                {
                    std::ofstream out(mutated_path, std::ios::trunc | std::ios::binary);
                    for (const auto& l : mutated) out << l << '\n';
                }
                std::ostringstream out;
                const int code = cli::cmd_verify({mutated_path.string(), true}, out);
                ++mutations;
                if (code != cli::kExitViolation) {
                    c.fail("entry " + std::to_string(i) + " offset " + std::to_string(pos) +
                           ": exit " + std::to_string(code) + ", expected 2");
                    continue;
                }
                const auto verdict = nlohmann::json::parse(out.str());
                const std::uint64_t reported = verdict.at("first_broken_index").get<std::uint64_t>();
                if (reported > i)
                    c.fail("entry " + std::to_string(i) + " offset " + std::to_string(pos) +
                           ": reported index " + std::to_string(reported) + " after mutation");
            }
        }
        fs::remove_all(dir);
        c.notes.push_back(std::to_string(mutations) + " single-bit mutations");
        const double elapsed = seconds_since(start);
        c.require(elapsed < 10.0, "took " + std::to_string(elapsed) + " s (bound 10 s)");
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
    return c;
}

// ---- criterion 5: policy parity ---------------------------------------------

Criterion criterion_5() {
    Criterion c{5, "temporal-guard rule parity (reject at trust 0.6, approve at 0.9, named rules)"};
    try {
        const PolicySet policies =
            parse_policies(read_file(kScenarioDir / "policies/temporal_guard.kpol"));

        EvaluationRequest request;
        request.actor_id = "agent-1";
        request.role = "VerifiedAgent";
        request.action = "UpdateOperatingStatus";
        request.resource_id = "store-1";
        request.resource_kind = "Store";
        request.context["time_since_owner_update"] = std::int64_t{900};
        request.context["trust_score"] = Fixed4::parse("0.6");
        request.context["dependency_count"] = std::int64_t{0};
        request.context["traffic_level"] = std::string("normal");

        const Decision reject = evaluate(policies, request);
        c.require(reject.outcome == Outcome::Reject, "trust 0.6 did not Reject");
        c.require(!reject.explanation.empty() && reject.explanation.front() == "rule-2",
                  "reject trace does not name the forbid rule");

        request.context["trust_score"] = Fixed4::parse("0.9");
        const Decision approve = evaluate(policies, request);
        c.require(approve.outcome == Outcome::Approve, "trust 0.9 did not Approve");
        c.require(!approve.explanation.empty() && approve.explanation.front() == "rule-1",
                  "approve trace does not name the permit rule");

        // the CLI surface agrees
        std::ostringstream out;
        const std::string policy_path = (kScenarioDir / "policies/temporal_guard.kpol").string();
        const int low = cli::cmd_policy_check(
            {policy_path, (kScenarioDir / "requests/agent_low_trust.json").string(), false}, out);
        const int high = cli::cmd_policy_check(
            {policy_path, (kScenarioDir / "requests/agent_high_trust.json").string(), false}, out);
        c.require(low == cli::kExitExpectation, "policy check exit for trust 0.6 was not 1");
        c.require(high == cli::kExitOk, "policy check exit for trust 0.9 was not 0");
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
    return c;
}

// ---- criterion 6: fold/apply oracle equivalence ------------------------------

Criterion criterion_6() {
    Criterion c{6, "fold/apply equivalence over 1,000 fuzzed logs (digest equality)"};
    DeterministicRng rng(606);
    try {
        for (int round = 0; round < 1'000; ++round) {
            EvidenceChain chain;
            Tick tick = 1;
            int intents = 0;
            const int events = 1 + static_cast<int>(rng.below(50));
            for (int e = 0; e < events; ++e) {
                tick += static_cast<Tick>(rng.below(3));
                if (intents == 0 || rng.below(3) == 0) {
                    IntentPayload intent;
                    intent.action = "UpdateMetric";
                    intent.actor_id = "fuzz";
                    intent.actor_role = rng.below(2) ? Role::Human : Role::VerifiedAgent;
                    intent.asserted_facts = {
                        Fact{"e-" + std::to_string(rng.below(4)), "k", std::int64_t{0}, "fuzz",
                             tick, {}}};
                    intent.batch_id = "b";
                    intent.origin_tick = tick;
                    intent.target = intent.asserted_facts[0].entity_id;
                    chain.append({"a-" + std::to_string(e), "i-" + std::to_string(intents++),
                                  "fuzz", tick, intent});
                    continue;
                }
                OutcomePayload outcome;
                outcome.action = "UpdateMetric";
                outcome.actor_role = rng.below(3) == 0 ? Role::Human : Role::VerifiedAgent;
                outcome.allowed = true;
                outcome.completed_at = tick;
                outcome.contract_id = "ct";
                Fact fact{"e-" + std::to_string(rng.below(4)), "k-" + std::to_string(rng.below(3)),
                          static_cast<std::int64_t>(rng.below(100)), "fuzz", tick, {}};
                if (rng.below(4) == 0) fact.valid_until = tick + 1 + static_cast<Tick>(rng.below(5));
                outcome.effects = {fact};
                outcome.resource = fact.entity_id;
                chain.append({"a-" + std::to_string(e),
                              "i-" + std::to_string(rng.below(static_cast<std::uint64_t>(intents))),
                              "fuzz", tick, outcome});
            }
            const auto entries = chain.entries();
            const std::size_t split = rng.below(entries.size() + 1);
            DerivedState full = fold(entries);
            DerivedState partial = fold(entries.subspan(0, split));
            for (std::size_t k = split; k < entries.size(); ++k)
                partial = apply(std::move(partial), entries[k]);
            if (full.state_digest() != partial.state_digest() ||
                full.event_count() != partial.event_count()) {
                c.fail("divergence at round " + std::to_string(round) + " split " +
                       std::to_string(split));
                break;
            }
        }
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
    return c;
}

// ---- criterion 7: token-bound exactness --------------------------------------

Criterion criterion_7() {
    Criterion c{7, "authorize matches {action} x scope x window on 10,000 triples per contract"};
    DeterministicRng rng(707);
    try {
        for (int round = 0; round < 12; ++round) {
            EvidenceChain log;
            IntentProposal proposal;
            proposal.intent_id = "i-" + std::to_string(round);
            proposal.actor = {"agent", Role::VerifiedAgent, Fixed4::parse("0.6"),
                              Fixed4::parse("0.9")};
            proposal.action = "act-" + std::to_string(rng.below(3));
            const int scope = 1 + static_cast<int>(rng.below(5));
            for (int s = 0; s < scope; ++s)
                proposal.asserted_facts.push_back(Fact{"res-" + std::to_string(rng.below(7)), "k",
                                                       std::int64_t{1}, "agent", 100, {}});
            proposal.target = proposal.asserted_facts.front().entity_id;
            proposal.origin_tick = 100;
            proposal.batch_id = "b";

            IntentPayload payload;
            payload.action = proposal.action;
            payload.actor_id = "agent";
            payload.actor_role = Role::VerifiedAgent;
            payload.asserted_facts = proposal.asserted_facts;
            payload.batch_id = "b";
            payload.origin_tick = 100;
            payload.target = proposal.target;
            log.append({"evt-0", proposal.intent_id, "agent", 100, payload});

            DecisionPayload approve;
            approve.outcome = Outcome::Approve;
            approve.reason = "Policy";
            const Tick ttl = 1 + static_cast<Tick>(rng.below(300));
            const ExecutionContract contract = compile_contract(approve, proposal, 100, ttl, log);
            TokenRegistry registry(round);
            const TaskToken token = registry.mint(contract, 100);

            for (int trial = 0; trial < 10'000; ++trial) {
                const std::string action = "act-" + std::to_string(rng.below(4));
                const std::string resource = "res-" + std::to_string(rng.below(9));
                const Tick at = 100 - 100 + static_cast<Tick>(rng.below(600));
                const bool expected = contract.covers(action, resource, at);
                const bool actual =
                    registry.authorize(token.token_id, action, resource, at).allowed;
                if (expected != actual) {
                    c.fail("contract " + std::to_string(round) + " trial " +
                           std::to_string(trial) + ": predicate disagreement");
                    break;
                }
            }
        }
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
    return c;
}

// ---- criterion 8: arbitration properties --------------------------------------

Criterion criterion_8() {
    Criterion c{8, "arbitration: permutation invariance, joint-scaling invariance, tie escalation"};
    GovernanceConfig base;
    DeterministicRng rng(808);

    auto random_batch = [&](int min_size) {
        std::vector<IntentProposal> batch;
        const int n = min_size + static_cast<int>(rng.below(6));
        const Role roles[] = {Role::Human, Role::VerifiedAgent, Role::UnverifiedAgent,
                              Role::Automation};
        for (int k = 0; k < n; ++k) {
            IntentProposal p;
            p.intent_id = "i-" + std::to_string(k);
            const Role role = roles[rng.below(4)];
            p.actor = {"actor-" + std::to_string(k), role, base.authority_for(role),
                       rng.unit_fixed4()};
            p.action = rng.below(5) == 0 ? "TerminateInstance" : "UpdateMetric";
            p.target = "ent-" + std::to_string(rng.below(3));
            p.asserted_facts = {Fact{p.target, "k-" + std::to_string(rng.below(2)),
                                     static_cast<std::int64_t>(rng.below(4)), p.actor.actor_id,
                                     100, {}}};
            p.origin_tick = 100 + static_cast<Tick>(rng.below(6000));
            p.batch_id = "b";
            batch.push_back(std::move(p));
        }
        return batch;
    };

    auto normalized = [](ArbitrationResult r) {
        std::sort(r.admitted.begin(), r.admitted.end());
        std::sort(r.rejected.begin(), r.rejected.end());
        std::sort(r.escalated.begin(), r.escalated.end());
        std::sort(r.conflict_pairs.begin(), r.conflict_pairs.end());
        return r;
    };
    auto same = [&](const ArbitrationResult& a, const ArbitrationResult& b) {
        auto na = normalized(a);
        auto nb = normalized(b);
        return na.admitted == nb.admitted && na.rejected == nb.rejected &&
               na.escalated == nb.escalated && na.conflict_pairs == nb.conflict_pairs;
    };

    try {
        // permutation invariance over 100 random batches (+ conflict safety)
        for (int round = 0; round < 100; ++round) {
            auto batch = random_batch(2);
            auto baseline = arbitrate(batch, base, 6200);
            auto shuffled = batch;
            for (std::size_t i = shuffled.size(); i > 1; --i)
                std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
            if (!same(baseline, arbitrate(shuffled, base, 6200))) {
                c.fail("permutation variance at round " + std::to_string(round));
                break;
            }
            for (const auto& [a, b] : baseline.conflict_pairs) {
                const bool a_in =
                    std::count(baseline.admitted.begin(), baseline.admitted.end(), a) > 0;
                const bool b_in =
                    std::count(baseline.admitted.begin(), baseline.admitted.end(), b) > 0;
                if (a_in && b_in) c.fail("conflict pair admitted twice at round " +
                                         std::to_string(round));
            }
        }
        // argmax invariance under joint positive scaling
        for (int round = 0; round < 100; ++round) {
            auto batch = random_batch(2);
            auto baseline = arbitrate(batch, base, 6200);
            for (const std::int64_t scale : {2, 3, 10}) {
                GovernanceConfig scaled = base;
                scaled.alpha = Fixed4::from_raw(base.alpha.raw() * scale);
                scaled.beta = Fixed4::from_raw(base.beta.raw() * scale);
                scaled.priority_epsilon = Fixed4::from_raw(base.priority_epsilon.raw() * scale);
                if (!same(baseline, arbitrate(batch, scaled, 6200))) {
                    c.fail("scaling variance at round " + std::to_string(round) + " x" +
                           std::to_string(scale));
                    break;
                }
            }
        }
        // epsilon ties escalate the whole conflict component
        for (int round = 0; round < 100; ++round) {
            std::vector<IntentProposal> batch;
            const int n = 2 + static_cast<int>(rng.below(3));
            const Fixed4 trust = rng.unit_fixed4();
            for (int k = 0; k < n; ++k) {
                IntentProposal p;
                p.intent_id = "i-" + std::to_string(k);
                p.actor = {"actor-" + std::to_string(k), Role::VerifiedAgent,
                           base.authority_for(Role::VerifiedAgent), trust};
                p.action = "UpdateMetric";
                p.target = "ent-hot";
                p.asserted_facts = {Fact{"ent-hot", "metric", static_cast<std::int64_t>(k),
                                         p.actor.actor_id, 100, {}}};
                p.origin_tick = 100;
                p.batch_id = "b";
                batch.push_back(std::move(p));
            }
            auto result = arbitrate(batch, base, 150);
            if (!result.admitted.empty() || static_cast<int>(result.escalated.size()) != n)
                c.fail("tie component not fully escalated at round " + std::to_string(round));
        }
        // conflict safety across a large fuzzed batch set
        for (int round = 0; round < 10'000; ++round) {
            auto batch = random_batch(1);
            auto result = arbitrate(batch, base, 6200);
            for (const auto& [a, b] : result.conflict_pairs) {
                const bool a_in = std::count(result.admitted.begin(), result.admitted.end(), a) > 0;
                const bool b_in = std::count(result.admitted.begin(), result.admitted.end(), b) > 0;
                if (a_in && b_in) {
                    c.fail("conflict safety violated at fuzz round " + std::to_string(round));
                    round = 10'000;
                    break;
                }
            }
        }
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
    return c;
}

} // namespace

int main() {
    std::vector<Criterion> results;
    results.push_back(criterion_1());
    results.push_back(criterion_2());
    results.push_back(criterion_3());
    results.push_back(criterion_4());
    results.push_back(criterion_5());
    results.push_back(criterion_6());
    results.push_back(criterion_7());
    results.push_back(criterion_8());

    int failures = 0;
    for (const Criterion& c : results) {
        std::cout << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": "
                  << c.title;
        if (c.pass && !c.notes.empty()) std::cout << " (" << c.notes.front() << ")";
        std::cout << "\n";
        if (!c.pass) {
            ++failures;
            for (const auto& note : c.notes) std::cout << "       - " << note << "\n";
        }
    }
    return failures;
}
