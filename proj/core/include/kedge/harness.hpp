#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "kedge/execution.hpp"
#include "kedge/governance.hpp"

namespace kedge {

// Scripted misbehavior attached to an approved intent: explicit extra
// requests and/or a spray of same-action requests against random other
// resources (drawn from the scenario RNG).
struct Hallucination {
    std::vector<ExecRequest> extra_requests;
    int terminate_spray = 0;

    friend bool operator==(const Hallucination&, const Hallucination&) = default;
};

struct ScriptStep {
    Tick tick = 0;
    std::string actor_id;
    std::string intent_id;
    std::string action;
    std::string target;
    std::vector<Fact> facts; // asserted_by / asserted_at filled by the runner
    std::optional<Tick> origin_tick; // defaults to the step tick
    Hallucination hallucination;

    friend bool operator==(const ScriptStep&, const ScriptStep&) = default;
};

struct Expectations {
    std::map<std::string, Outcome> decisions;
    std::map<std::string, std::pair<int, int>> executions; // intent -> (allowed, denied)
    std::vector<Fact> facts;                               // entity/key/value checked
};

struct Scenario {
    std::string name;
    std::uint64_t seed = 0;
    WorldState world;
    std::string policy_source;
    GovernanceConfig governance;
    std::vector<Actor> actors;
    std::vector<ScriptStep> script; // ticks non-decreasing; same tick = one batch
    Expectations expected;
};

struct InvariantResult {
    bool pass = true;
    std::vector<std::string> violations;
};

struct RunReport {
    std::string scenario;
    Digest log_digest;   // head digest of the full chain
    Digest state_digest; // digest of the final derived state
    std::map<std::string, std::string> intent_decisions;
    std::map<std::string, std::pair<int, int>> intent_executions;
    InvariantResult invariant_1, invariant_2, invariant_3;
    std::vector<std::string> expectation_diffs;
    double wall_seconds = 0.0;

    bool invariants_pass() const {
        return invariant_1.pass && invariant_2.pass && invariant_3.pass;
    }
    bool ok() const { return invariants_pass() && expectation_diffs.empty(); }
};

struct RunArtifacts {
    EvidenceChain log;
    WorldState world; // post-run
    DerivedState state;
    RunReport report;
};

// Drive govern -> compile -> mint -> execute per batch tick, then evaluate
// expectations and the three system invariants. Throws Errc::ScenarioError
// on an invalid scenario; pipeline errors propagate.
RunArtifacts run_scenario(const Scenario& scenario);

// Execution-event consistency: every effectful outcome maps to an earlier
// ContractIssued whose bounds contain the attempted (action, resource, tick).
InvariantResult check_invariant_1(const EvidenceChain& log);

// Multi-agent conflict safety: no recorded conflict pair has effectful
// outcomes on both sides.
InvariantResult check_invariant_2(const EvidenceChain& log);

// Liveness: every issued contract is followed by at least one outcome,
// effectful or denial-recorded.
InvariantResult check_invariant_3(const EvidenceChain& log);

// True iff `repetitions` runs produce identical log and state digests.
bool determinism_run(const Scenario& scenario, int repetitions);

// JSON rendering of a run report (digests, outcomes, invariants, diffs).
std::string report_to_json_text(const RunReport& report);

// Materialize one script step into a proposal (shared by runner and tests).
IntentProposal proposal_from_step(const Scenario& scenario, const ScriptStep& step);

struct WorkloadSpec {
    std::uint64_t seed = 0;
    int n_proposals = 0;
    std::vector<std::pair<Role, int>> actor_mix; // role weights, in order
    Fixed4 conflict_rate;                        // fraction of proposals joining a hot entity
};

// Reproducible synthetic scenario: same spec, same script. Throws
// Errc::BadParams.
Scenario generate_workload(const WorkloadSpec& spec);

// --- scenario / config file parsing ----------------------------------------

// Scenario JSON (version 1). Relative world/policy paths resolve against the
// scenario file's directory; a "generate" section yields a synthetic
// workload instead of a script. Throws Errc::ScenarioError.
Scenario load_scenario(const std::filesystem::path& path);

// Governance config JSON (weights, authority map, action compatibility,
// actors). Used by scenario files and `kedge submit`.
GovernanceConfig parse_governance_config(std::string_view text);
std::vector<Actor> parse_actor_registry(std::string_view text, const GovernanceConfig& config);

} // namespace kedge
