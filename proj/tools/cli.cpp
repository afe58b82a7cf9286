#include "cli.hpp"

#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kedge/chain_io.hpp"
#include "kedge/errors.hpp"
#include "kedge/harness.hpp"

namespace kedge::cli {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string entry_summary(const ChainEntry& entry) {
    std::string line = std::to_string(entry.index) + "  tick " +
                       std::to_string(entry.event.logical_time) + "  " +
                       std::string(event_kind_name(entry.event.kind())) + "  actor=" +
                       entry.event.actor_id;
    if (const auto* d = std::get_if<DecisionPayload>(&entry.event.payload)) {
        line += "  outcome=" + std::string(outcome_name(d->outcome)) + " reason=" + d->reason;
        if (!d->explanation.empty()) {
            line += " rules=";
            for (std::size_t i = 0; i < d->explanation.size(); ++i)
                line += (i ? "," : "") + d->explanation[i];
        }
    } else if (const auto* c = std::get_if<ContractPayload>(&entry.event.payload)) {
        line += "  contract=" + c->contract_id + " action=" + c->action + " scope={";
        for (std::size_t i = 0; i < c->resource_scope.size(); ++i)
            line += (i ? "," : "") + c->resource_scope[i];
        line += "} window=[" + std::to_string(c->valid_from) + "," +
                std::to_string(c->valid_until) + "]";
    } else if (const auto* o = std::get_if<OutcomePayload>(&entry.event.payload)) {
        line += "  attempt=" + o->action + "@" + o->resource +
                (o->allowed ? "  ALLOW" : "  DENY(" + o->deny_reason + ")");
    } else if (const auto* p = std::get_if<IntentPayload>(&entry.event.payload)) {
        line += "  action=" + p->action + " target=" + p->target;
    }
    return line;
}

AttrValue attr_from_request_json(const json& j) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) return Fixed4::from_double(j.get<double>());
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_string()) return j.get<std::string>();
    raise(Errc::BadParams, "context attributes must be scalars");
}

int failure(std::ostream& out, const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return kExitUsage;
}

} // namespace

int cmd_run(const RunArgs& args, std::ostream& out) {
    Scenario scenario;
    try {
        scenario = load_scenario(args.scenario);
        if (args.seed) scenario.seed = *args.seed;
        if (!args.world_override.empty()) scenario.world = load_world(args.world_override);
    } catch (const std::exception& e) {
        return failure(out, e);
    }

    RunArtifacts artifacts;
    try {
        artifacts = run_scenario(scenario);
    } catch (const std::exception& e) {
        return failure(out, e);
    }
    const RunReport& report = artifacts.report;

    if (!args.out_dir.empty()) {
        try {
            std::filesystem::create_directories(args.out_dir);
            const std::filesystem::path dir(args.out_dir);
            save_chain(artifacts.log, dir / "log.jsonl");
            std::ofstream(dir / "state.json") << state_to_json_text(artifacts.state) << "\n";
            std::ofstream(dir / "report.json") << report_to_json_text(report) << "\n";
        } catch (const std::exception& e) {
            return failure(out, e);
        }
    }

    if (args.json) {
        out << report_to_json_text(report) << "\n";
    } else {
        out << "scenario: " << report.scenario << "\n";
        out << "log entries: " << artifacts.log.size() << "  log digest: "
            << report.log_digest.hex() << "\n";
        out << "state digest: " << report.state_digest.hex() << "\n";
        for (const auto& [intent, outcome] : report.intent_decisions) {
            out << "  " << intent << ": " << outcome;
            if (auto it = report.intent_executions.find(intent);
                it != report.intent_executions.end())
                out << " (allowed " << it->second.first << ", denied " << it->second.second << ")";
            out << "\n";
        }
        out << "invariants: execution-event "
            << (report.invariant_1.pass ? "pass" : "FAIL") << ", conflict-safety "
            << (report.invariant_2.pass ? "pass" : "FAIL") << ", liveness "
            << (report.invariant_3.pass ? "pass" : "FAIL") << "\n";
        for (const auto& diff : report.expectation_diffs) out << "expectation: " << diff << "\n";
    }

    if (!report.invariants_pass()) return kExitViolation;
    if (!report.expectation_diffs.empty()) return kExitExpectation;
    return kExitOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    LoadReport loaded;
    try {
        loaded = load_chain_lenient(args.log);
    } catch (const std::exception& e) {
        return failure(out, e);
    }
    if (!loaded.ok) {
        if (args.json) {
            json j{{"ok", false},
                   {"first_broken_index", loaded.bad_index},
                   {"fault", "MalformedRecord"},
                   {"detail", loaded.detail}};
            out << j.dump(2) << "\n";
        } else {
            out << "FAIL record " << loaded.bad_index << ": " << loaded.detail << "\n";
        }
        return kExitViolation;
    }
    const VerificationReport report = loaded.chain.verify();
    if (args.json) {
        json j{{"ok", report.ok}, {"entries", loaded.chain.size()}};
        if (!report.ok) {
            j["first_broken_index"] = report.first_broken_index;
            j["fault"] = std::string(chain_fault_name(report.fault));
            j["detail"] = report.detail;
        } else {
            j["head_digest"] = loaded.chain.head_digest().hex();
        }
        out << j.dump(2) << "\n";
    } else if (report.ok) {
        out << "OK " << loaded.chain.size() << " entries, head "
            << loaded.chain.head_digest().hex() << "\n";
    } else {
        out << "FAIL index " << report.first_broken_index << " "
            << chain_fault_name(report.fault) << ": " << report.detail << "\n";
    }
    return report.ok ? kExitOk : kExitViolation;
}

int cmd_replay(const ReplayArgs& args, std::ostream& out) {
    try {
        EvidenceChain chain = load_chain(args.log);
        const std::size_t at = args.at.value_or(chain.size());
        DerivedState state = replay_at(chain, at);
        if (args.json) {
            out << state_to_json_text(state) << "\n";
        } else {
            out << "state at index " << at << " (" << state.event_count() << " events, tick "
                << state.current_tick() << ")\n";
            for (const auto& [key, fact] : state.current_facts())
                out << "  " << key.first << "." << key.second << " = "
                    << fact_value_str(fact.value) << "  (by " << fact.asserted_by << " @ "
                    << fact.asserted_at << ")\n";
            out << "state digest: " << state.state_digest().hex() << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return failure(out, e);
    }
}

int cmd_lineage(const LineageArgs& args, std::ostream& out) {
    try {
        EvidenceChain chain = load_chain(args.log);
        const auto entries = chain.lineage(args.intent);
        if (args.json) {
            out << "[\n";
            for (std::size_t i = 0; i < entries.size(); ++i)
                out << "  " << entry_to_line(entries[i]) << (i + 1 < entries.size() ? "," : "")
                    << "\n";
            out << "]\n";
        } else {
            out << "lineage of " << args.intent << " (" << entries.size() << " entries)\n";
            for (const auto& entry : entries) out << "  " << entry_summary(entry) << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return failure(out, e);
    }
}

int cmd_policy_check(const PolicyCheckArgs& args, std::ostream& out) {
    PolicySet policies;
    EvaluationRequest request;
    try {
        policies = parse_policies(slurp(args.policies));
        const json j = json::parse(slurp(args.request));
        const json& principal = j.at("principal");
        request.actor_id = principal.at("actor_id").get<std::string>();
        request.role = principal.at("role").get<std::string>();
        request.action = j.at("action").get<std::string>();
        const json& resource = j.at("resource");
        request.resource_id = resource.at("entity_id").get<std::string>();
        request.resource_kind = resource.value("kind", "");
        for (auto it = j.at("context").begin(); it != j.at("context").end(); ++it)
            request.context.emplace(it.key(), attr_from_request_json(it.value()));
    } catch (const std::exception& e) {
        return failure(out, e);
    }

    try {
        const Decision decision = evaluate(policies, request);
        if (args.json) {
            json j{{"outcome", std::string(outcome_name(decision.outcome))},
                   {"explanation", decision.explanation}};
            json rules = json::array();
            for (const auto& t : decision.evaluated_rules)
                rules.push_back({{"rule_id", t.rule_id},
                                 {"matched", t.matched},
                                 {"effect", std::string(effect_name(t.effect))}});
            j["evaluated_rules"] = rules;
            out << j.dump(2) << "\n";
        } else {
            out << explain(decision, policies);
        }
        switch (decision.outcome) {
        case Outcome::Approve: return kExitOk;
        case Outcome::Reject: return kExitExpectation;
        case Outcome::Escalate: return kExitViolation;
        }
        return kExitUsage;
    } catch (const Error& e) {
        if (e.code() == Errc::MissingAttribute) {
            // uncertainty escalates rather than deciding
            out << "decision: Escalate\n  " << e.what() << "\n";
            return kExitViolation;
        }
        return failure(out, e);
    } catch (const std::exception& e) {
        return failure(out, e);
    }
}

int cmd_submit(const SubmitArgs& args, std::ostream& out) {
    try {
        const std::string config_text = slurp(args.config);
        const GovernanceConfig config = parse_governance_config(config_text);
        const std::vector<Actor> actors = parse_actor_registry(config_text, config);
        const PolicySet policies = parse_policies(slurp(args.policies));
        WorldState world;
        if (!args.world.empty()) world = load_world(args.world);

        EvidenceChain chain;
        if (std::filesystem::exists(args.log)) chain = load_chain(args.log);
        const std::size_t base = chain.size();
        const DerivedState state = fold(chain.entries());

        const json j = json::parse(slurp(args.intents));
        const Tick now = j.at("now").get<Tick>();
        std::vector<IntentProposal> batch;
        for (const auto& ij : j.at("batch")) {
            IntentProposal p;
            p.intent_id = ij.at("intent_id").get<std::string>();
            const std::string actor_id = ij.at("actor").get<std::string>();
            const Actor* actor = nullptr;
            for (const Actor& a : actors)
                if (a.actor_id == actor_id) actor = &a;
            if (!actor) raise(Errc::BadParams, "unknown actor '" + actor_id + "'");
            p.actor = *actor;
            p.action = ij.at("action").get<std::string>();
            p.target = ij.at("target").get<std::string>();
            p.origin_tick = ij.value("origin_tick", now);
            p.batch_id = j.value("batch_id", "batch-" + std::to_string(now));
            for (const auto& fj : ij.at("facts")) {
                Fact fact;
                fact.entity_id = fj.value("entity_id", p.target);
                fact.key = fj.at("key").get<std::string>();
                fact.value = fj.at("value").is_string()
                                 ? FactValue(fj.at("value").get<std::string>())
                                 : (fj.at("value").is_boolean()
                                        ? FactValue(fj.at("value").get<bool>())
                                        : FactValue(fj.at("value").get<std::int64_t>()));
                if (fj.contains("valid_until")) fact.valid_until = fj["valid_until"].get<Tick>();
                fact.asserted_by = actor_id;
                fact.asserted_at = p.origin_tick;
                p.asserted_facts.push_back(std::move(fact));
            }
            batch.push_back(std::move(p));
        }

        const auto decisions = govern(batch, state, world, policies, config, chain, now);

        ChainWriter writer(args.log, base == 0 ? ChainWriter::Mode::Truncate
                                               : ChainWriter::Mode::Append);
        for (std::size_t i = base; i < chain.size(); ++i) writer.write(chain.at(i));

        if (args.json) {
            json result = json::array();
            for (const auto& entry : decisions) {
                const auto& d = std::get<DecisionPayload>(entry.event.payload);
                result.push_back({{"intent_id", entry.event.intent_id},
                                  {"outcome", std::string(outcome_name(d.outcome))},
                                  {"reason", d.reason}});
            }
            out << result.dump(2) << "\n";
        } else {
            for (const auto& entry : decisions) {
                const auto& d = std::get<DecisionPayload>(entry.event.payload);
                out << entry.event.intent_id << ": " << outcome_name(d.outcome) << " ("
                    << d.reason << ")\n";
            }
            out << "appended " << chain.size() - base << " entries to " << args.log << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return failure(out, e);
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"kedge — intent-governed mutation engine and simulation harness"};
    app.require_subcommand(1);
    app.footer("exit codes: 0 ok/approve, 1 expectation failure/reject, "
               "2 invariant or verification failure/escalate, 3 usage error");

    // KEDGE_CONFIG supplies flag defaults.
    std::string default_log, default_policies, default_world, default_config, default_out;
    std::optional<std::uint64_t> default_seed;
    if (const char* env = std::getenv("KEDGE_CONFIG")) {
        try {
            const json j = json::parse(slurp(env));
            default_log = j.value("log_path", "");
            default_policies = j.value("policy_path", "");
            default_world = j.value("world_path", "");
            default_config = j.value("governance_config_path", "");
            default_out = j.value("output_dir", "");
            if (j.contains("seed")) default_seed = j["seed"].get<std::uint64_t>();
        } catch (const std::exception& e) {
            out << "warning: ignoring KEDGE_CONFIG: " << e.what() << "\n";
        }
    }

    RunArgs run_args;
    run_args.out_dir = default_out;
    run_args.world_override = "";
    run_args.seed = default_seed;
    auto* run = app.add_subcommand("run", "run a scenario end to end");
    run->add_option("--scenario", run_args.scenario, "scenario file")->required();
    std::int64_t seed_flag = -1;
    run->add_option("--seed", seed_flag, "override the scenario seed");
    run->add_option("--out", run_args.out_dir, "directory for log/state/report artifacts");
    run->add_option("--world", run_args.world_override, "world spec overriding the scenario's");
    run->add_flag("--json", run_args.json, "machine-readable report");

    VerifyArgs verify_args;
    verify_args.log = default_log;
    auto* verify = app.add_subcommand("verify", "verify a chain file");
    verify->add_option("--log", verify_args.log, "chain file (JSONL)");
    verify->add_flag("--json", verify_args.json, "machine-readable report");

    ReplayArgs replay_args;
    replay_args.log = default_log;
    auto* replay = app.add_subcommand("replay", "derive state at an index");
    replay->add_option("--log", replay_args.log, "chain file (JSONL)");
    std::int64_t at_flag = -1;
    replay->add_option("--at", at_flag, "prefix length to fold (default: full log)");
    replay->add_flag("--json", replay_args.json, "canonical state dump");

    LineageArgs lineage_args;
    lineage_args.log = default_log;
    auto* lineage = app.add_subcommand("lineage", "print the lifecycle entries of one intent");
    lineage->add_option("--log", lineage_args.log, "chain file (JSONL)");
    lineage->add_option("--intent", lineage_args.intent, "intent id")->required();
    lineage->add_flag("--json", lineage_args.json, "raw chain records");

    PolicyCheckArgs check_args;
    check_args.policies = default_policies;
    auto* policy = app.add_subcommand("policy", "policy tools");
    auto* check = policy->add_subcommand("check", "evaluate one request against a policy file");
    check->add_option("--policies", check_args.policies, "policy file (.kpol)");
    check->add_option("--request", check_args.request, "evaluation request (JSON)")->required();
    check->add_flag("--json", check_args.json, "machine-readable decision");

    SubmitArgs submit_args;
    submit_args.log = default_log;
    submit_args.policies = default_policies;
    submit_args.config = default_config;
    submit_args.world = default_world;
    auto* submit = app.add_subcommand("submit", "govern a batch of intents against a log");
    submit->add_option("--log", submit_args.log, "chain file to extend");
    submit->add_option("--policies", submit_args.policies, "policy file (.kpol)");
    submit->add_option("--config", submit_args.config, "governance config (JSON)");
    submit->add_option("--intents", submit_args.intents, "batch file (JSON)")->required();
    submit->add_option("--world", submit_args.world, "world spec for context signals");
    submit->add_flag("--json", submit_args.json, "machine-readable decisions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto require = [&](const std::string& value, const char* flag) {
        if (value.empty()) {
            out << "error: missing " << flag << " (flag or KEDGE_CONFIG)\n";
            return false;
        }
        return true;
    };

    if (run->parsed()) {
        if (seed_flag >= 0) run_args.seed = static_cast<std::uint64_t>(seed_flag);
        return cmd_run(run_args, out);
    }
    if (verify->parsed()) {
        if (!require(verify_args.log, "--log")) return kExitUsage;
        return cmd_verify(verify_args, out);
    }
    if (replay->parsed()) {
        if (!require(replay_args.log, "--log")) return kExitUsage;
        if (at_flag >= 0) replay_args.at = static_cast<std::size_t>(at_flag);
        return cmd_replay(replay_args, out);
    }
    if (lineage->parsed()) {
        if (!require(lineage_args.log, "--log")) return kExitUsage;
        return cmd_lineage(lineage_args, out);
    }
    if (policy->parsed() && check->parsed()) {
        if (!require(check_args.policies, "--policies")) return kExitUsage;
        return cmd_policy_check(check_args, out);
    }
    if (submit->parsed()) {
        if (!require(submit_args.log, "--log") || !require(submit_args.policies, "--policies") ||
            !require(submit_args.config, "--config"))
            return kExitUsage;
        return cmd_submit(submit_args, out);
    }
    out << app.help();
    return kExitUsage;
}

} // namespace kedge::cli
