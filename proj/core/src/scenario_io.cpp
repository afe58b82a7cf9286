#include <fstream>

#include "json_codec.hpp"
#include "kedge/errors.hpp"
#include "kedge/harness.hpp"

namespace kedge {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
    raise(Errc::ScenarioError, what);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json parse_json(std::string_view text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) bad(std::string(what) + " is not valid JSON");
    return j;
}

Fixed4 fixed_field(const json& j, const char* name, Fixed4 fallback) {
    auto it = j.find(name);
    if (it == j.end()) return fallback;
    if (it->is_number()) return Fixed4::from_double(it->get<double>());
    if (it->is_string()) return Fixed4::parse(it->get<std::string>());
    bad(std::string("field '") + name + "' must be numeric");
}

GovernanceConfig governance_from_json(const json& j) {
    GovernanceConfig cfg;
    cfg.alpha = fixed_field(j, "alpha", cfg.alpha);
    cfg.beta = fixed_field(j, "beta", cfg.beta);
    cfg.priority_epsilon = fixed_field(j, "priority_epsilon", cfg.priority_epsilon);
    if (j.contains("max_recency")) cfg.max_recency = j["max_recency"].get<Tick>();
    if (j.contains("contract_ttl")) cfg.contract_ttl = j["contract_ttl"].get<Tick>();
    if (cfg.alpha.raw() < 0 || cfg.beta.raw() < 0 || cfg.alpha.raw() + cfg.beta.raw() <= 0)
        bad("weights must satisfy alpha >= 0, beta >= 0, alpha + beta > 0");
    if (cfg.max_recency <= 0) bad("max_recency must be positive");
    if (cfg.priority_epsilon.raw() < 0) bad("priority_epsilon must be >= 0");
    if (j.contains("authority")) {
        for (auto it = j["authority"].begin(); it != j["authority"].end(); ++it)
            cfg.authority_map[role_from_name(it.key())] = Fixed4::from_double(it.value().get<double>());
    }
    if (j.contains("conflicts_with_any")) {
        cfg.conflicts_with_any.clear();
        for (const auto& a : j["conflicts_with_any"]) cfg.conflicts_with_any.insert(a.get<std::string>());
    }
    if (j.contains("exclusive_pairs")) {
        for (const auto& pair : j["exclusive_pairs"]) {
            if (!pair.is_array() || pair.size() != 2) bad("exclusive_pairs entries are [a, b]");
            auto a = pair[0].get<std::string>();
            auto b = pair[1].get<std::string>();
            cfg.exclusive_pairs.insert(a <= b ? std::make_pair(a, b) : std::make_pair(b, a));
        }
    }
    return cfg;
}

std::vector<Actor> actors_from_json(const json& j, const GovernanceConfig& cfg) {
    std::vector<Actor> actors;
    for (const auto& aj : j) {
        Actor actor;
        actor.actor_id = aj.at("actor_id").get<std::string>();
        actor.role = role_from_name(aj.at("role").get<std::string>());
        actor.authority = cfg.authority_for(actor.role);
        actor.trust = fixed_field(aj, "trust", Fixed4::parse("0.5"));
        if (actor.trust.raw() < 0 || actor.trust.raw() > Fixed4::kScale)
            bad("trust for '" + actor.actor_id + "' outside [0, 1]");
        actors.push_back(std::move(actor));
    }
    return actors;
}

std::vector<Fact> facts_from_script(const json& j, const std::string& target) {
    std::vector<Fact> facts;
    for (const auto& fj : j) {
        Fact fact;
        fact.entity_id = fj.value("entity_id", target);
        fact.key = fj.at("key").get<std::string>();
        fact.value = codec::fact_value_from_json(fj.at("value"));
        if (fj.contains("valid_until")) fact.valid_until = fj["valid_until"].get<Tick>();
        facts.push_back(std::move(fact));
    }
    return facts;
}

Outcome outcome_from_json(const json& j) {
    return outcome_from_name(j.get<std::string>());
}

WorkloadSpec workload_from_json(const json& j) {
    WorkloadSpec spec;
    spec.seed = j.value("seed", 0ULL);
    spec.n_proposals = j.at("n_proposals").get<int>();
    spec.conflict_rate = fixed_field(j, "conflict_rate", Fixed4{});
    if (j.contains("actor_mix")) {
        // canonical role order keeps the generated workload independent of
        // JSON key ordering
        for (const Role role : {Role::Human, Role::VerifiedAgent, Role::UnverifiedAgent,
                                Role::Automation}) {
            auto it = j["actor_mix"].find(role_name(role));
            if (it != j["actor_mix"].end())
                spec.actor_mix.emplace_back(role, it->get<int>());
        }
    } else {
        spec.actor_mix = {{Role::Human, 2},
                          {Role::VerifiedAgent, 3},
                          {Role::UnverifiedAgent, 3},
                          {Role::Automation, 2}};
    }
    return spec;
}

} // namespace

GovernanceConfig parse_governance_config(std::string_view text) {
    return governance_from_json(parse_json(text, "governance config"));
}

std::vector<Actor> parse_actor_registry(std::string_view text, const GovernanceConfig& config) {
    const json j = parse_json(text, "actor registry");
    if (j.is_array()) return actors_from_json(j, config);
    if (j.is_object() && j.contains("actors")) return actors_from_json(j["actors"], config);
    bad("actor registry must be an array or an object with \"actors\"");
}

Scenario load_scenario(const std::filesystem::path& path) {
    const json j = parse_json(slurp(path), "scenario");
    if (!j.is_object()) bad("scenario must be a JSON object");
    if (j.value("version", 0) != 1) bad("scenario must declare \"version\": 1");

    if (j.contains("generate")) {
        Scenario scenario = generate_workload(workload_from_json(j["generate"]));
        if (j.contains("name")) scenario.name = j["name"].get<std::string>();
        return scenario;
    }

    Scenario scenario;
    scenario.name = j.value("name", path.stem().string());
    scenario.seed = j.value("seed", 0ULL);

    const auto base = path.parent_path();
    if (j.contains("world")) scenario.world = parse_world(j["world"].dump());
    else if (j.contains("world_file")) scenario.world = load_world(base / j["world_file"].get<std::string>());
    else bad("scenario needs \"world\" or \"world_file\"");

    if (j.contains("policy_inline")) scenario.policy_source = j["policy_inline"].get<std::string>();
    else if (j.contains("policy_file")) scenario.policy_source = slurp(base / j["policy_file"].get<std::string>());
    else bad("scenario needs \"policy_inline\" or \"policy_file\"");

    if (j.contains("governance")) scenario.governance = governance_from_json(j["governance"]);
    if (!j.contains("actors")) bad("scenario needs an \"actors\" registry");
    scenario.actors = actors_from_json(j["actors"], scenario.governance);

    for (const auto& sj : j.value("script", json::array())) {
        ScriptStep step;
        step.tick = sj.at("tick").get<Tick>();
        step.actor_id = sj.at("actor").get<std::string>();
        step.intent_id = sj.at("intent_id").get<std::string>();
        step.action = sj.at("action").get<std::string>();
        step.target = sj.at("target").get<std::string>();
        step.facts = facts_from_script(sj.value("facts", json::array()), step.target);
        if (sj.contains("origin_tick")) step.origin_tick = sj["origin_tick"].get<Tick>();
        if (sj.contains("hallucination")) {
            const json& hj = sj["hallucination"];
            for (const auto& rj : hj.value("extra_requests", json::array())) {
                ExecRequest request;
                request.action = rj.at("action").get<std::string>();
                request.resource = rj.at("resource").get<std::string>();
                if (rj.contains("at")) request.at = rj["at"].get<Tick>();
                step.hallucination.extra_requests.push_back(std::move(request));
            }
            step.hallucination.terminate_spray = hj.value("terminate_spray", 0);
        }
        scenario.script.push_back(std::move(step));
    }

    if (j.contains("expected")) {
        const json& ej = j["expected"];
        const json decisions = ej.value("decisions", json::object());
        for (auto it = decisions.begin(); it != decisions.end(); ++it)
            scenario.expected.decisions.emplace(it.key(), outcome_from_json(it.value()));
        const json executions = ej.value("executions", json::object());
        for (auto it = executions.begin(); it != executions.end(); ++it)
            scenario.expected.executions.emplace(
                it.key(), std::make_pair(it.value().value("allowed", 0), it.value().value("denied", 0)));
        for (const auto& fj : ej.value("facts", json::array())) {
            Fact fact;
            fact.entity_id = fj.at("entity_id").get<std::string>();
            fact.key = fj.at("key").get<std::string>();
            fact.value = codec::fact_value_from_json(fj.at("value"));
            scenario.expected.facts.push_back(std::move(fact));
        }
    }
    return scenario;
}

} // namespace kedge
