#include "json_codec.hpp"

#include "kedge/errors.hpp"

namespace kedge::codec {

namespace {

[[noreturn]] void malformed(const std::string& what) {
    raise(Errc::MalformedRecord, what);
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) malformed(std::string("missing field '") + name + "'");
    return *it;
}

std::string str_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_string()) malformed(std::string("field '") + name + "' must be a string");
    return f.get<std::string>();
}

std::int64_t int_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_number_integer()) malformed(std::string("field '") + name + "' must be an integer");
    return f.get<std::int64_t>();
}

bool looks_like_fixed4(const std::string& s) {
    std::size_t pos = s.size() && (s[0] == '-') ? 1 : 0;
    std::size_t digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        ++pos;
        ++digits;
    }
    if (digits == 0 || pos >= s.size() || s[pos] != '.') return false;
    ++pos;
    std::size_t frac = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        ++pos;
        ++frac;
    }
    return frac == 4 && pos == s.size();
}

std::vector<std::string> string_list(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_array()) malformed(std::string("field '") + name + "' must be an array");
    std::vector<std::string> out;
    for (const auto& item : f) {
        if (!item.is_string()) malformed(std::string("field '") + name + "' must hold strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

} // namespace

json fact_value_to_json(const FactValue& value) {
    if (const auto* s = std::get_if<std::string>(&value)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
    return std::get<bool>(value);
}

FactValue fact_value_from_json(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_boolean()) return j.get<bool>();
    malformed("fact value must be string, integer, or boolean");
}

json attr_value_to_json(const AttrValue& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
    if (const auto* f = std::get_if<Fixed4>(&value)) return f->str();
    if (const auto* s = std::get_if<std::string>(&value)) return *s;
    return std::get<bool>(value);
}

AttrValue attr_value_from_json(const json& j) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) return Fixed4::from_double(j.get<double>());
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (looks_like_fixed4(s)) return Fixed4::parse(s);
        return s;
    }
    malformed("context attribute must be a scalar");
}

json fact_to_json(const Fact& fact) {
    json j;
    j["asserted_at"] = fact.asserted_at;
    j["asserted_by"] = fact.asserted_by;
    j["entity_id"] = fact.entity_id;
    j["key"] = fact.key;
    if (fact.valid_until) j["valid_until"] = *fact.valid_until;
    j["value"] = fact_value_to_json(fact.value);
    return j;
}

Fact fact_from_json(const json& j) {
    Fact f;
    f.asserted_at = int_field(j, "asserted_at");
    f.asserted_by = str_field(j, "asserted_by");
    f.entity_id = str_field(j, "entity_id");
    f.key = str_field(j, "key");
    if (auto it = j.find("valid_until"); it != j.end()) {
        if (!it->is_number_integer()) malformed("valid_until must be an integer");
        f.valid_until = it->get<std::int64_t>();
    }
    f.value = fact_value_from_json(field(j, "value"));
    return f;
}

namespace {

json facts_to_json(const std::vector<Fact>& facts) {
    json arr = json::array();
    for (const auto& f : facts) arr.push_back(fact_to_json(f));
    return arr;
}

std::vector<Fact> facts_from_json(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_array()) malformed(std::string("field '") + name + "' must be an array");
    std::vector<Fact> out;
    for (const auto& item : f) out.push_back(fact_from_json(item));
    return out;
}

json intent_payload_to_json(const IntentPayload& p) {
    json j;
    j["action"] = p.action;
    j["actor_id"] = p.actor_id;
    j["actor_role"] = std::string(role_name(p.actor_role));
    j["asserted_facts"] = facts_to_json(p.asserted_facts);
    j["batch_id"] = p.batch_id;
    j["origin_tick"] = p.origin_tick;
    j["target"] = p.target;
    return j;
}

IntentPayload intent_payload_from_json(const json& j) {
    IntentPayload p;
    p.action = str_field(j, "action");
    p.actor_id = str_field(j, "actor_id");
    try {
        p.actor_role = role_from_name(str_field(j, "actor_role"));
    } catch (const Error&) {
        malformed("bad actor_role");
    }
    p.asserted_facts = facts_from_json(j, "asserted_facts");
    p.batch_id = str_field(j, "batch_id");
    p.origin_tick = int_field(j, "origin_tick");
    p.target = str_field(j, "target");
    return p;
}

json context_payload_to_json(const ContextPayload& p) {
    json attrs = json::object();
    for (const auto& [key, value] : p.attributes) attrs[key] = attr_value_to_json(value);
    json j;
    j["attributes"] = attrs;
    j["intent_id"] = p.intent_id;
    j["resource_scope"] = p.resource_scope;
    j["snapshot_tick"] = p.snapshot_tick;
    return j;
}

ContextPayload context_payload_from_json(const json& j) {
    ContextPayload p;
    const json& attrs = field(j, "attributes");
    if (!attrs.is_object()) malformed("attributes must be an object");
    for (auto it = attrs.begin(); it != attrs.end(); ++it)
        p.attributes.emplace(it.key(), attr_value_from_json(it.value()));
    p.intent_id = str_field(j, "intent_id");
    p.resource_scope = string_list(j, "resource_scope");
    p.snapshot_tick = int_field(j, "snapshot_tick");
    return p;
}

json decision_payload_to_json(const DecisionPayload& p) {
    json rules = json::array();
    for (const auto& r : p.evaluated_rules) {
        json rj;
        rj["effect"] = std::string(effect_name(r.effect));
        rj["matched"] = r.matched;
        rj["rule_id"] = r.rule_id;
        rules.push_back(rj);
    }
    json j;
    j["conflicts_with"] = p.conflicts_with;
    j["evaluated_rules"] = rules;
    j["explanation"] = p.explanation;
    j["outcome"] = std::string(outcome_name(p.outcome));
    j["reason"] = p.reason;
    return j;
}

Effect effect_from_name_or_die(const std::string& name) {
    if (name == "permit") return Effect::Permit;
    if (name == "forbid") return Effect::Forbid;
    if (name == "escalate") return Effect::Escalate;
    malformed("bad rule effect '" + name + "'");
}

DecisionPayload decision_payload_from_json(const json& j) {
    DecisionPayload p;
    p.conflicts_with = string_list(j, "conflicts_with");
    const json& rules = field(j, "evaluated_rules");
    if (!rules.is_array()) malformed("evaluated_rules must be an array");
    for (const auto& rj : rules) {
        RuleTrace t;
        t.effect = effect_from_name_or_die(str_field(rj, "effect"));
        const json& m = field(rj, "matched");
        if (!m.is_boolean()) malformed("matched must be boolean");
        t.matched = m.get<bool>();
        t.rule_id = str_field(rj, "rule_id");
        p.evaluated_rules.push_back(std::move(t));
    }
    p.explanation = string_list(j, "explanation");
    try {
        p.outcome = outcome_from_name(str_field(j, "outcome"));
    } catch (const Error&) {
        malformed("bad decision outcome");
    }
    p.reason = str_field(j, "reason");
    return p;
}

json contract_payload_to_json(const ContractPayload& p) {
    json j;
    j["action"] = p.action;
    j["contract_id"] = p.contract_id;
    j["issued_at"] = p.issued_at;
    j["resource_scope"] = p.resource_scope;
    j["valid_from"] = p.valid_from;
    j["valid_until"] = p.valid_until;
    return j;
}

ContractPayload contract_payload_from_json(const json& j) {
    ContractPayload p;
    p.action = str_field(j, "action");
    p.contract_id = str_field(j, "contract_id");
    p.issued_at = int_field(j, "issued_at");
    p.resource_scope = string_list(j, "resource_scope");
    p.valid_from = int_field(j, "valid_from");
    p.valid_until = int_field(j, "valid_until");
    return p;
}

json outcome_payload_to_json(const OutcomePayload& p) {
    json j;
    j["action"] = p.action;
    j["actor_role"] = std::string(role_name(p.actor_role));
    j["allowed"] = p.allowed;
    j["completed_at"] = p.completed_at;
    j["contract_id"] = p.contract_id;
    if (!p.allowed) j["deny_reason"] = p.deny_reason;
    j["effects"] = facts_to_json(p.effects);
    j["resource"] = p.resource;
    return j;
}

OutcomePayload outcome_payload_from_json(const json& j) {
    OutcomePayload p;
    p.action = str_field(j, "action");
    try {
        p.actor_role = role_from_name(str_field(j, "actor_role"));
    } catch (const Error&) {
        malformed("bad actor_role");
    }
    const json& allowed = field(j, "allowed");
    if (!allowed.is_boolean()) malformed("allowed must be boolean");
    p.allowed = allowed.get<bool>();
    p.completed_at = int_field(j, "completed_at");
    p.contract_id = str_field(j, "contract_id");
    if (!p.allowed) p.deny_reason = str_field(j, "deny_reason");
    p.effects = facts_from_json(j, "effects");
    p.resource = str_field(j, "resource");
    if (!p.allowed && !p.effects.empty()) malformed("denied outcome carries effects");
    return p;
}

} // namespace

json payload_to_json(const EventPayload& payload) {
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, IntentPayload>) return intent_payload_to_json(p);
            else if constexpr (std::is_same_v<T, ContextPayload>) return context_payload_to_json(p);
            else if constexpr (std::is_same_v<T, DecisionPayload>) return decision_payload_to_json(p);
            else if constexpr (std::is_same_v<T, ContractPayload>) return contract_payload_to_json(p);
            else return outcome_payload_to_json(p);
        },
        payload);
}

EventPayload payload_from_json(EventKind kind, const json& j) {
    if (!j.is_object()) malformed("payload must be an object");
    switch (kind) {
    case EventKind::IntentProposed: return intent_payload_from_json(j);
    case EventKind::ContextSnapshotted: return context_payload_from_json(j);
    case EventKind::DecisionRendered: return decision_payload_from_json(j);
    case EventKind::ContractIssued: return contract_payload_from_json(j);
    case EventKind::ExecutionOutcome: return outcome_payload_from_json(j);
    }
    malformed("unknown event kind");
}

json event_to_json(const LifecycleEvent& event) {
    json j;
    j["actor_id"] = event.actor_id;
    j["event_id"] = event.event_id;
    j["intent_id"] = event.intent_id;
    j["kind"] = std::string(event_kind_name(event.kind()));
    j["logical_time"] = event.logical_time;
    j["payload"] = payload_to_json(event.payload);
    return j;
}

LifecycleEvent event_from_json(const json& j) {
    LifecycleEvent e;
    e.actor_id = str_field(j, "actor_id");
    e.event_id = str_field(j, "event_id");
    e.intent_id = str_field(j, "intent_id");
    const EventKind kind = event_kind_from_name(str_field(j, "kind"));
    e.logical_time = int_field(j, "logical_time");
    e.payload = payload_from_json(kind, field(j, "payload"));
    return e;
}

std::string entry_preimage(std::uint64_t index, const std::string& prev_hex, const json& event_json) {
    json j;
    j["event"] = event_json;
    j["index"] = index;
    j["prev_digest"] = prev_hex;
    return j.dump();
}

} // namespace kedge::codec
