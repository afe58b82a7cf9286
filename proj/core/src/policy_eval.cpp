#include "kedge/errors.hpp"
#include "kedge/policy.hpp"

namespace kedge {

bool role_matches(std::string_view constraint_role, std::string_view request_role) {
    if (constraint_role == request_role) return true;
    return constraint_role == "Agent" &&
           (request_role == "VerifiedAgent" || request_role == "UnverifiedAgent");
}

namespace {

bool head_matches(const PolicyRule& rule, const EvaluationRequest& req) {
    switch (rule.principal.kind) {
    case PrincipalConstraint::Kind::Any: break;
    case PrincipalConstraint::Kind::ExactActor:
        if (rule.principal.actor_id != req.actor_id) return false;
        break;
    case PrincipalConstraint::Kind::RoleIn: {
        bool any = false;
        for (const auto& role : rule.principal.roles)
            if (role_matches(role, req.role)) {
                any = true;
                break;
            }
        if (!any) return false;
        break;
    }
    }
    if (rule.action.kind == ActionConstraint::Kind::OneOf) {
        bool any = false;
        for (const auto& action : rule.action.actions)
            if (action == req.action) {
                any = true;
                break;
            }
        if (!any) return false;
    }
    switch (rule.resource.kind) {
    case ResourceConstraint::Kind::Any: break;
    case ResourceConstraint::Kind::ExactId:
        if (rule.resource.value != req.resource_id) return false;
        break;
    case ResourceConstraint::Kind::KindIs:
        if (rule.resource.value != req.resource_kind) return false;
        break;
    }
    return true;
}

// Runtime value of an operand. Attribute lookups throw MissingAttribute.
AttrValue operand_value(const Operand& op, const EvaluationRequest& req) {
    switch (op.index()) {
    case 0: {
        const auto& name = std::get<AttrRef>(op).name;
        auto it = req.context.find(name);
        if (it == req.context.end())
            raise(Errc::MissingAttribute, "context attribute '" + name + "' absent");
        return it->second;
    }
    case 1: return std::get<std::int64_t>(op);
    case 2: return std::get<Fixed4>(op);
    case 3: return std::get<std::string>(op);
    default: return std::get<bool>(op);
    }
}

bool is_ordered(CmpOp op) {
    return op == CmpOp::Lt || op == CmpOp::Le || op == CmpOp::Gt || op == CmpOp::Ge;
}

template <typename T>
bool compare(const T& a, const T& b, CmpOp op) {
    switch (op) {
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Ge: return a >= b;
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
    }
    return false;
}

bool eval_compare(const AttrValue& lhs, const AttrValue& rhs, CmpOp op) {
    if (lhs.index() != rhs.index())
        raise(Errc::TypeError, "comparison between incompatible kinds");
    if (const auto* li = std::get_if<std::int64_t>(&lhs))
        return compare(*li, std::get<std::int64_t>(rhs), op);
    if (const auto* lf = std::get_if<Fixed4>(&lhs))
        return compare(lf->raw(), std::get<Fixed4>(rhs).raw(), op);
    if (is_ordered(op))
        raise(Errc::TypeError, "ordered comparison on non-numeric values");
    if (const auto* ls = std::get_if<std::string>(&lhs))
        return compare(*ls, std::get<std::string>(rhs), op);
    return compare(std::get<bool>(lhs), std::get<bool>(rhs), op);
}

bool eval_expr(const Expr& e, const EvaluationRequest& req) {
    switch (e.kind) {
    case Expr::Kind::And:
        return eval_expr(e.children[0], req) && eval_expr(e.children[1], req);
    case Expr::Kind::Or:
        return eval_expr(e.children[0], req) || eval_expr(e.children[1], req);
    case Expr::Kind::Not:
        return !eval_expr(e.children[0], req);
    case Expr::Kind::Compare:
        return eval_compare(operand_value(e.lhs, req), operand_value(e.rhs, req), e.op);
    case Expr::Kind::BoolOperand: {
        const AttrValue v = operand_value(e.lhs, req);
        if (const auto* b = std::get_if<bool>(&v)) return *b;
        raise(Errc::TypeError, "bare condition term is not boolean");
    }
    }
    return false;
}

} // namespace

Decision evaluate(const PolicySet& policies, const EvaluationRequest& request) {
    Decision decision;
    std::vector<std::string> escalates, forbids, permits;
    for (const PolicyRule& rule : policies.rules) {
        bool matched = false;
        if (head_matches(rule, request))
            matched = !rule.condition || eval_expr(*rule.condition, request);
        decision.evaluated_rules.push_back({rule.rule_id, matched, rule.effect});
        if (!matched) continue;
        switch (rule.effect) {
        case Effect::Escalate: escalates.push_back(rule.rule_id); break;
        case Effect::Forbid: forbids.push_back(rule.rule_id); break;
        case Effect::Permit: permits.push_back(rule.rule_id); break;
        }
    }
    // Escalate > Forbid > Permit > default-deny.
    if (!escalates.empty()) decision.outcome = Outcome::Escalate;
    else if (!forbids.empty()) decision.outcome = Outcome::Reject;
    else if (!permits.empty()) decision.outcome = Outcome::Approve;
    else decision.outcome = Outcome::Reject;

    decision.explanation.insert(decision.explanation.end(), escalates.begin(), escalates.end());
    decision.explanation.insert(decision.explanation.end(), forbids.begin(), forbids.end());
    decision.explanation.insert(decision.explanation.end(), permits.begin(), permits.end());
    return decision;
}

std::string explain(const Decision& decision, const PolicySet& policies) {
    std::string out = "decision: ";
    out += outcome_name(decision.outcome);
    out += '\n';
    if (decision.explanation.empty()) {
        out += "  no rule matched; default deny\n";
        return out;
    }
    for (const std::string& rule_id : decision.explanation) {
        const PolicyRule* rule = nullptr;
        for (const PolicyRule& r : policies.rules)
            if (r.rule_id == rule_id) {
                rule = &r;
                break;
            }
        out += "  matched ";
        out += rule ? effect_name(rule->effect) : std::string_view("rule");
        out += ' ' + rule_id;
        if (rule && !rule->note.empty()) out += " (note: \"" + rule->note + "\")";
        out += '\n';
    }
    return out;
}

} // namespace kedge
