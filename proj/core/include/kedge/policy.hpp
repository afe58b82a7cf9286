#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kedge/digest.hpp"
#include "kedge/domain.hpp"

namespace kedge {

// Minimal permit/forbid/escalate policy language over context attributes.
//
//   rule       := [annotation] effect "(" head ")" ["when" "{" expr "}"] ";"
//   annotation := "@note" "(" string ")"
//   effect     := "permit" | "forbid" | "escalate"
//   head       := principal-clause "," action-clause "," resource-clause
//   principal  := "principal" ["==" string | "in" Role::str | "in" "[" Role::str, ... "]"]
//   action     := "action" ["==" Action::str | "in" "[" Action::str, ... "]"]
//   resource   := "resource" ["==" string | "is" string]
//   expr       := or-expr with && || !, parentheses, comparisons over
//                 context.<attr> and literals (integers, decimals in [0,1],
//                 strings, booleans)
//
// Role matching is flat: the group "Agent" covers VerifiedAgent and
// UnverifiedAgent; every concrete role also names itself.

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

struct AttrRef {
    std::string name;
    friend bool operator==(const AttrRef&, const AttrRef&) = default;
};

// Literal kinds mirror AttrValue; comparisons require matching kinds and
// ordered operators never apply to strings or booleans.
using Operand = std::variant<AttrRef, std::int64_t, Fixed4, std::string, bool>;

struct Expr {
    enum class Kind { And, Or, Not, Compare, BoolOperand };
    Kind kind = Kind::Compare;
    std::vector<Expr> children; // And/Or: exactly 2 after parsing; Not: 1
    Operand lhs;
    Operand rhs;
    CmpOp op = CmpOp::Eq;

    friend bool operator==(const Expr&, const Expr&) = default;
};

struct PrincipalConstraint {
    enum class Kind { Any, ExactActor, RoleIn };
    Kind kind = Kind::Any;
    std::string actor_id;
    std::vector<std::string> roles;

    friend bool operator==(const PrincipalConstraint&, const PrincipalConstraint&) = default;
};

struct ActionConstraint {
    enum class Kind { Any, OneOf };
    Kind kind = Kind::Any;
    std::vector<std::string> actions;

    friend bool operator==(const ActionConstraint&, const ActionConstraint&) = default;
};

struct ResourceConstraint {
    enum class Kind { Any, ExactId, KindIs };
    Kind kind = Kind::Any;
    std::string value;

    friend bool operator==(const ResourceConstraint&, const ResourceConstraint&) = default;
};

struct PolicyRule {
    Effect effect = Effect::Permit;
    PrincipalConstraint principal;
    ActionConstraint action;
    ResourceConstraint resource;
    std::optional<Expr> condition;
    std::string rule_id; // "rule-<n>", source order
    std::string note;    // @note annotation text, if any

    friend bool operator==(const PolicyRule&, const PolicyRule&) = default;
};

struct PolicySet {
    std::vector<PolicyRule> rules;
    Digest source_digest;
};

struct EvaluationRequest {
    std::string actor_id;
    std::string role; // concrete role name
    std::string action;
    std::string resource_id;
    std::string resource_kind;
    std::map<std::string, AttrValue> context;
};

struct Decision {
    Outcome outcome = Outcome::Reject;
    std::vector<RuleTrace> evaluated_rules; // every rule, source order
    std::vector<std::string> explanation;   // matched rule ids, precedence order

    friend bool operator==(const Decision&, const Decision&) = default;
};

// Throws Errc::SyntaxError (with line:column) and Errc::TypeError.
PolicySet parse_policies(std::string_view source);

// Pure decision combinator: Escalate > Forbid > Permit > default-deny.
// Throws Errc::MissingAttribute when a matched head references an absent
// context key, Errc::TypeError on incompatible runtime kinds.
Decision evaluate(const PolicySet& policies, const EvaluationRequest& request);

// Human-readable account of the matched rules (with notes) behind a decision.
std::string explain(const Decision& decision, const PolicySet& policies);

// Regenerate source text; parse(serialize(parse(s))) is structurally equal
// to parse(s).
std::string serialize(const PolicySet& policies);

// Flat role-group membership used by principal constraints.
bool role_matches(std::string_view constraint_role, std::string_view request_role);

} // namespace kedge
