#include "kedge/contracts.hpp"

#include <algorithm>

#include "kedge/errors.hpp"

namespace kedge {

std::string_view deny_reason_name(DenyReason reason) noexcept {
    switch (reason) {
    case DenyReason::Revoked: return "Revoked";
    case DenyReason::WrongAction: return "WrongAction";
    case DenyReason::OutOfScope: return "OutOfScope";
    case DenyReason::Expired: return "Expired";
    }
    return "Expired";
}

bool ExecutionContract::covers(const std::string& action_name, const std::string& resource,
                               Tick at) const {
    return action_name == action &&
           std::binary_search(resource_scope.begin(), resource_scope.end(), resource) &&
           valid_from <= at && at <= valid_until;
}

ExecutionContract compile_contract(const DecisionPayload& decision, const IntentProposal& proposal,
                                   Tick now, Tick ttl, EvidenceChain& log) {
    if (decision.outcome != Outcome::Approve)
        raise(Errc::NotApproved, "cannot compile a contract from a " +
                                     std::string(outcome_name(decision.outcome)) + " decision");
    ExecutionContract contract;
    contract.contract_id = "ct-" + proposal.intent_id;
    contract.intent_id = proposal.intent_id;
    contract.action = proposal.action;
    contract.resource_scope.push_back(proposal.target);
    for (const Fact& fact : proposal.asserted_facts)
        contract.resource_scope.push_back(fact.entity_id);
    std::sort(contract.resource_scope.begin(), contract.resource_scope.end());
    contract.resource_scope.erase(
        std::unique(contract.resource_scope.begin(), contract.resource_scope.end()),
        contract.resource_scope.end());
    contract.valid_from = now;
    contract.valid_until = now + ttl;
    contract.issued_at = now;

    ContractPayload payload;
    payload.action = contract.action;
    payload.contract_id = contract.contract_id;
    payload.issued_at = contract.issued_at;
    payload.resource_scope = contract.resource_scope;
    payload.valid_from = contract.valid_from;
    payload.valid_until = contract.valid_until;
    log.append({"evt-" + std::to_string(log.size()), proposal.intent_id, "system", now, payload});
    return contract;
}

TokenRegistry::TokenRegistry() : rng_(0) {}

TokenRegistry::TokenRegistry(std::uint64_t seed) : rng_(seed), seeded_(true) {}

TaskToken TokenRegistry::mint(const ExecutionContract& contract, Tick now) {
    if (now > contract.valid_until)
        raise(Errc::Expired, "contract '" + contract.contract_id + "' expired at tick " +
                                 std::to_string(contract.valid_until));
    if (auto live = live_token_for(contract.contract_id)) revoke(*live);

    TaskToken token;
    token.token_id = seeded_ ? rng_.hex128() : entropy_hex128();
    token.contract_id = contract.contract_id;
    token.scope = {contract.action, contract.resource_scope, contract.valid_from,
                   contract.valid_until};
    tokens_.emplace(token.token_id, token);
    live_by_contract_[contract.contract_id] = token.token_id;
    return token;
}

AuthorizationOutcome TokenRegistry::authorize(const std::string& token_id,
                                              const std::string& action,
                                              const std::string& resource, Tick now) const {
    auto it = tokens_.find(token_id);
    if (it == tokens_.end() || it->second.revoked)
        return AuthorizationOutcome::deny(DenyReason::Revoked);
    const TokenScope& scope = it->second.scope;
    if (action != scope.action) return AuthorizationOutcome::deny(DenyReason::WrongAction);
    if (!std::binary_search(scope.resources.begin(), scope.resources.end(), resource))
        return AuthorizationOutcome::deny(DenyReason::OutOfScope);
    if (now < scope.valid_from || now > scope.valid_until)
        return AuthorizationOutcome::deny(DenyReason::Expired);
    return AuthorizationOutcome::allow();
}

void TokenRegistry::revoke(const std::string& token_id) {
    auto it = tokens_.find(token_id);
    if (it == tokens_.end()) raise(Errc::UnknownToken, "no token '" + token_id + "'");
    it->second.revoked = true;
    auto live = live_by_contract_.find(it->second.contract_id);
    if (live != live_by_contract_.end() && live->second == token_id)
        live_by_contract_.erase(live);
}

const TaskToken* TokenRegistry::find(const std::string& token_id) const {
    auto it = tokens_.find(token_id);
    return it == tokens_.end() ? nullptr : &it->second;
}

std::optional<std::string> TokenRegistry::live_token_for(const std::string& contract_id) const {
    auto it = live_by_contract_.find(contract_id);
    if (it == live_by_contract_.end()) return std::nullopt;
    return it->second;
}

} // namespace kedge
