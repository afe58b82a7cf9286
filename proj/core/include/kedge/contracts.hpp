#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kedge/chain.hpp"
#include "kedge/domain.hpp"
#include "kedge/rng.hpp"

namespace kedge {

// Compiled execution bound: one action, an explicit resource id set, and an
// inclusive validity window.
struct ExecutionContract {
    std::string contract_id;
    std::string intent_id;
    std::string action;
    std::vector<std::string> resource_scope; // sorted, non-empty
    Tick valid_from = 0;
    Tick valid_until = 0;
    Tick issued_at = 0;

    bool covers(const std::string& action_name, const std::string& resource, Tick at) const;
};

struct TokenScope {
    std::string action;
    std::vector<std::string> resources;
    Tick valid_from = 0;
    Tick valid_until = 0;
};

struct TaskToken {
    std::string token_id; // 128-bit hex, unguessable
    std::string contract_id;
    TokenScope scope; // bitwise copy of the contract bounds
    bool revoked = false;
};

enum class DenyReason { Revoked, WrongAction, OutOfScope, Expired };

std::string_view deny_reason_name(DenyReason reason) noexcept;

struct AuthorizationOutcome {
    bool allowed = false;
    std::optional<DenyReason> reason;

    static AuthorizationOutcome allow() { return {true, std::nullopt}; }
    static AuthorizationOutcome deny(DenyReason r) { return {false, r}; }
};

// Compile an approved decision into a contract and append ContractIssued.
// Scope is the proposal target plus every asserted entity. Throws
// Errc::NotApproved for Reject/Escalate decisions.
ExecutionContract compile_contract(const DecisionPayload& decision, const IntentProposal& proposal,
                                   Tick now, Tick ttl, EvidenceChain& log);

// Issuance registry for ephemeral task tokens. Single-writer mutable store;
// authorize is a read-only check, and a revocation is visible to every
// authorize call that follows it.
class TokenRegistry {
public:
    TokenRegistry();                            // OS-entropy token ids
    explicit TokenRegistry(std::uint64_t seed); // deterministic simulation mode

    // Mint a token bound to the contract. Re-minting for the same contract
    // revokes the previous live token. Throws Errc::Expired after the
    // window closes.
    TaskToken mint(const ExecutionContract& contract, Tick now);

    // The enforcement point: total function, denials are outcomes.
    AuthorizationOutcome authorize(const std::string& token_id, const std::string& action,
                                   const std::string& resource, Tick now) const;

    // Throws Errc::UnknownToken; revoking twice is a no-op.
    void revoke(const std::string& token_id);

    const TaskToken* find(const std::string& token_id) const;
    std::optional<std::string> live_token_for(const std::string& contract_id) const;

private:
    std::map<std::string, TaskToken> tokens_;
    std::map<std::string, std::string> live_by_contract_;
    DeterministicRng rng_;
    bool seeded_ = false;
};

} // namespace kedge
