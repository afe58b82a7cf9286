#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kedge/chain.hpp"
#include "kedge/policy.hpp"
#include "kedge/state.hpp"
#include "kedge/world.hpp"

namespace kedge {

struct GovernanceConfig {
    Fixed4 alpha = Fixed4::parse("0.7");
    Fixed4 beta = Fixed4::parse("0.3");
    Tick max_recency = 3600;
    Fixed4 priority_epsilon = Fixed4::parse("0.0001");
    Tick contract_ttl = 300;

    // Role-derived authority.
    std::map<Role, Fixed4> authority_map = {
        {Role::Human, Fixed4::parse("1.0")},
        {Role::Automation, Fixed4::parse("0.8")},
        {Role::VerifiedAgent, Fixed4::parse("0.6")},
        {Role::UnverifiedAgent, Fixed4::parse("0.3")},
    };

    // Action-compatibility table: actions here conflict with any action on
    // the same entity; pairs list mutually exclusive action combinations.
    std::set<std::string> conflicts_with_any = {"TerminateInstance"};
    std::set<std::pair<std::string, std::string>> exclusive_pairs;

    Fixed4 authority_for(Role role) const;
    bool actions_exclusive(const std::string& a, const std::string& b) const;
};

// Outcome of arbitrating one batch. The three id lists partition the batch.
struct ArbitrationResult {
    std::vector<std::string> admitted;
    std::vector<std::pair<std::string, std::string>> rejected; // (intent_id, reason)
    std::vector<std::string> escalated;
    std::vector<std::pair<std::string, std::string>> conflict_pairs;
};

// Symmetric, irreflexive conflict relation over a batch: intersecting
// (entity, key) assertions with unequal values, or mutually exclusive
// actions on the same entity. Pairs come out with i < j in batch order.
std::vector<std::pair<std::string, std::string>>
detect_conflicts(std::span<const IntentProposal> batch, const GovernanceConfig& config);

// Priority(p) = alpha * Authority(actor) + beta * Trust(actor), exact.
PriorityScore priority(const IntentProposal& proposal, const GovernanceConfig& config);

// Recency(p) = now - origin_tick. Throws Errc::ClockSkew when the origin
// lies in the future.
Tick recency(const IntentProposal& proposal, Tick now);

// Deterministic winner selection: stale proposals are rejected first, each
// conflict component among survivors admits its unique priority maximum,
// epsilon-ties escalate the whole component, and the result is invariant
// under permutation of the batch.
ArbitrationResult arbitrate(std::span<const IntentProposal> batch, const GovernanceConfig& config,
                            Tick now);

// Canonical emission order for a batch: priority desc, recency asc,
// actor_id asc, intent_id asc.
std::vector<std::size_t> batch_order(std::span<const IntentProposal> batch,
                                     const GovernanceConfig& config);

// Full governance step for one batch: appends IntentProposed for every
// proposal (batch order), then ContextSnapshotted + DecisionRendered per
// proposal. Arbitration losers are rejected before policy runs; winners and
// conflict-free proposals get the policy decision; a MissingAttribute from
// evaluation escalates instead of deciding. Returns the DecisionRendered
// entries in emission order.
std::vector<ChainEntry> govern(std::span<const IntentProposal> batch, const DerivedState& state,
                               const WorldState& world, const PolicySet& policies,
                               const GovernanceConfig& config, EvidenceChain& log, Tick now);

} // namespace kedge
