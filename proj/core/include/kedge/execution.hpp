#pragma once

#include <optional>
#include <span>

#include "kedge/chain.hpp"
#include "kedge/contracts.hpp"
#include "kedge/world.hpp"

namespace kedge {

// One execution attempt. `at` defaults to the batch tick; a later value
// models a request issued after the window moved on.
struct ExecRequest {
    std::string action;
    std::string resource;
    std::optional<Tick> at;

    friend bool operator==(const ExecRequest&, const ExecRequest&) = default;
};

// Run requests under a contract-bound token. Every request, allowed or
// denied, appends exactly one ExecutionOutcome: token denials carry the
// authorize() reason, world refusals (unknown resource, terminated resource,
// capacity floor) are recorded as denied outcomes with a world reason, and
// only allowed requests mutate the world. Effects come from the intent's
// asserted facts for the requested resource, read back from the log.
std::vector<ChainEntry> execute(const ExecutionContract& contract, const TaskToken& token,
                                std::span<const ExecRequest> requests, WorldState& world,
                                const TokenRegistry& registry, EvidenceChain& log, Tick now,
                                const Actor& actor);

} // namespace kedge
