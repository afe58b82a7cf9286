#include "kedge/chain.hpp"

#include "json_codec.hpp"
#include "kedge/errors.hpp"

namespace kedge {

std::string_view event_kind_name(EventKind kind) noexcept {
    switch (kind) {
    case EventKind::IntentProposed: return "IntentProposed";
    case EventKind::ContextSnapshotted: return "ContextSnapshotted";
    case EventKind::DecisionRendered: return "DecisionRendered";
    case EventKind::ContractIssued: return "ContractIssued";
    case EventKind::ExecutionOutcome: return "ExecutionOutcome";
    }
    return "IntentProposed";
}

EventKind event_kind_from_name(std::string_view name) {
    if (name == "IntentProposed") return EventKind::IntentProposed;
    if (name == "ContextSnapshotted") return EventKind::ContextSnapshotted;
    if (name == "DecisionRendered") return EventKind::DecisionRendered;
    if (name == "ContractIssued") return EventKind::ContractIssued;
    if (name == "ExecutionOutcome") return EventKind::ExecutionOutcome;
    raise(Errc::MalformedRecord, "unknown event kind '" + std::string(name) + "'");
}

std::string_view chain_fault_name(ChainFault fault) noexcept {
    switch (fault) {
    case ChainFault::DigestMismatch: return "DigestMismatch";
    case ChainFault::LinkMismatch: return "LinkMismatch";
    case ChainFault::TimeRegression: return "TimeRegression";
    case ChainFault::MalformedRecord: return "MalformedRecord";
    }
    return "DigestMismatch";
}

Digest entry_digest(std::uint64_t index, const Digest& prev_digest, const LifecycleEvent& event) {
    return sha256(codec::entry_preimage(index, prev_digest.hex(), codec::event_to_json(event)));
}

VerificationReport verify_entries(std::span<const ChainEntry> entries) {
    Tick last_tick = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const ChainEntry& entry = entries[i];
        if (entry.index != i)
            return VerificationReport::broken(i, ChainFault::LinkMismatch,
                                              "index field does not match position");
        if (i == 0) {
            if (!entry.prev_digest.is_zero())
                return VerificationReport::broken(0, ChainFault::LinkMismatch,
                                                  "genesis prev_digest is not all-zero");
        } else if (entry.prev_digest != entries[i - 1].digest) {
            return VerificationReport::broken(i, ChainFault::LinkMismatch,
                                              "prev_digest does not match predecessor digest");
        }
        if (entry_digest(entry.index, entry.prev_digest, entry.event) != entry.digest)
            return VerificationReport::broken(i, ChainFault::DigestMismatch,
                                              "digest does not recompute from canonical bytes");
        if (i > 0 && entry.event.logical_time < last_tick)
            return VerificationReport::broken(i, ChainFault::TimeRegression,
                                              "logical_time decreased");
        last_tick = entry.event.logical_time;
    }
    return VerificationReport::okay();
}

const ChainEntry& EvidenceChain::append(LifecycleEvent event) {
    if (!entries_.empty() && event.logical_time < entries_.back().event.logical_time)
        raise(Errc::TimeRegression,
              "event tick " + std::to_string(event.logical_time) + " precedes log head tick " +
                  std::to_string(entries_.back().event.logical_time));
    if (event.kind() != EventKind::IntentProposed && !known_intents_.contains(event.intent_id))
        raise(Errc::DanglingIntent, "intent '" + event.intent_id + "' not present in log");

    ChainEntry entry;
    entry.index = entries_.size();
    entry.prev_digest = entries_.empty() ? Digest{} : entries_.back().digest;
    entry.event = std::move(event);
    entry.digest = entry_digest(entry.index, entry.prev_digest, entry.event);
    known_intents_.insert(entry.event.intent_id);
    entries_.push_back(std::move(entry));
    return entries_.back();
}

std::vector<ChainEntry> EvidenceChain::lineage(const std::string& intent_id) const {
    if (!known_intents_.contains(intent_id))
        raise(Errc::UnknownIntent, "intent '" + intent_id + "' not present in log");
    std::vector<ChainEntry> out;
    for (const auto& entry : entries_)
        if (entry.event.intent_id == intent_id) out.push_back(entry);
    return out;
}

std::vector<ChainEntry> EvidenceChain::read_range(std::size_t from, std::size_t to) const {
    if (from > to || to > entries_.size())
        raise(Errc::OutOfBounds, "range [" + std::to_string(from) + ", " + std::to_string(to) +
                                     ") outside log of length " + std::to_string(entries_.size()));
    return {entries_.begin() + static_cast<std::ptrdiff_t>(from),
            entries_.begin() + static_cast<std::ptrdiff_t>(to)};
}

EvidenceChain EvidenceChain::adopt(std::vector<ChainEntry> entries) {
    EvidenceChain chain;
    chain.entries_ = std::move(entries);
    for (const auto& entry : chain.entries_) chain.known_intents_.insert(entry.event.intent_id);
    return chain;
}

} // namespace kedge
