#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "kedge/digest.hpp"
#include "kedge/events.hpp"

namespace kedge {

// One record of the intent-to-execution evidence chain.
struct ChainEntry {
    std::uint64_t index = 0;
    Digest prev_digest; // all-zero for the genesis entry
    LifecycleEvent event;
    Digest digest; // SHA-256 over canonical (index, prev_digest, event)
};

// Digest over the canonical serialization of (index, prev_digest, event):
// compact JSON, lexicographically sorted keys, UTF-8, lowercase hex.
Digest entry_digest(std::uint64_t index, const Digest& prev_digest, const LifecycleEvent& event);

enum class ChainFault { DigestMismatch, LinkMismatch, TimeRegression, MalformedRecord };

std::string_view chain_fault_name(ChainFault fault) noexcept;

struct VerificationReport {
    bool ok = true;
    std::uint64_t first_broken_index = 0; // meaningful when !ok
    ChainFault fault = ChainFault::DigestMismatch;
    std::string detail;

    static VerificationReport okay() { return {}; }
    static VerificationReport broken(std::uint64_t index, ChainFault fault, std::string detail) {
        return {false, index, fault, std::move(detail)};
    }
};

// Recompute digests and link structure over an entry sequence.
VerificationReport verify_entries(std::span<const ChainEntry> entries);

// Append-only, hash-chained event log. Single-writer: appends are serialized
// through the owning caller; reads over an already-appended prefix are safe.
class EvidenceChain {
public:
    // Throws Errc::TimeRegression on a non-monotonic tick and
    // Errc::DanglingIntent when a non-IntentProposed event references an
    // intent_id the log has never seen. Both signal caller bugs.
    const ChainEntry& append(LifecycleEvent event);

    VerificationReport verify() const { return verify_entries(entries_); }

    // All entries for an intent, in log order. Throws Errc::UnknownIntent.
    std::vector<ChainEntry> lineage(const std::string& intent_id) const;

    // Contiguous half-open slice [from, to). Throws Errc::OutOfBounds.
    std::vector<ChainEntry> read_range(std::size_t from, std::size_t to) const;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const ChainEntry& at(std::size_t i) const { return entries_.at(i); }
    std::span<const ChainEntry> entries() const { return entries_; }
    bool contains_intent(const std::string& intent_id) const {
        return known_intents_.contains(intent_id);
    }

    // Digest of the whole chain: the head entry's digest (all-zero when empty).
    Digest head_digest() const { return entries_.empty() ? Digest{} : entries_.back().digest; }

    // Rebuild from entries that already carry digests (loaded from disk).
    // Link/digest correctness is the loader's and verify()'s concern.
    static EvidenceChain adopt(std::vector<ChainEntry> entries);

private:
    std::vector<ChainEntry> entries_;
    std::unordered_set<std::string> known_intents_;
};

} // namespace kedge
