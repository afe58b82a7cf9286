#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

#include "kedge/chain.hpp"

namespace kedge {

// Canonical JSONL record for one entry (no trailing newline).
std::string entry_to_line(const ChainEntry& entry);

// Parse one record; validates payload shape against the declared kind.
// Throws Errc::MalformedRecord.
ChainEntry entry_from_line(std::string_view line);

void save_chain(const EvidenceChain& chain, const std::filesystem::path& path);

// Strict load: throws Errc::MalformedRecord / Errc::IoError.
EvidenceChain load_chain(const std::filesystem::path& path);

// Lenient load for verification surfaces: a malformed record becomes a
// verification failure at its line index instead of an exception.
struct LoadReport {
    EvidenceChain chain; // entries before the first malformed record
    bool ok = true;
    std::uint64_t bad_index = 0;
    std::string detail;
};

LoadReport load_chain_lenient(const std::filesystem::path& path);

// Streaming writer: one line per appended entry, flushed per write so any
// persisted prefix is final.
class ChainWriter {
public:
    enum class Mode { Truncate, Append };

    explicit ChainWriter(const std::filesystem::path& path, Mode mode = Mode::Truncate);
    void write(const ChainEntry& entry);

private:
    std::ofstream out_;
};

} // namespace kedge
