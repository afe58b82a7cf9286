#include "kedge/chain_io.hpp"

#include "json_codec.hpp"
#include "kedge/errors.hpp"

namespace kedge {

std::string entry_to_line(const ChainEntry& entry) {
    codec::json j;
    j["digest"] = entry.digest.hex();
    j["event"] = codec::event_to_json(entry.event);
    j["index"] = entry.index;
    j["prev_digest"] = entry.prev_digest.hex();
    return j.dump();
}

ChainEntry entry_from_line(std::string_view line) {
    codec::json j = codec::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        raise(Errc::MalformedRecord, "record is not a JSON object");
    ChainEntry entry;
    auto idx = j.find("index");
    if (idx == j.end() || !idx->is_number_unsigned())
        raise(Errc::MalformedRecord, "missing or bad index");
    entry.index = idx->get<std::uint64_t>();
    auto prev = j.find("prev_digest");
    auto dig = j.find("digest");
    auto ev = j.find("event");
    if (prev == j.end() || !prev->is_string() || dig == j.end() || !dig->is_string() ||
        ev == j.end())
        raise(Errc::MalformedRecord, "missing digest/prev_digest/event");
    entry.prev_digest = Digest::from_hex(prev->get<std::string>());
    entry.digest = Digest::from_hex(dig->get<std::string>());
    entry.event = codec::event_from_json(*ev);
    return entry;
}

void save_chain(const EvidenceChain& chain, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) raise(Errc::IoError, "cannot open '" + path.string() + "' for writing");
    for (const auto& entry : chain.entries()) out << entry_to_line(entry) << '\n';
    if (!out) raise(Errc::IoError, "write to '" + path.string() + "' failed");
}

EvidenceChain load_chain(const std::filesystem::path& path) {
    LoadReport report = load_chain_lenient(path);
    if (!report.ok)
        raise(Errc::MalformedRecord,
              "record " + std::to_string(report.bad_index) + ": " + report.detail);
    return std::move(report.chain);
}

LoadReport load_chain_lenient(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path.string() + "'");
    LoadReport report;
    std::vector<ChainEntry> entries;
    std::string line;
    std::uint64_t line_index = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue; // tolerate a trailing blank line
        try {
            entries.push_back(entry_from_line(line));
        } catch (const Error& e) {
            report.ok = false;
            report.bad_index = line_index;
            report.detail = e.what();
            break;
        }
        ++line_index;
    }
    report.chain = EvidenceChain::adopt(std::move(entries));
    return report;
}

ChainWriter::ChainWriter(const std::filesystem::path& path, Mode mode)
    : out_(path, (mode == Mode::Append ? std::ios::app : std::ios::trunc) | std::ios::binary) {
    if (!out_) raise(Errc::IoError, "cannot open '" + path.string() + "' for writing");
}

void ChainWriter::write(const ChainEntry& entry) {
    out_ << entry_to_line(entry) << '\n';
    out_.flush();
    if (!out_) raise(Errc::IoError, "append to chain file failed");
}

} // namespace kedge
