#pragma once

// Internal canonical JSON codec. nlohmann::json with its default std::map
// object backing gives lexicographically sorted keys; dump() gives compact
// separators and raw UTF-8 — together the canonical byte form every digest
// commits to. Not installed; tests and tools go through chain_io.

#include <json.hpp>

#include "kedge/events.hpp"

namespace kedge::codec {

using json = nlohmann::json;

json fact_value_to_json(const FactValue& value);
FactValue fact_value_from_json(const json& j); // throws Errc::MalformedRecord

// Fixed4 attributes serialize as strings with exactly 4 fractional digits
// ("0.9000"); loaders map such strings (and JSON floats) back to Fixed4.
json attr_value_to_json(const AttrValue& value);
AttrValue attr_value_from_json(const json& j);

json fact_to_json(const Fact& fact);
Fact fact_from_json(const json& j);

json payload_to_json(const EventPayload& payload);
EventPayload payload_from_json(EventKind kind, const json& j);

json event_to_json(const LifecycleEvent& event);
LifecycleEvent event_from_json(const json& j);

// Canonical digest preimage for an entry: {"event":…,"index":…,"prev_digest":…}.
std::string entry_preimage(std::uint64_t index, const std::string& prev_hex, const json& event_json);

} // namespace kedge::codec
