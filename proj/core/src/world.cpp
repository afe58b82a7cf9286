#include "kedge/world.hpp"

#include <fstream>

#include <json.hpp>

#include "json_codec.hpp"
#include "kedge/errors.hpp"

namespace kedge {

std::string_view resource_kind_name(ResourceKind kind) noexcept {
    switch (kind) {
    case ResourceKind::ComputeInstance: return "ComputeInstance";
    case ResourceKind::Cluster: return "Cluster";
    case ResourceKind::Store: return "Store";
    case ResourceKind::Service: return "Service";
    }
    return "Service";
}

ResourceKind resource_kind_from_name(std::string_view name) {
    if (name == "ComputeInstance") return ResourceKind::ComputeInstance;
    if (name == "Cluster") return ResourceKind::Cluster;
    if (name == "Store") return ResourceKind::Store;
    if (name == "Service") return ResourceKind::Service;
    raise(Errc::SpecError, "unknown resource kind '" + std::string(name) + "'");
}

std::string_view traffic_level_name(TrafficLevel level) noexcept {
    switch (level) {
    case TrafficLevel::Low: return "low";
    case TrafficLevel::Normal: return "normal";
    case TrafficLevel::Peak: return "peak";
    }
    return "normal";
}

TrafficLevel traffic_level_from_name(std::string_view name) {
    if (name == "low") return TrafficLevel::Low;
    if (name == "normal") return TrafficLevel::Normal;
    if (name == "peak") return TrafficLevel::Peak;
    raise(Errc::SpecError, "unknown traffic level '" + std::string(name) + "'");
}

const Resource& WorldState::at(const std::string& entity_id) const {
    auto it = resources.find(entity_id);
    if (it == resources.end()) raise(Errc::UnknownEntity, "no resource '" + entity_id + "'");
    return it->second;
}

Resource& WorldState::at(const std::string& entity_id) {
    auto it = resources.find(entity_id);
    if (it == resources.end()) raise(Errc::UnknownEntity, "no resource '" + entity_id + "'");
    return it->second;
}

WorldState parse_world(std::string_view text) {
    using nlohmann::json;
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) raise(Errc::SpecError, "world spec is not a JSON object");
    if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != 1)
        raise(Errc::SpecError, "world spec must declare \"version\": 1");

    WorldState world;
    for (const auto& rj : j.value("resources", json::array())) {
        Resource r;
        if (!rj.contains("entity_id") || !rj["entity_id"].is_string())
            raise(Errc::SpecError, "resource without entity_id");
        r.entity_id = rj["entity_id"].get<std::string>();
        r.kind = resource_kind_from_name(rj.value("kind", "Service"));
        r.alive = rj.value("alive", true);
        if (rj.contains("attributes")) {
            for (auto it = rj["attributes"].begin(); it != rj["attributes"].end(); ++it) {
                try {
                    r.attributes.emplace(it.key(), codec::fact_value_from_json(it.value()));
                } catch (const Error&) {
                    raise(Errc::SpecError, "resource '" + r.entity_id + "' attribute '" + it.key() +
                                               "' must be a string, integer, or boolean");
                }
            }
        }
        if (!world.resources.emplace(r.entity_id, r).second)
            raise(Errc::SpecError, "duplicate resource id '" + r.entity_id + "'");
    }
    for (const auto& ej : j.value("dependencies", json::array())) {
        if (!ej.is_array() || ej.size() != 2 || !ej[0].is_string() || !ej[1].is_string())
            raise(Errc::SpecError, "dependency edges are [dependent, dependency] pairs");
        const auto from = ej[0].get<std::string>();
        const auto to = ej[1].get<std::string>();
        if (!world.has(from) || !world.has(to))
            raise(Errc::SpecError, "dependency edge references unknown id (" + from + " -> " + to + ")");
        world.dependencies.emplace_back(from, to);
    }
    if (j.contains("traffic")) {
        for (auto it = j["traffic"].begin(); it != j["traffic"].end(); ++it) {
            if (!world.has(it.key()))
                raise(Errc::SpecError, "traffic entry for unknown id '" + it.key() + "'");
            world.traffic.emplace(it.key(), traffic_level_from_name(it.value().get<std::string>()));
        }
    }
    if (j.contains("capacity")) {
        for (auto it = j["capacity"].begin(); it != j["capacity"].end(); ++it) {
            if (!world.has(it.key()))
                raise(Errc::SpecError, "capacity entry for unknown id '" + it.key() + "'");
            const std::int64_t n = it.value().get<std::int64_t>();
            if (n < 0) raise(Errc::SpecError, "capacity must be >= 0");
            world.capacity.emplace(it.key(), n);
        }
    }
    return world;
}

WorldState load_world(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open world spec '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_world(text);
}

std::pair<std::int64_t, TrafficLevel> context_signals(const WorldState& world,
                                                      const std::string& entity_id) {
    if (!world.has(entity_id)) raise(Errc::UnknownEntity, "no resource '" + entity_id + "'");
    std::int64_t dependents = 0;
    for (const auto& [from, to] : world.dependencies)
        if (to == entity_id) ++dependents;
    auto it = world.traffic.find(entity_id);
    return {dependents, it == world.traffic.end() ? TrafficLevel::Normal : it->second};
}

} // namespace kedge
