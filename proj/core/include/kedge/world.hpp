#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kedge/domain.hpp"

namespace kedge {

enum class ResourceKind { ComputeInstance, Cluster, Store, Service };

std::string_view resource_kind_name(ResourceKind kind) noexcept;
ResourceKind resource_kind_from_name(std::string_view name); // throws Errc::SpecError

struct Resource {
    std::string entity_id;
    ResourceKind kind = ResourceKind::Service;
    std::map<std::string, FactValue> attributes;
    bool alive = true;
};

enum class TrafficLevel { Low, Normal, Peak };

std::string_view traffic_level_name(TrafficLevel level) noexcept;
TrafficLevel traffic_level_from_name(std::string_view name); // throws Errc::SpecError

// Simulated target infrastructure: resources, dependency edges
// (dependent -> dependency), traffic signals, cluster capacities.
struct WorldState {
    std::map<std::string, Resource> resources;
    std::vector<std::pair<std::string, std::string>> dependencies;
    std::map<std::string, TrafficLevel> traffic;
    std::map<std::string, std::int64_t> capacity;

    bool has(const std::string& entity_id) const { return resources.contains(entity_id); }
    const Resource& at(const std::string& entity_id) const; // throws Errc::UnknownEntity
    Resource& at(const std::string& entity_id);
};

// Parse a versioned world spec. Throws Errc::SpecError on dangling edges,
// duplicate ids, or schema violations.
WorldState parse_world(std::string_view text);
WorldState load_world(const std::filesystem::path& path);

// (dependency_count, traffic_level) for an entity: inbound dependents plus
// the stored traffic signal (Normal when unset). Throws Errc::UnknownEntity.
std::pair<std::int64_t, TrafficLevel> context_signals(const WorldState& world,
                                                      const std::string& entity_id);

} // namespace kedge
