#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "covering.hpp"
#include "dynamic_update.hpp"
#include "reduct.hpp"

namespace covrough {

/// On-disk form of a covering space, optionally with a decision partition.
/// Object labels live in the universe list; everything else is 0-based
/// indices.
struct SpaceDocument {
    CoveringSpace space;
    std::optional<std::vector<ObjectSet>> decision;
};

namespace detail {

inline std::vector<std::size_t> index_list(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array())
        throw std::runtime_error(what + ": expected an array of indices");
    std::vector<std::size_t> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_unsigned())
            throw std::runtime_error(what + ": indices must be non-negative integers");
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

}  // namespace detail

inline SpaceDocument space_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::runtime_error("space document: expected an object");
    if (!j.contains("universe") || !j["universe"].is_array())
        throw std::runtime_error("space document: missing 'universe' array");
    if (!j.contains("coverings") || !j["coverings"].is_array())
        throw std::runtime_error("space document: missing 'coverings' array");

    SpaceDocument doc;
    for (const auto& label : j["universe"]) {
        if (!label.is_string())
            throw std::runtime_error("space document: universe labels must be strings");
        doc.space.universe.names.push_back(label.get<std::string>());
    }
    for (const auto& cov : j["coverings"]) {
        if (!cov.is_object() || !cov.contains("name") || !cov.contains("blocks"))
            throw std::runtime_error("space document: each covering needs 'name' and 'blocks'");
        Covering covering;
        covering.name = cov["name"].get<std::string>();
        if (!cov["blocks"].is_array())
            throw std::runtime_error("space document: covering '" + covering.name +
                                     "' blocks must be an array");
        for (const auto& block : cov["blocks"]) {
            auto indices =
                detail::index_list(block, "space document: covering '" + covering.name + "'");
            std::sort(indices.begin(), indices.end());
            indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
            covering.blocks.push_back(std::move(indices));
        }
        doc.space.coverings.push_back(std::move(covering));
    }
    if (j.contains("decision")) {
        if (!j["decision"].is_array())
            throw std::runtime_error("space document: 'decision' must be an array of classes");
        std::vector<ObjectSet> classes;
        for (const auto& cls : j["decision"])
            classes.push_back(
                ObjectSet(detail::index_list(cls, "space document: decision class")));
        doc.decision = std::move(classes);
    }
    return doc;
}

inline nlohmann::json space_to_json(const SpaceDocument& doc) {
    nlohmann::json j;
    j["universe"] = doc.space.universe.names;
    j["coverings"] = nlohmann::json::array();
    for (const auto& cov : doc.space.coverings) {
        nlohmann::json c;
        c["name"] = cov.name;
        c["blocks"] = cov.blocks;
        j["coverings"].push_back(std::move(c));
    }
    if (doc.decision) {
        nlohmann::json d = nlohmann::json::array();
        for (const auto& cls : *doc.decision) d.push_back(cls.members);
        j["decision"] = std::move(d);
    }
    return j;
}

inline UpdateEvent event_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("object") || !j.contains("memberships"))
        throw std::runtime_error("event document: expected 'object' and 'memberships'");
    if (!j["object"].is_number_unsigned())
        throw std::runtime_error("event document: 'object' must be a non-negative index");
    UpdateEvent ev;
    ev.object = j["object"].get<std::size_t>();
    if (!j["memberships"].is_array())
        throw std::runtime_error("event document: 'memberships' must be an array");
    for (const auto& entry : j["memberships"]) {
        if (!entry.is_object() || !entry.contains("covering") || !entry.contains("blocks"))
            throw std::runtime_error(
                "event document: each membership needs 'covering' and 'blocks'");
        UpdateEvent::Membership membership;
        membership.covering = entry["covering"].get<std::string>();
        membership.blocks = detail::index_list(entry["blocks"], "event document: blocks");
        std::sort(membership.blocks.begin(), membership.blocks.end());
        membership.blocks.erase(
            std::unique(membership.blocks.begin(), membership.blocks.end()),
            membership.blocks.end());
        ev.memberships.push_back(std::move(membership));
    }
    return ev;
}

inline nlohmann::json event_to_json(const UpdateEvent& ev) {
    nlohmann::json j;
    j["object"] = ev.object;
    j["memberships"] = nlohmann::json::array();
    for (const auto& membership : ev.memberships) {
        nlohmann::json m;
        m["covering"] = membership.covering;
        m["blocks"] = membership.blocks;
        j["memberships"].push_back(std::move(m));
    }
    return j;
}

namespace detail {

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("'" + path + "': " + e.what());
    }
    return j;
}

}  // namespace detail

inline SpaceDocument load_space_file(const std::string& path) {
    return space_from_json(detail::load_json_file(path));
}

inline UpdateEvent load_event_file(const std::string& path) {
    return event_from_json(detail::load_json_file(path));
}

}  // namespace covrough
