#pragma once

// JSON views of the reportable objects: estimates, hash families, tree
// decompositions, identity checks. Exact integers are emitted as decimal
// strings so nothing is rounded through a double on the way out.

#include "subcount/exact_lab.hpp"
#include "subcount/hash_family.hpp"
#include "subcount/karp_luby.hpp"
#include "subcount/treewidth.hpp"

#include <json.hpp>

namespace subcount {

inline nlohmann::json to_json(const Estimate& e) {
    nlohmann::json j;
    j["value"] = e.value_as_double();
    j["value_exact"] = numerator(e.value).str() + "/" + denominator(e.value).str();
    j["epsilon"] = e.epsilon;
    j["delta"] = e.delta;
    j["trials"] = e.trials;
    j["accepted"] = e.accepted;
    j["m"] = e.set_count;
    j["total_size"] = e.total_size.str();
    j["seed"] = e.seed;
    if (!e.family_mode.empty()) {
        j["family_mode"] = e.family_mode;
        j["family_delta"] = e.family_delta;
        j["estimator_delta"] = e.estimator_delta;
    }
    return j;
}

inline nlohmann::json to_json(const HashFamily& f) {
    nlohmann::json j;
    j["n"] = f.n;
    j["k"] = f.k;
    j["mode"] = family_mode_name(f.mode);
    if (f.mode == FamilyMode::Randomized) j["delta_h"] = f.delta_h;
    j["functions"] = nlohmann::json::array();
    for (const auto& member : f.members) j["functions"].push_back(member);
    return j;
}

inline nlohmann::json to_json(const TreeDecomposition& td) {
    nlohmann::json nodes = nlohmann::json::array();
    for (int i = 0; i < td.node_count(); ++i)
        nodes.push_back({{"node", i}, {"parent", td.parent[i]}, {"bag", td.bags[i]}});
    return {{"width", td.width()}, {"nodes", nodes}};
}

inline nlohmann::json to_json(const NiceDecomposition& nd) {
    static const char* names[] = {"leaf", "introduce", "forget", "join"};
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
        const NiceNode& n = nd.nodes[i];
        nlohmann::json row{{"node", i},
                           {"type", names[static_cast<int>(n.type)]},
                           {"bag", n.bag}};
        if (n.type == NiceNodeType::Introduce || n.type == NiceNodeType::Forget)
            row["vertex"] = n.vertex;
        if (n.child >= 0) row["child"] = n.child;
        if (n.child2 >= 0) row["child2"] = n.child2;
        nodes.push_back(row);
    }
    return {{"width", nd.width()}, {"nodes", nodes}};
}

inline nlohmann::json to_json(const IdentityCheck& c) {
    nlohmann::json j{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

} // namespace subcount
