#pragma once

// Monotone graph properties Phi = (phi_1, phi_2, ...) and the machinery around
// them: the edge-minimal pattern sets H_{phi_k}, exhaustive monotonicity
// checking, and the bundled properties (connected / hamiltonian /
// non-bipartite) plus user-supplied pattern lists.

#include "subcount/common.hpp"
#include "subcount/pattern.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace subcount {

struct Property {
    std::string name;
    std::function<bool(const LabelledPattern&)> predicate;
    bool symmetric = false;
    bool monotone = false;
    int treewidth_bound = -1; // -1 when not declared
    // Direct enumerator for the edge-minimal patterns; nullptr falls back to
    // exhaustive filtering of all 2^C(k,2) labelled graphs.
    std::function<std::vector<LabelledPattern>(int)> minimal_enumerator;
    int exhaustive_cap = 6; // 2^15 graphs at k=6 is tractable, k=7 is not
};

// Edge-minimal members of H_{phi_k}, sorted by edge mask for a stable order.
// For a monotone property, minimality of P reduces to "no single edge of P
// can be dropped"; otherwise all satisfying patterns are compared pairwise.
inline std::vector<LabelledPattern> minimal_patterns(const Property& phi, int k) {
    if (k < 1) throw std::invalid_argument("minimal_patterns: k must be positive");
    std::vector<LabelledPattern> out;
    if (phi.minimal_enumerator) {
        out = phi.minimal_enumerator(k);
    } else {
        if (k > phi.exhaustive_cap)
            throw cap_exceeded("minimal_patterns: k=" + std::to_string(k) +
                               " exceeds exhaustive cap " + std::to_string(phi.exhaustive_cap) +
                               " and property \"" + phi.name + "\" has no direct enumerator");
        int slots = LabelledPattern::slot_count(k);
        std::vector<u64> satisfying;
        for (u64 mask = 0; mask < (u64(1) << slots); ++mask)
            if (phi.predicate(LabelledPattern::from_mask(k, mask))) satisfying.push_back(mask);
        for (u64 mask : satisfying) {
            bool minimal = true;
            if (phi.monotone) {
                for (int s = 0; s < slots && minimal; ++s)
                    if ((mask >> s) & 1)
                        minimal = !phi.predicate(LabelledPattern::from_mask(k, mask & ~(u64(1) << s)));
            } else {
                for (u64 other : satisfying)
                    if (other != mask && (other & ~mask) == 0 &&
                        std::popcount(other) < std::popcount(mask)) {
                        minimal = false;
                        break;
                    }
            }
            if (minimal) out.push_back(LabelledPattern::from_mask(k, mask));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const LabelledPattern& a, const LabelledPattern& b) {
                  return a.edge_mask() < b.edge_mask();
              });
    return out;
}

// Exhaustive check that no edge addition can destroy the property at this k.
inline bool check_monotone(const Property& phi, int k) {
    if (k < 1) throw std::invalid_argument("check_monotone: k must be positive");
    if (k > phi.exhaustive_cap)
        throw cap_exceeded("check_monotone: k exceeds exhaustive cap");
    int slots = LabelledPattern::slot_count(k);
    for (u64 mask = 0; mask < (u64(1) << slots); ++mask) {
        if (!phi.predicate(LabelledPattern::from_mask(k, mask))) continue;
        for (int s = 0; s < slots; ++s) {
            if ((mask >> s) & 1) continue;
            if (!phi.predicate(LabelledPattern::from_mask(k, mask | (u64(1) << s)))) return false;
        }
    }
    return true;
}

namespace detail {

inline bool pattern_hamiltonian(const LabelledPattern& p) {
    int k = p.k;
    if (k < 3) return false;
    // Held-Karp reachability over vertex subsets, cycle anchored at label 1.
    std::vector<u32> adj(k, 0);
    for (auto [a, b] : p.edges) {
        adj[a - 1] |= u32(1) << (b - 1);
        adj[b - 1] |= u32(1) << (a - 1);
    }
    std::vector<u32> reach(u64(1) << k, 0); // reach[S] = end vertices of paths from 0 spanning S
    reach[1] = 1;
    for (u32 s = 1; s < (u32(1) << k); ++s) {
        if (!(s & 1) || !reach[s]) continue;
        u32 ends = reach[s];
        while (ends) {
            int v = std::countr_zero(ends);
            ends &= ends - 1;
            u32 nexts = adj[v] & ~s;
            while (nexts) {
                int w = std::countr_zero(nexts);
                nexts &= nexts - 1;
                reach[s | (u32(1) << w)] |= u32(1) << w;
            }
        }
    }
    u32 full = (u32(1) << k) - 1;
    return (reach[full] & adj[0]) != 0;
}

inline bool pattern_bipartite(const LabelledPattern& p) {
    std::vector<int> side(p.k + 1, -1);
    std::vector<std::vector<int>> adj(p.k + 1);
    for (auto [a, b] : p.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (int s = 1; s <= p.k; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (side[w] == -1) {
                    side[w] = side[v] ^ 1;
                    stack.push_back(w);
                } else if (side[w] == side[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// All odd cycles through a fixed label subset, plus isolated labels: exactly
// the edge-minimal non-bipartite patterns.
inline std::vector<LabelledPattern> odd_cycle_patterns(int k) {
    std::vector<LabelledPattern> out;
    for (int len = 3; len <= k; len += 2) {
        std::vector<int> comb(len);
        for (int i = 0; i < len; ++i) comb[i] = i + 1;
        for (;;) {
            // distinct cycles on comb: fix the smallest label first and orient
            // by requiring the second element below the last
            std::vector<int> rest(comb.begin() + 1, comb.end());
            std::sort(rest.begin(), rest.end());
            do {
                if (len > 2 && rest.front() > rest.back()) continue;
                std::vector<std::pair<int, int>> edges;
                int prev = comb[0];
                for (int x : rest) {
                    edges.emplace_back(prev, x);
                    prev = x;
                }
                edges.emplace_back(prev, comb[0]);
                out.push_back(LabelledPattern::from_edges(k, std::move(edges)));
            } while (std::next_permutation(rest.begin(), rest.end()));
            int pos = len - 1;
            while (pos >= 0 && comb[pos] == k - (len - 1 - pos)) --pos;
            if (pos < 0) break;
            ++comb[pos];
            for (int i = pos + 1; i < len; ++i) comb[i] = comb[i - 1] + 1;
        }
    }
    return out;
}

} // namespace detail

inline Property connected_property() {
    Property p;
    p.name = "connected";
    p.predicate = [](const LabelledPattern& q) { return phi_connected(q); };
    p.symmetric = true;
    p.monotone = true;
    p.treewidth_bound = 1;
    p.minimal_enumerator = [](int k) { return prufer_trees(k); };
    return p;
}

inline Property hamiltonian_property() {
    Property p;
    p.name = "hamiltonian";
    p.predicate = [](const LabelledPattern& q) { return detail::pattern_hamiltonian(q); };
    p.symmetric = true;
    p.monotone = true;
    p.treewidth_bound = 2;
    return p;
}

inline Property non_bipartite_property() {
    Property p;
    p.name = "non-bipartite";
    p.predicate = [](const LabelledPattern& q) { return !detail::pattern_bipartite(q); };
    p.symmetric = true;
    p.monotone = true;
    p.treewidth_bound = 2;
    p.minimal_enumerator = [](int k) {
        if (k > 9) throw cap_exceeded("non-bipartite enumerator capped at k=9");
        return detail::odd_cycle_patterns(k);
    };
    return p;
}

inline Property property_by_name(const std::string& name) {
    if (name == "connected") return connected_property();
    if (name == "hamiltonian") return hamiltonian_property();
    if (name == "non-bipartite") return non_bipartite_property();
    throw std::invalid_argument("unknown property: " + name);
}

// Pattern-list file: line 1 "k p", then p lines of minimal-pattern edges as
// "u-v,u-v,...". A line of "-" denotes the edgeless pattern. The listed
// patterns define phi as "some listed pattern is contained", which is
// monotone by construction; the list itself must be an antichain.
inline Property property_from_pattern_file(std::istream& in, const std::string& name = "custom") {
    std::string raw, line;
    std::size_t lineno = 0;
    int k = -1, count = -1;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!detail::content_line(raw, line)) continue;
        std::istringstream ss(line);
        std::string extra;
        if (!(ss >> k >> count) || (ss >> extra) || k < 1 || count < 0)
            throw parse_error("malformed pattern-file header, expected \"k p\"", lineno);
        break;
    }
    if (k < 0) throw parse_error("missing pattern-file header");
    std::vector<LabelledPattern> patterns;
    while (static_cast<int>(patterns.size()) < count && std::getline(in, raw)) {
        ++lineno;
        if (!detail::content_line(raw, line)) continue;
        std::istringstream ss(line);
        std::string token;
        ss >> token;
        std::vector<std::pair<int, int>> edges;
        if (token != "-") {
            std::istringstream ts(token);
            std::string part;
            while (std::getline(ts, part, ',')) {
                auto dash = part.find('-');
                if (dash == std::string::npos)
                    throw parse_error("malformed edge \"" + part + "\", expected u-v", lineno);
                try {
                    int a = std::stoi(part.substr(0, dash));
                    int b = std::stoi(part.substr(dash + 1));
                    edges.emplace_back(a, b);
                } catch (const std::exception&) {
                    throw parse_error("malformed edge \"" + part + "\"", lineno);
                }
            }
        }
        try {
            patterns.push_back(LabelledPattern::from_edges(k, std::move(edges)));
        } catch (const std::invalid_argument& e) {
            throw parse_error(e.what(), lineno);
        }
    }
    if (static_cast<int>(patterns.size()) < count)
        throw parse_error("expected " + std::to_string(count) + " patterns");
    for (const auto& p : patterns)
        for (const auto& q : patterns)
            if (&p != &q && pattern_subset(p, q))
                throw parse_error("pattern list is not an antichain: one pattern contains another");

    Property prop;
    prop.name = name;
    prop.monotone = true;
    prop.symmetric = false;
    auto shared = std::make_shared<std::vector<LabelledPattern>>(std::move(patterns));
    int file_k = k;
    prop.predicate = [shared, file_k](const LabelledPattern& q) {
        if (q.k != file_k) return false;
        for (const auto& p : *shared)
            if (pattern_subset(p, q)) return true;
        return false;
    };
    prop.minimal_enumerator = [shared, file_k, name](int kk) {
        if (kk != file_k)
            throw std::invalid_argument("property \"" + name + "\" is defined at k=" +
                                        std::to_string(file_k) + " only");
        return *shared;
    };
    return prop;
}

} // namespace subcount
