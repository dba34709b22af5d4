#pragma once

// Labelled patterns: graphs on the fixed vertex set {1..k}. A labelled graph
// (H, pi) is stored with the labelling transported onto the labels themselves,
// so pattern equality and the subgraph relation reduce to edge-set operations.

#include "subcount/common.hpp"
#include "subcount/graph.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace subcount {

struct LabelledPattern {
    int k = 0;
    std::vector<std::pair<int, int>> edges; // 1-based labels, a < b, sorted

    LabelledPattern() = default;

    static LabelledPattern from_edges(int k, std::vector<std::pair<int, int>> edges) {
        if (k < 0) throw std::invalid_argument("negative pattern size");
        for (auto& [a, b] : edges) {
            if (a > b) std::swap(a, b);
            if (a == b) throw std::invalid_argument("self-loop in pattern");
            if (a < 1 || b > k) throw std::invalid_argument("pattern label out of range");
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("duplicate pattern edge");
        LabelledPattern p;
        p.k = k;
        p.edges = std::move(edges);
        return p;
    }

    int edge_count() const { return static_cast<int>(edges.size()); }

    bool adjacent(int a, int b) const {
        if (a > b) std::swap(a, b);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
    }

    // Edge slot for 1 <= a < b <= k, colex order: (1,2)=0, (1,3)=1, (2,3)=2, ...
    static int edge_slot(int a, int b) {
        if (a > b) std::swap(a, b);
        return (b - 2) * (b - 1) / 2 + (a - 1);
    }

    static int slot_count(int k) { return k * (k - 1) / 2; }

    // Packs the edge set into one word; requires slot_count(k) <= 64 (k <= 11).
    u64 edge_mask() const {
        u64 m = 0;
        for (auto [a, b] : edges) m |= u64(1) << edge_slot(a, b);
        return m;
    }

    static LabelledPattern from_mask(int k, u64 mask) {
        std::vector<std::pair<int, int>> edges;
        for (int b = 2; b <= k; ++b)
            for (int a = 1; a < b; ++a)
                if ((mask >> edge_slot(a, b)) & 1) edges.emplace_back(a, b);
        return from_edges(k, std::move(edges));
    }

    // Relabel by sigma: label i becomes sigma[i-1].
    LabelledPattern relabel(const std::vector<int>& sigma) const {
        std::vector<std::pair<int, int>> mapped;
        mapped.reserve(edges.size());
        for (auto [a, b] : edges) mapped.emplace_back(sigma[a - 1], sigma[b - 1]);
        return from_edges(k, std::move(mapped));
    }

    bool operator==(const LabelledPattern& o) const { return k == o.k && edges == o.edges; }
    bool operator<(const LabelledPattern& o) const {
        return k != o.k ? k < o.k : edges < o.edges;
    }
};

// edges(p) contained in edges(q), both on the same label set
inline bool pattern_subset(const LabelledPattern& p, const LabelledPattern& q) {
    if (p.k != q.k) throw std::invalid_argument("pattern_subset: mismatched k");
    return std::includes(q.edges.begin(), q.edges.end(), p.edges.begin(), p.edges.end());
}

// The labelled pattern G[v_1,...,v_k]: label i gets tuple position i.
inline LabelledPattern pattern_of_tuple(const Graph& g, const std::vector<int>& tuple) {
    int k = static_cast<int>(tuple.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (g.adjacent(tuple[i], tuple[j])) edges.emplace_back(i + 1, j + 1);
    return LabelledPattern::from_edges(k, std::move(edges));
}

inline bool phi_connected(const LabelledPattern& p) {
    if (p.k <= 1) return true;
    std::vector<int> root(p.k + 1);
    for (int i = 1; i <= p.k; ++i) root[i] = i;
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    int components = p.k;
    for (auto [a, b] : p.edges) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            root[ra] = rb;
            --components;
        }
    }
    return components == 1;
}

namespace detail {
inline LabelledPattern prufer_decode(int k, const std::vector<int>& seq) {
    std::vector<int> degree(k + 1, 1);
    for (int x : seq) ++degree[x];
    std::vector<std::pair<int, int>> edges;
    std::vector<bool> done(k + 1, false);
    for (int x : seq) {
        int leaf = 0;
        for (int v = 1; v <= k; ++v)
            if (!done[v] && degree[v] == 1) {
                leaf = v;
                break;
            }
        edges.emplace_back(leaf, x);
        done[leaf] = true;
        --degree[x];
    }
    int a = 0, b = 0;
    for (int v = 1; v <= k; ++v)
        if (!done[v]) (a ? b : a) = v;
    edges.emplace_back(a, b);
    return LabelledPattern::from_edges(k, std::move(edges));
}
} // namespace detail

// All k^{k-2} labelled trees on {1..k}, via Prufer decoding. k=1 yields the
// single-vertex pattern, k=2 the single edge.
inline std::vector<LabelledPattern> prufer_trees(int k) {
    if (k < 1) throw std::invalid_argument("prufer_trees: k must be positive");
    if (k == 1) return {LabelledPattern::from_edges(1, {})};
    if (k == 2) return {LabelledPattern::from_edges(2, {{1, 2}})};
    std::vector<LabelledPattern> trees;
    std::vector<int> seq(k - 2, 1);
    for (;;) {
        trees.push_back(detail::prufer_decode(k, seq));
        int pos = k - 3;
        while (pos >= 0 && seq[pos] == k) seq[pos--] = 1;
        if (pos < 0) break;
        ++seq[pos];
    }
    return trees;
}

} // namespace subcount
