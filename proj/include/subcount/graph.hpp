#pragma once

// Host-graph representation: undirected simple graphs over dense vertex ids
// 0..n-1, immutable once built. Adjacency is kept twice — sorted neighbour
// lists for iteration and a packed bit matrix for O(1) edge queries, which
// the colorful DP and the set-system membership tests rely on.

#include "subcount/common.hpp"
#include "subcount/rng.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace subcount {

class Graph {
public:
    Graph() = default;

    // Validates and canonicalizes: endpoints in range, no self-loops, no
    // duplicates. Edge pairs are stored with u < v, sorted lexicographically.
    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        for (auto& [u, v] : edges) {
            if (u > v) std::swap(u, v);
            if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
            if (u < 0 || v >= n)
                throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) +
                                            " " + std::to_string(v));
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("duplicate edge");
        Graph g;
        g.n_ = n;
        g.edges_ = std::move(edges);
        g.adj_.resize(n);
        g.row_words_ = (static_cast<std::size_t>(n) + 63) / 64;
        g.bits_.assign(g.row_words_ * n, 0);
        for (auto [u, v] : g.edges_) {
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
            g.bits_[u * g.row_words_ + v / 64] |= u64(1) << (v % 64);
            g.bits_[v * g.row_words_ + u / 64] |= u64(1) << (u % 64);
        }
        for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool adjacent(int u, int v) const {
        return (bits_[u * row_words_ + v / 64] >> (v % 64)) & 1;
    }

    // neighbourhood of v restricted to the first 64 vertices
    u64 neighbor_word(int v) const { return n_ ? bits_[v * row_words_] : 0; }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<u64> bits_;
    std::size_t row_words_ = 0;
};

// --- file format -----------------------------------------------------------
// line 1: "n m"; then m lines "u v" with 0 <= u,v < n; '#' starts a comment.

namespace detail {
inline bool content_line(const std::string& raw, std::string& out) {
    auto hash = raw.find('#');
    out = hash == std::string::npos ? raw : raw.substr(0, hash);
    return out.find_first_not_of(" \t\r\n") != std::string::npos;
}
} // namespace detail

inline Graph load_graph(std::istream& in) {
    std::string raw, line;
    std::size_t lineno = 0;
    int n = -1;
    long m = -1;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!detail::content_line(raw, line)) continue;
        std::istringstream ss(line);
        std::string extra;
        if (!(ss >> n >> m) || (ss >> extra) || n < 0 || m < 0)
            throw parse_error("malformed header, expected \"n m\"", lineno);
        break;
    }
    if (n < 0) throw parse_error("missing header");

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::vector<std::vector<bool>> seen; // lazily sized duplicate check
    long read = 0;
    while (read < m && std::getline(in, raw)) {
        ++lineno;
        if (!detail::content_line(raw, line)) continue;
        std::istringstream ss(line);
        int u, v;
        std::string extra;
        if (!(ss >> u >> v) || (ss >> extra))
            throw parse_error("malformed edge, expected \"u v\"", lineno);
        if (u == v) throw parse_error("self-loop at vertex " + std::to_string(u), lineno);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw parse_error("vertex index out of range: " + line, lineno);
        if (u > v) std::swap(u, v);
        if (seen.empty()) seen.assign(n, {});
        if (seen[u].empty()) seen[u].assign(n, false);
        if (seen[u][v]) throw parse_error("duplicate edge " + std::to_string(u) + " " + std::to_string(v), lineno);
        seen[u][v] = true;
        edges.emplace_back(u, v);
        ++read;
    }
    if (read < m) throw parse_error("expected " + std::to_string(m) + " edges, found " + std::to_string(read));
    return Graph::from_edges(n, std::move(edges));
}

inline Graph load_graph(const std::string& text) {
    std::istringstream ss(text);
    return load_graph(ss);
}

inline void save_graph(const Graph& g, std::ostream& out) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string save_graph(const Graph& g) {
    std::ostringstream ss;
    save_graph(g, ss);
    return ss.str();
}

// --- basic operations -------------------------------------------------------

// G[U] with vertices relabelled 0..|U|-1 in ascending original order.
inline Graph induced_subgraph(const Graph& g, std::vector<int> u_set) {
    std::sort(u_set.begin(), u_set.end());
    if (std::adjacent_find(u_set.begin(), u_set.end()) != u_set.end())
        throw std::invalid_argument("duplicate vertex in induced set");
    for (int v : u_set)
        if (v < 0 || v >= g.vertex_count())
            throw std::invalid_argument("vertex not in graph: " + std::to_string(v));
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < u_set.size(); ++i)
        for (std::size_t j = i + 1; j < u_set.size(); ++j)
            if (g.adjacent(u_set[i], u_set[j])) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return Graph::from_edges(static_cast<int>(u_set.size()), std::move(edges));
}

// The empty and one-vertex graphs count as connected.
inline bool is_connected(const Graph& g) {
    int n = g.vertex_count();
    if (n <= 1) return true;
    std::vector<bool> vis(n, false);
    std::vector<int> stack{0};
    vis[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
            if (!vis[w]) {
                vis[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n;
}

// Is G[U] connected, without materializing the subgraph. U must hold
// distinct valid vertices; empty U counts as connected.
inline bool induced_connected(const Graph& g, const std::vector<int>& u_set) {
    if (u_set.size() <= 1) return true;
    if (g.vertex_count() <= 64) {
        u64 mask = 0;
        for (int v : u_set) mask |= u64(1) << v;
        u64 reach = u64(1) << u_set[0];
        for (;;) {
            u64 frontier = reach;
            u64 grown = reach;
            while (frontier) {
                int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                grown |= g.neighbor_word(v) & mask;
            }
            if (grown == reach) break;
            reach = grown;
        }
        return reach == mask;
    }
    std::vector<bool> in_set(g.vertex_count(), false), vis(g.vertex_count(), false);
    for (int v : u_set) in_set[v] = true;
    std::vector<int> stack{u_set[0]};
    vis[u_set[0]] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
            if (in_set[w] && !vis[w]) {
                vis[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    return count == u_set.size();
}

inline Graph complement(const Graph& g) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v)
            if (!g.adjacent(u, v)) edges.emplace_back(u, v);
    return Graph::from_edges(g.vertex_count(), std::move(edges));
}

// Erdos-Renyi sample, deterministic per seed: pairs are visited in a fixed
// order and each draws one uniform double.
inline Graph random_graph(int n, double p, u64 seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("edge probability out of [0,1]");
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (p >= 1.0 || rng.bernoulli(p)) edges.emplace_back(u, v);
    return Graph::from_edges(n, std::move(edges));
}

// --- colorings ---------------------------------------------------------------

// Total vertex coloring; color ids are small non-negative integers.
struct Coloring {
    std::vector<int> color;

    Coloring() = default;
    explicit Coloring(std::vector<int> c) : color(std::move(c)) {}

    int operator()(int v) const { return color[v]; }
    int size() const { return static_cast<int>(color.size()); }

    std::vector<int> palette() const {
        std::vector<int> p = color;
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
        return p;
    }

    std::vector<int> class_of(int c) const {
        std::vector<int> out;
        for (int v = 0; v < size(); ++v)
            if (color[v] == c) out.push_back(v);
        return out;
    }

    bool operator==(const Coloring& o) const { return color == o.color; }
};

// Coloring file: n lines "vertex color"; every vertex exactly once.
inline Coloring load_coloring(std::istream& in, int n) {
    std::vector<int> color(n, -1);
    std::string raw, line;
    std::size_t lineno = 0;
    int assigned = 0;
    while (assigned < n && std::getline(in, raw)) {
        ++lineno;
        if (!detail::content_line(raw, line)) continue;
        std::istringstream ss(line);
        int v, c;
        std::string extra;
        if (!(ss >> v >> c) || (ss >> extra))
            throw parse_error("malformed coloring line, expected \"vertex color\"", lineno);
        if (v < 0 || v >= n) throw parse_error("vertex index out of range: " + std::to_string(v), lineno);
        if (c < 0) throw parse_error("negative color", lineno);
        if (color[v] != -1) throw parse_error("vertex colored twice: " + std::to_string(v), lineno);
        color[v] = c;
        ++assigned;
    }
    if (assigned < n) throw parse_error("coloring covers " + std::to_string(assigned) + " of " +
                                        std::to_string(n) + " vertices");
    return Coloring(std::move(color));
}

inline Coloring load_coloring(const std::string& text, int n) {
    std::istringstream ss(text);
    return load_coloring(ss, n);
}

inline void save_coloring(const Coloring& c, std::ostream& out) {
    for (int v = 0; v < c.size(); ++v) out << v << ' ' << c.color[v] << '\n';
}

inline Coloring random_coloring(int n, int palette_size, u64 seed) {
    if (palette_size < 1) throw std::invalid_argument("palette must be nonempty");
    Rng rng(seed);
    std::vector<int> color(n);
    for (int v = 0; v < n; ++v) color[v] = 1 + static_cast<int>(rng.below(palette_size));
    return Coloring(std::move(color));
}

// Multiset of colors; the motif M.
struct ColorMultiset {
    std::map<int, int> counts;

    ColorMultiset() = default;
    explicit ColorMultiset(std::map<int, int> c) : counts(std::move(c)) {
        for (auto& [col, mult] : counts)
            if (mult <= 0) throw std::invalid_argument("multiplicity must be positive");
    }

    int size() const {
        int s = 0;
        for (auto& [col, mult] : counts) s += mult;
        return s;
    }

    static ColorMultiset of(const Coloring& c, const std::vector<int>& u_set) {
        std::map<int, int> m;
        for (int v : u_set) ++m[c(v)];
        return ColorMultiset(std::move(m));
    }

    bool operator==(const ColorMultiset& o) const { return counts == o.counts; }
};

} // namespace subcount
