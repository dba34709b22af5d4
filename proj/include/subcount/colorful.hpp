#pragma once

// Exact counting and uniform sampling of color-preserving embeddings of a
// colorful pattern into a colored host. One dynamic program over a nice
// decomposition of the pattern serves both: table values count extensions of
// a bag assignment to the forgotten vertices, and sampling walks the same
// tables top-down, choosing each forgotten vertex with probability
// proportional to its table weight.

#include "subcount/common.hpp"
#include "subcount/graph.hpp"
#include "subcount/pattern.hpp"
#include "subcount/rng.hpp"
#include "subcount/treewidth.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

namespace subcount {

// Pattern on {1..k} together with an injective coloring of its labels.
struct ColoredPattern {
    LabelledPattern pattern;
    std::vector<int> omega; // omega[i] = color of label i+1

    static ColoredPattern make(LabelledPattern p, std::vector<int> colors) {
        if (static_cast<int>(colors.size()) != p.k)
            throw std::invalid_argument("pattern coloring must cover all labels");
        auto sorted = colors;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("pattern coloring must be injective");
        return {std::move(p), std::move(colors)};
    }
};

// Color-preserving embedding: label i+1 maps to host vertex to_host[i].
struct Embedding {
    std::vector<int> to_host;

    bool valid(const Graph& g, const Coloring& f, const ColoredPattern& cp) const {
        if (to_host.size() != static_cast<std::size_t>(cp.pattern.k)) return false;
        for (int i = 0; i < cp.pattern.k; ++i) {
            int v = to_host[i];
            if (v < 0 || v >= g.vertex_count() || f(v) != cp.omega[i]) return false;
        }
        for (auto [a, b] : cp.pattern.edges)
            if (!g.adjacent(to_host[a - 1], to_host[b - 1])) return false;
        return true;
    }
};

// DP engine bound to one (host, pattern, per-label candidate classes) triple.
// candidates[i] lists the host vertices usable for label i+1 (the host color
// class of the label's color). The host graph must outlive the counter.
class ColorfulCounter {
public:
    ColorfulCounter(const Graph& host, const LabelledPattern& pattern,
                    const NiceDecomposition& nd, std::vector<std::vector<int>> candidates)
        : host_(&host), k_(pattern.k), candidates_(std::move(candidates)) {
        if (host.vertex_count() > 255)
            throw cap_exceeded("colorful DP host over cap (n <= 255)");
        if (nd.width() + 1 > 8)
            throw cap_exceeded("colorful DP bag size over cap (width <= 7)");
        build(pattern, nd);
    }

    const BigInt& count() const { return count_; }

    Embedding sample(Rng& rng) const {
        Embedding e;
        sample_into(rng, e);
        return e;
    }

    // allocation-free on reuse; the estimator's hot path
    void sample_into(Rng& rng, Embedding& e) const {
        if (count_ == 0) throw no_witness_error("no colorful embedding exists");
        e.to_host.assign(k_, -1);
        walk(static_cast<int>(nodes_.size()) - 1, 0, e, rng);
    }

private:
    struct Entry {
        u64 key;
        BigInt value;
    };
    struct ForgetAux {
        u64 proj;
        u8 x;
        u32 child_idx;
    };
    struct ForgetGroup {
        u64 proj;
        u32 begin, end; // aux range
        u64 total64;    // group weight when it fits; 0 forces the BigInt path
    };
    struct Node {
        NiceNodeType type;
        int vertex = 0;
        int child = -1, child2 = -1;
        int slot = -1;       // position of `vertex` in this node's bag (introduce)
        int child_slot = -1; // position of `vertex` in the child's bag (forget)
        std::vector<std::pair<int, int>> intro_checks; // (child key slot, must-be-adjacent host)
        std::vector<Entry> table;
        std::vector<ForgetAux> aux;    // forget nodes: sorted by (proj, x)
        std::vector<ForgetGroup> groups;
        std::vector<u64> cum64;        // per-aux-entry prefix sums inside each group
    };

    // slot+1 can reach 8 on width-7 patterns; guard the 64-bit shifts
    static u64 shl64(u64 v, int bits) { return bits >= 64 ? 0 : v << bits; }
    static u64 shr64(u64 v, int bits) { return bits >= 64 ? 0 : v >> bits; }

    static u64 insert_byte(u64 key, int slot, u8 x) {
        u64 low = key & ((u64(1) << (8 * slot)) - 1);
        u64 high = key >> (8 * slot);
        return low | (u64(x) << (8 * slot)) | shl64(high, 8 * (slot + 1));
    }
    static u64 remove_byte(u64 key, int slot) {
        u64 low = key & ((u64(1) << (8 * slot)) - 1);
        u64 high = shr64(key, 8 * (slot + 1));
        return low | (high << (8 * slot));
    }
    static u8 get_byte(u64 key, int slot) { return static_cast<u8>(key >> (8 * slot)); }

    void build(const LabelledPattern& pattern, const NiceDecomposition& nd) {
        nodes_.resize(nd.nodes.size());
        for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
            const NiceNode& src = nd.nodes[i];
            Node& n = nodes_[i];
            n.type = src.type;
            n.vertex = src.vertex;
            n.child = src.child;
            n.child2 = src.child2;
            switch (src.type) {
            case NiceNodeType::Leaf:
                n.table.push_back({0, BigInt(1)});
                break;
            case NiceNodeType::Introduce: {
                const auto& bag = src.bag;
                const auto& child_bag = nd.nodes[src.child].bag;
                n.slot = static_cast<int>(
                    std::lower_bound(bag.begin(), bag.end(), src.vertex) - bag.begin());
                for (std::size_t s = 0; s < child_bag.size(); ++s)
                    if (pattern.adjacent(src.vertex, child_bag[s]))
                        n.intro_checks.emplace_back(static_cast<int>(s), child_bag[s]);
                const auto& cls = candidates_[src.vertex - 1];
                const auto& child_table = nodes_[src.child].table;
                for (const Entry& ce : child_table) {
                    for (int x : cls) {
                        bool ok = true;
                        for (auto [cslot, lbl] : n.intro_checks) {
                            (void)lbl;
                            if (!host_->adjacent(x, get_byte(ce.key, cslot))) {
                                ok = false;
                                break;
                            }
                        }
                        if (ok)
                            n.table.push_back(
                                {insert_byte(ce.key, n.slot, static_cast<u8>(x)), ce.value});
                    }
                }
                std::sort(n.table.begin(), n.table.end(),
                          [](const Entry& a, const Entry& b) { return a.key < b.key; });
                break;
            }
            case NiceNodeType::Forget: {
                const auto& child_bag = nd.nodes[src.child].bag;
                n.child_slot = static_cast<int>(
                    std::lower_bound(child_bag.begin(), child_bag.end(), src.vertex) -
                    child_bag.begin());
                const auto& child_table = nodes_[src.child].table;
                n.aux.reserve(child_table.size());
                for (u32 ci = 0; ci < child_table.size(); ++ci)
                    n.aux.push_back({remove_byte(child_table[ci].key, n.child_slot),
                                     get_byte(child_table[ci].key, n.child_slot), ci});
                std::sort(n.aux.begin(), n.aux.end(), [](const ForgetAux& a, const ForgetAux& b) {
                    return a.proj != b.proj ? a.proj < b.proj : a.x < b.x;
                });
                n.cum64.resize(n.aux.size());
                const BigInt u64_max(~u64(0));
                for (std::size_t j = 0; j < n.aux.size();) {
                    u64 proj = n.aux[j].proj;
                    u32 begin = static_cast<u32>(j);
                    BigInt sum = 0;
                    while (j < n.aux.size() && n.aux[j].proj == proj) {
                        sum += child_table[n.aux[j].child_idx].value;
                        n.cum64[j] = sum <= u64_max ? sum.convert_to<u64>() : 0;
                        ++j;
                    }
                    u64 total64 = sum <= u64_max ? sum.convert_to<u64>() : 0;
                    n.groups.push_back({proj, begin, static_cast<u32>(j), total64});
                    n.table.push_back({proj, std::move(sum)});
                }
                break;
            }
            case NiceNodeType::Join: {
                const auto& t1 = nodes_[src.child].table;
                const auto& t2 = nodes_[src.child2].table;
                std::size_t a = 0, b = 0;
                while (a < t1.size() && b < t2.size()) {
                    if (t1[a].key < t2[b].key) ++a;
                    else if (t2[b].key < t1[a].key) ++b;
                    else {
                        n.table.push_back({t1[a].key, t1[a].value * t2[b].value});
                        ++a;
                        ++b;
                    }
                }
                break;
            }
            }
        }
        const auto& root_table = nodes_.back().table;
        count_ = root_table.empty() ? BigInt(0) : root_table.front().value;
    }

    const Entry* find(const std::vector<Entry>& table, u64 key) const {
        auto it = std::lower_bound(table.begin(), table.end(), key,
                                   [](const Entry& e, u64 k) { return e.key < k; });
        return (it != table.end() && it->key == key) ? &*it : nullptr;
    }

    // iterative along intro/forget chains; recursion only at joins
    void walk(int node_idx, u64 key, Embedding& e, Rng& rng) const {
        for (;;) {
            const Node& n = nodes_[node_idx];
            switch (n.type) {
            case NiceNodeType::Leaf:
                return;
            case NiceNodeType::Introduce: {
                u8 x = get_byte(key, n.slot);
                assert(e.to_host[n.vertex - 1] == -1 || e.to_host[n.vertex - 1] == x);
                e.to_host[n.vertex - 1] = x;
                key = remove_byte(key, n.slot);
                node_idx = n.child;
                break;
            }
            case NiceNodeType::Forget: {
                auto group = std::lower_bound(
                    n.groups.begin(), n.groups.end(), key,
                    [](const ForgetGroup& g, u64 k) { return g.proj < k; });
                assert(group != n.groups.end() && group->proj == key);
                u8 x;
                if (group->total64 != 0) {
                    u64 r = rng.below(group->total64);
                    auto it = std::upper_bound(n.cum64.begin() + group->begin,
                                               n.cum64.begin() + group->end, r);
                    x = n.aux[it - n.cum64.begin()].x;
                } else {
                    const auto& child_table = nodes_[n.child].table;
                    const Entry* te = find(n.table, key);
                    assert(te);
                    BigInt r = rng.below_big(te->value);
                    auto it = n.aux.begin() + group->begin;
                    for (;; ++it) {
                        assert(it != n.aux.begin() + group->end);
                        const BigInt& w = child_table[it->child_idx].value;
                        if (r < w) break;
                        r -= w;
                    }
                    x = it->x;
                }
                key = insert_byte(key, n.child_slot, x);
                node_idx = n.child;
                break;
            }
            case NiceNodeType::Join:
                walk(n.child, key, e, rng);
                node_idx = n.child2;
                break;
            }
        }
    }

    const Graph* host_;
    int k_;
    std::vector<std::vector<int>> candidates_;
    std::vector<Node> nodes_;
    BigInt count_;
};

// Candidate classes for a colored pattern under host coloring f: label i+1
// may map to any host vertex of color omega(i+1).
inline std::vector<std::vector<int>> label_candidates(const Coloring& f,
                                                      const ColoredPattern& cp) {
    std::vector<std::vector<int>> out(cp.pattern.k);
    for (int v = 0; v < f.size(); ++v)
        for (int i = 0; i < cp.pattern.k; ++i)
            if (f(v) == cp.omega[i]) out[i].push_back(v);
    return out;
}

// Exact number of colorful copies of the pattern in (g, f); one copy per
// color-preserving embedding, and the injective pattern coloring makes the
// two notions coincide.
inline BigInt count_colorful(const Graph& g, const Coloring& f, const ColoredPattern& cp) {
    NiceDecomposition nd = make_nice(tree_decomposition(cp.pattern));
    ColorfulCounter counter(g, cp.pattern, nd, label_candidates(f, cp));
    return counter.count();
}

// Uniform sample from the witness set of count_colorful; deterministic per
// rng state. Throws no_witness_error when the count is zero.
inline Embedding sample_colorful(const Graph& g, const Coloring& f, const ColoredPattern& cp,
                                 Rng& rng) {
    NiceDecomposition nd = make_nice(tree_decomposition(cp.pattern));
    ColorfulCounter counter(g, cp.pattern, nd, label_candidates(f, cp));
    return counter.sample(rng);
}

} // namespace subcount
