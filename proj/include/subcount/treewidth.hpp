#pragma once

// Exact tree decompositions of k-vertex patterns via the elimination-order
// subset DP, and conversion to the nice (leaf/introduce/forget/join) form the
// colorful DP walks. Only ever applied to patterns, never the host graph, so
// the 2^k table is the whole cost.

#include "subcount/common.hpp"
#include "subcount/pattern.hpp"

#include <algorithm>
#include <bit>
#include <vector>

namespace subcount {

struct TreeDecomposition {
    std::vector<int> parent;            // parent[root] = -1
    std::vector<std::vector<int>> bags; // sorted 1-based pattern labels

    int node_count() const { return static_cast<int>(bags.size()); }
    int width() const {
        std::size_t mx = 0;
        for (const auto& b : bags) mx = std::max(mx, b.size());
        return static_cast<int>(mx) - 1;
    }
};

enum class NiceNodeType { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NiceNodeType type;
    int vertex = 0;                 // introduced/forgotten label; 0 otherwise
    int child = -1, child2 = -1;    // children precede parents in node order
    std::vector<int> bag;           // sorted; empty at leaves and the root
};

struct NiceDecomposition {
    std::vector<NiceNode> nodes; // topological: children before parents; back() is the root
    int root() const { return static_cast<int>(nodes.size()) - 1; }
    int width() const {
        std::size_t mx = 0;
        for (const auto& n : nodes) mx = std::max(mx, n.bag.size());
        return static_cast<int>(mx) - 1;
    }
};

namespace detail {

// Q(v, S): vertices outside S+{v} reachable from v through internal vertices
// in S only. |Q| is v's degree in the elimination game after S is gone.
inline u32 elimination_neighbors(const std::vector<u32>& adj, int v, u32 s) {
    u32 inside = u32(1) << v;
    u32 frontier = inside;
    u32 outside = adj[v] & ~s & ~inside;
    while (frontier) {
        int u = std::countr_zero(frontier);
        frontier &= frontier - 1;
        u32 grow = adj[u] & s & ~inside;
        inside |= grow;
        frontier |= grow;
        outside |= adj[u] & ~s;
    }
    return outside & ~(u32(1) << v) & ~s;
}

} // namespace detail

// Exact minimum-width decomposition. Deterministic: ties in the subset DP go
// to the smallest vertex, and bags that are contained in a neighbouring bag
// are merged afterwards.
inline TreeDecomposition tree_decomposition(const LabelledPattern& p) {
    int k = p.k;
    if (k < 1) throw std::invalid_argument("tree_decomposition: empty pattern");
    if (k > 12) throw cap_exceeded("tree_decomposition: pattern size over cap (k <= 12)");

    std::vector<u32> adj(k, 0);
    for (auto [a, b] : p.edges) {
        adj[a - 1] |= u32(1) << (b - 1);
        adj[b - 1] |= u32(1) << (a - 1);
    }

    u32 full = (k == 32) ? ~u32(0) : ((u32(1) << k) - 1);
    std::vector<int> best(full + 1, 0), choice(full + 1, -1);
    for (u32 s = 1; s <= full; ++s) {
        int width = k + 1;
        int pick = -1;
        u32 rest = s;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            u32 without = s & ~(u32(1) << v);
            int q = std::popcount(detail::elimination_neighbors(adj, v, without));
            int w = std::max(best[without], q);
            if (w < width) {
                width = w;
                pick = v;
            }
        }
        best[s] = width;
        choice[s] = pick;
    }

    // unravel the elimination order (choice of the full set is eliminated last)
    std::vector<int> order(k);
    u32 s = full;
    for (int i = k - 1; i >= 0; --i) {
        order[i] = choice[s];
        s &= ~(u32(1) << order[i]);
    }

    // bag of order[i] = {order[i]} + its elimination neighbourhood; parent is
    // the earliest-eliminated member of that neighbourhood
    std::vector<int> position(k);
    for (int i = 0; i < k; ++i) position[order[i]] = i;
    std::vector<std::vector<int>> bags(k);
    std::vector<int> parent(k, -1);
    u32 earlier = 0;
    for (int i = 0; i < k; ++i) {
        int v = order[i];
        u32 q = detail::elimination_neighbors(adj, v, earlier);
        bags[i].push_back(v + 1);
        int parent_pos = k;
        u32 rest = q;
        while (rest) {
            int u = std::countr_zero(rest);
            rest &= rest - 1;
            bags[i].push_back(u + 1);
            parent_pos = std::min(parent_pos, position[u]);
        }
        std::sort(bags[i].begin(), bags[i].end());
        if (i < k - 1) parent[i] = (parent_pos < k) ? parent_pos : i + 1;
        earlier |= u32(1) << v;
    }

    // merge bags subsumed by their parent (and vice versa) for a leaner tree
    std::vector<int> alive(k, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < k; ++i) {
            if (!alive[i] || parent[i] < 0) continue;
            int pa = parent[i];
            while (!alive[pa]) pa = parent[pa];
            parent[i] = pa;
            bool child_in_parent =
                std::includes(bags[pa].begin(), bags[pa].end(), bags[i].begin(), bags[i].end());
            bool parent_in_child =
                std::includes(bags[i].begin(), bags[i].end(), bags[pa].begin(), bags[pa].end());
            if (child_in_parent) {
                alive[i] = 0;
                for (int j = 0; j < k; ++j)
                    if (alive[j] && parent[j] == i) parent[j] = pa;
                changed = true;
            } else if (parent_in_child) {
                bags[pa] = bags[i];
                alive[i] = 0;
                for (int j = 0; j < k; ++j)
                    if (alive[j] && parent[j] == i) parent[j] = pa;
                changed = true;
            }
        }
    }

    TreeDecomposition td;
    std::vector<int> rename(k, -1);
    for (int i = 0; i < k; ++i)
        if (alive[i]) {
            rename[i] = td.node_count();
            td.bags.push_back(bags[i]);
            td.parent.push_back(-2); // fill below
        }
    for (int i = 0; i < k; ++i) {
        if (!alive[i]) continue;
        int pa = parent[i];
        while (pa >= 0 && !alive[pa]) pa = parent[pa];
        td.parent[rename[i]] = pa < 0 ? -1 : rename[pa];
    }
    return td;
}

// The three decomposition conditions: bags cover all labels, every pattern
// edge fits in some bag, and each label's bags form a connected subtree.
// Raw decompositions additionally require non-empty bags.
inline bool validate(const LabelledPattern& p, const TreeDecomposition& td) {
    int b = td.node_count();
    if (b == 0 || static_cast<int>(td.parent.size()) != b) return false;
    int roots = 0;
    for (int i = 0; i < b; ++i) {
        if (td.parent[i] == -1) ++roots;
        else if (td.parent[i] < 0 || td.parent[i] >= b || td.parent[i] == i) return false;
        if (td.bags[i].empty()) return false;
        for (int v : td.bags[i])
            if (v < 1 || v > p.k) return false;
        if (!std::is_sorted(td.bags[i].begin(), td.bags[i].end())) return false;
    }
    if (roots != 1) return false;
    // acyclic parent links
    for (int i = 0; i < b; ++i) {
        int steps = 0, cur = i;
        while (cur != -1 && steps++ <= b) cur = td.parent[cur];
        if (steps > b) return false;
    }

    std::vector<bool> covered(p.k + 1, false);
    for (const auto& bag : td.bags)
        for (int v : bag) covered[v] = true;
    for (int v = 1; v <= p.k; ++v)
        if (!covered[v]) return false;

    for (auto [a, bb] : p.edges) {
        bool found = false;
        for (const auto& bag : td.bags)
            if (std::binary_search(bag.begin(), bag.end(), a) &&
                std::binary_search(bag.begin(), bag.end(), bb)) {
                found = true;
                break;
            }
        if (!found) return false;
    }

    for (int v = 1; v <= p.k; ++v) {
        // nodes containing v must form one component of the tree
        std::vector<int> holds;
        for (int i = 0; i < b; ++i)
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) holds.push_back(i);
        if (holds.empty()) return false;
        // a node set in a tree is connected iff every member except one has
        // its nearest holding ancestor inside the set via the direct parent
        int top_count = 0;
        for (int i : holds) {
            int pa = td.parent[i];
            bool parent_holds =
                pa != -1 && std::binary_search(td.bags[pa].begin(), td.bags[pa].end(), v);
            if (!parent_holds) ++top_count;
        }
        if (top_count != 1) return false;
    }
    return true;
}

inline NiceDecomposition make_nice(const TreeDecomposition& td) {
    NiceDecomposition nd;
    int b = td.node_count();
    std::vector<std::vector<int>> children(b);
    int root = -1;
    for (int i = 0; i < b; ++i) {
        if (td.parent[i] == -1) root = i;
        else children[td.parent[i]].push_back(i);
    }
    if (root < 0) throw std::invalid_argument("make_nice: decomposition has no root");

    auto add = [&](NiceNode n) {
        nd.nodes.push_back(std::move(n));
        return static_cast<int>(nd.nodes.size()) - 1;
    };
    auto chain_to = [&](int node, std::vector<int> from, const std::vector<int>& to) {
        std::vector<int> drop, take;
        std::set_difference(from.begin(), from.end(), to.begin(), to.end(),
                            std::back_inserter(drop));
        std::set_difference(to.begin(), to.end(), from.begin(), from.end(),
                            std::back_inserter(take));
        for (auto it = drop.rbegin(); it != drop.rend(); ++it) {
            from.erase(std::find(from.begin(), from.end(), *it));
            node = add({NiceNodeType::Forget, *it, node, -1, from});
        }
        for (int v : take) {
            from.insert(std::upper_bound(from.begin(), from.end(), v), v);
            node = add({NiceNodeType::Introduce, v, node, -1, from});
        }
        return node;
    };

    // iterative post-order over the raw tree
    struct Frame {
        int node;
        std::size_t next_child = 0;
        std::vector<int> done; // nice roots of converted children
    };
    std::vector<Frame> stack{Frame{root, 0, {}}};
    int converted_root = -1;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_child < children[f.node].size()) {
            stack.push_back(Frame{children[f.node][f.next_child++], 0, {}});
            continue;
        }
        const auto& bag = td.bags[f.node];
        int result;
        if (f.done.empty()) {
            result = chain_to(add({NiceNodeType::Leaf, 0, -1, -1, {}}), {}, bag);
        } else {
            std::vector<int> lifted;
            for (std::size_t c = 0; c < f.done.size(); ++c) {
                int child_idx = children[f.node][c];
                lifted.push_back(chain_to(f.done[c], td.bags[child_idx], bag));
            }
            result = lifted[0];
            for (std::size_t c = 1; c < lifted.size(); ++c)
                result = add({NiceNodeType::Join, 0, result, lifted[c], bag});
        }
        int node = f.node;
        stack.pop_back();
        if (stack.empty()) {
            converted_root = chain_to(result, td.bags[node], {});
        } else {
            stack.back().done.push_back(result);
        }
    }
    (void)converted_root;
    return nd;
}

// Structural and decomposition validity of a nice decomposition. Empty bags
// are allowed (the root and leaves use them); the three conditions are the
// same as for raw decompositions.
inline bool validate(const LabelledPattern& p, const NiceDecomposition& nd) {
    int b = static_cast<int>(nd.nodes.size());
    if (b == 0) return false;
    std::vector<bool> used(b, false);
    for (int i = 0; i < b; ++i) {
        const NiceNode& n = nd.nodes[i];
        if (!std::is_sorted(n.bag.begin(), n.bag.end())) return false;
        for (int v : n.bag)
            if (v < 1 || v > p.k) return false;
        auto check_child = [&](int c) {
            if (c < 0 || c >= i || used[c]) return false;
            used[c] = true;
            return true;
        };
        switch (n.type) {
        case NiceNodeType::Leaf:
            if (!n.bag.empty() || n.child != -1 || n.child2 != -1) return false;
            break;
        case NiceNodeType::Introduce: {
            if (!check_child(n.child) || n.child2 != -1) return false;
            auto expect = nd.nodes[n.child].bag;
            expect.insert(std::upper_bound(expect.begin(), expect.end(), n.vertex), n.vertex);
            if (expect != n.bag) return false;
            break;
        }
        case NiceNodeType::Forget: {
            if (!check_child(n.child) || n.child2 != -1) return false;
            auto expect = nd.nodes[n.child].bag;
            auto it = std::find(expect.begin(), expect.end(), n.vertex);
            if (it == expect.end()) return false;
            expect.erase(it);
            if (expect != n.bag) return false;
            break;
        }
        case NiceNodeType::Join:
            if (!check_child(n.child) || !check_child(n.child2)) return false;
            if (nd.nodes[n.child].bag != n.bag || nd.nodes[n.child2].bag != n.bag) return false;
            break;
        }
    }
    if (!nd.nodes.back().bag.empty()) return false; // root must have forgotten everything

    // translate to a plain decomposition (skipping the non-empty-bag rule) and
    // reuse the three-condition checks
    std::vector<bool> covered(p.k + 1, false);
    for (const auto& n : nd.nodes)
        for (int v : n.bag) covered[v] = true;
    for (int v = 1; v <= p.k; ++v)
        if (!covered[v]) return false;
    for (auto [a, bb] : p.edges) {
        bool found = false;
        for (const auto& n : nd.nodes)
            if (std::binary_search(n.bag.begin(), n.bag.end(), a) &&
                std::binary_search(n.bag.begin(), n.bag.end(), bb)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    for (int v = 1; v <= p.k; ++v) {
        int top_count = 0;
        for (int i = 0; i < b; ++i) {
            const NiceNode& n = nd.nodes[i];
            if (!std::binary_search(n.bag.begin(), n.bag.end(), v)) continue;
            // parent = unique node having i as child
            bool parent_holds = false;
            for (int j = i + 1; j < b; ++j)
                if (nd.nodes[j].child == i || nd.nodes[j].child2 == i) {
                    parent_holds = std::binary_search(nd.nodes[j].bag.begin(),
                                                      nd.nodes[j].bag.end(), v);
                    break;
                }
            if (!parent_holds) ++top_count;
        }
        if (top_count != 1) return false;
    }
    return true;
}

} // namespace subcount
