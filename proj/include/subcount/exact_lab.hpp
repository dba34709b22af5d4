#pragma once

// Brute-force oracles for every counting problem in scope, and the
// executable side of the hardness machinery: connectivity partitions P(U),
// gadget graphs, the linear system A*N = z over the partition lattice,
// inclusion-exclusion over color classes, and the clique blow-up — composed
// into the full Turing-reduction chain so each identity can be checked
// numerically.

#include "subcount/common.hpp"
#include "subcount/graph.hpp"
#include "subcount/partition_lattice.hpp"
#include "subcount/pattern.hpp"
#include "subcount/property.hpp"

#include <bit>
#include <functional>
#include <string>
#include <vector>

namespace subcount {

struct BruteCaps {
    int max_n = 20;
    int max_k = 6;
};

namespace detail {

inline void check_caps(int n, int k, const BruteCaps& caps, const char* what) {
    if (k < 0 || n < 0 || n > caps.max_n || k > caps.max_k)
        throw cap_exceeded(std::string(what) + ": instance exceeds caps (n <= " +
                           std::to_string(caps.max_n) + ", k <= " + std::to_string(caps.max_k) +
                           ")");
}

template <typename Fn>
void for_each_k_subset(int n, int k, Fn&& fn) {
    if (k > n || k < 0) return;
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    for (;;) {
        fn(const_cast<const std::vector<int>&>(comb));
        int pos = k - 1;
        while (pos >= 0 && comb[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++comb[pos];
        for (int i = pos + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
    }
}

// enumerate colorful subsets (one vertex per color 1..k) as vertex vectors
template <typename Fn>
void for_each_colorful(const Graph& g, const Coloring& c, int k, Fn&& fn) {
    std::vector<std::vector<int>> classes(k);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (c(v) >= 1 && c(v) <= k) classes[c(v) - 1].push_back(v);
    for (const auto& cls : classes)
        if (cls.empty()) return;
    std::vector<int> pick(k);
    std::vector<std::size_t> idx(k, 0);
    int depth = 0;
    while (depth >= 0) {
        if (depth == k) {
            fn(const_cast<const std::vector<int>&>(pick));
            --depth;
            continue;
        }
        if (idx[depth] == classes[depth].size()) {
            idx[depth] = 0;
            --depth;
            continue;
        }
        pick[depth] = classes[depth][idx[depth]++];
        ++depth;
    }
}

} // namespace detail

// --- brute-force counters ----------------------------------------------------

// Unlabelled count: k-subsets whose induced subgraph satisfies phi. Requires
// a symmetric property (the subset alone does not determine a labelling).
inline BigInt brute_count_unlabelled(const Graph& g, int k, const Property& phi,
                                     const BruteCaps& caps = {}) {
    if (k < 1) throw std::invalid_argument("brute_count: k must be positive");
    if (!phi.symmetric)
        throw std::invalid_argument("unlabelled counting needs a symmetric property");
    detail::check_caps(g.vertex_count(), k, caps, "brute_count_unlabelled");
    BigInt count = 0;
    detail::for_each_k_subset(g.vertex_count(), k, [&](const std::vector<int>& u_set) {
        if (phi.predicate(pattern_of_tuple(g, u_set))) ++count;
    });
    return count;
}

// Labelled count: tuples in V^{k-underline} whose induced labelled graph
// satisfies phi; symmetric properties shortcut to k! times the subset count.
inline BigInt brute_count_labelled(const Graph& g, int k, const Property& phi,
                                   const BruteCaps& caps = {}) {
    if (k < 1) throw std::invalid_argument("brute_count: k must be positive");
    detail::check_caps(g.vertex_count(), k, caps, "brute_count_labelled");
    if (phi.symmetric) return brute_count_unlabelled(g, k, phi, caps) * factorial(k);
    BigInt count = 0;
    detail::for_each_k_subset(g.vertex_count(), k, [&](const std::vector<int>& u_set) {
        std::vector<int> tuple = u_set;
        std::sort(tuple.begin(), tuple.end());
        do {
            if (phi.predicate(pattern_of_tuple(g, tuple))) ++count;
        } while (std::next_permutation(tuple.begin(), tuple.end()));
    });
    return count;
}

// Graph-motif count: k-subsets inducing a connected subgraph whose color
// multiset is exactly M.
inline BigInt brute_count_motif(const Graph& g, const Coloring& c, const ColorMultiset& m,
                                const BruteCaps& caps = {}) {
    int k = m.size();
    if (k < 1) throw std::invalid_argument("brute_count_motif: motif must be nonempty");
    detail::check_caps(g.vertex_count(), k, caps, "brute_count_motif");
    BigInt count = 0;
    detail::for_each_k_subset(g.vertex_count(), k, [&](const std::vector<int>& u_set) {
        if (induced_connected(g, u_set) && ColorMultiset::of(c, u_set) == m) ++count;
    });
    return count;
}

// N_k: connected induced k-subsets, no coloring involved.
inline BigInt brute_connected_count(const Graph& g, int k, const BruteCaps& caps = {}) {
    detail::check_caps(g.vertex_count(), k, caps, "brute_connected_count");
    BigInt count = 0;
    detail::for_each_k_subset(g.vertex_count(), k, [&](const std::vector<int>& u_set) {
        if (induced_connected(g, u_set)) ++count;
    });
    return count;
}

inline BigInt brute_colorful_connected(const Graph& g, const Coloring& c, int k) {
    BigInt count = 0;
    detail::for_each_colorful(g, c, k, [&](const std::vector<int>& pick) {
        if (induced_connected(g, pick)) ++count;
    });
    return count;
}

inline BigInt brute_colorful_independent(const Graph& g, const Coloring& c, int k) {
    BigInt count = 0;
    detail::for_each_colorful(g, c, k, [&](const std::vector<int>& pick) {
        for (std::size_t i = 0; i < pick.size(); ++i)
            for (std::size_t j = i + 1; j < pick.size(); ++j)
                if (g.adjacent(pick[i], pick[j])) return;
        ++count;
    });
    return count;
}

inline BigInt brute_clique_count(const Graph& g, int k, const BruteCaps& caps = {}) {
    detail::check_caps(g.vertex_count(), k, caps, "brute_clique_count");
    BigInt count = 0;
    detail::for_each_k_subset(g.vertex_count(), k, [&](const std::vector<int>& u_set) {
        for (std::size_t i = 0; i < u_set.size(); ++i)
            for (std::size_t j = i + 1; j < u_set.size(); ++j)
                if (!g.adjacent(u_set[i], u_set[j])) return;
        ++count;
    });
    return count;
}

// --- the reduction machinery --------------------------------------------------

// P(U): colors i and j share a block iff their vertices in the colorful set
// U sit in the same connected component of G[U].
inline Partition connectivity_partition(const Graph& g, const Coloring& c,
                                        const std::vector<int>& u_set) {
    int k = static_cast<int>(u_set.size());
    std::vector<int> vertex_of_color(k + 1, -1);
    for (int v : u_set) {
        int col = c(v);
        if (col < 1 || col > k || vertex_of_color[col] != -1)
            throw std::invalid_argument("connectivity_partition: set is not colorful over 1..k");
        vertex_of_color[col] = v;
    }
    // component ids inside G[U]
    std::vector<int> comp(g.vertex_count(), -1);
    int comps = 0;
    for (int v : u_set) {
        if (comp[v] != -1) continue;
        std::vector<int> stack{v};
        comp[v] = comps;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(x))
                if (comp[w] == -1 &&
                    std::find(u_set.begin(), u_set.end(), w) != u_set.end()) {
                    comp[w] = comps;
                    stack.push_back(w);
                }
        }
        ++comps;
    }
    std::vector<int> ids(k);
    for (int col = 1; col <= k; ++col) ids[col - 1] = comp[vertex_of_color[col]];
    return Partition::from_block_ids(k, ids);
}

// G_i: one fresh vertex per block X_j of the partition, colored k+j and made
// adjacent to every original vertex whose color lies in X_j.
inline std::pair<Graph, Coloring> gadget_graph(const Graph& g, const Coloring& c,
                                               const Partition& p) {
    int n = g.vertex_count();
    int k = p.k;
    int ell = p.block_count();
    std::vector<std::pair<int, int>> edges = g.edges();
    std::vector<int> colors = c.color;
    colors.resize(n + ell);
    for (int j = 0; j < ell; ++j) {
        int xj = n + j;
        colors[xj] = k + j + 1;
        for (int v = 0; v < n; ++v)
            if (std::binary_search(p.blocks[j].begin(), p.blocks[j].end(), c(v)))
                edges.emplace_back(v, xj);
    }
    return {Graph::from_edges(n + ell, std::move(edges)), Coloring(std::move(colors))};
}

// Complement-of-G crossed with K_k: every vertex becomes a rainbow k-clique,
// two cliques fully joined iff the originals are adjacent in the complement.
// Downstream contract: #k-cliques of G = (colorful independent sets)/k!.
inline std::pair<Graph, Coloring> clique_blowup(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("clique_blowup: k must be positive");
    int n = g.vertex_count();
    Graph comp = complement(g);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> colors(n * k);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < k; ++i) {
            colors[v * k + i] = i + 1;
            for (int j = i + 1; j < k; ++j) edges.emplace_back(v * k + i, v * k + j);
        }
    for (auto [u, v] : comp.edges())
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) edges.emplace_back(u * k + i, v * k + j);
    return {Graph::from_edges(n * k, std::move(edges)), Coloring(std::move(colors))};
}

using MulticolourConnectedOracle =
    std::function<BigInt(const Graph&, const Coloring&, int)>;
using PlainConnectedCounter = std::function<BigInt(const Graph&, int)>;

// Colorful connected count by inclusion-exclusion over color classes:
// sum over nonempty C of (-1)^{k-|C|} N_k(G_C), N_k uncolored.
inline BigInt multicolour_connected_via_ie(const Graph& g, const Coloring& c, int k,
                                           const PlainConnectedCounter& plain) {
    if (k < 1 || k > 16) throw cap_exceeded("multicolour_connected_via_ie: k over cap");
    BigInt total = 0;
    for (u32 mask = 1; mask < (u32(1) << k); ++mask) {
        std::vector<int> keep;
        for (int v = 0; v < g.vertex_count(); ++v) {
            int col = c(v);
            if (col >= 1 && col <= k && ((mask >> (col - 1)) & 1)) keep.push_back(v);
        }
        BigInt term = plain(induced_subgraph(g, keep), k);
        total += (k - std::popcount(mask)) % 2 ? -term : term;
    }
    return total;
}

// Solve A*N = z where a_ij = f(P_i meet P_j) and z_i comes from one oracle
// call per gadget graph; returns N at the all-singleton partition, i.e. the
// number of colorful independent sets. Exact rational elimination; A is
// nonsingular because no mu(bottom, P) vanishes.
inline BigInt colorful_independent_sets_via_oracle(const Graph& g, const Coloring& c, int k,
                                                   const MulticolourConnectedOracle& oracle) {
    if (k < 1 || k > 6) throw cap_exceeded("colorful_independent_sets_via_oracle: k over cap");
    LatticeTable lt(k);
    std::size_t b = lt.size();
    IndicatorF f;

    std::vector<BigRat> z(b);
    for (std::size_t i = 0; i < b; ++i) {
        auto [gi, ci] = gadget_graph(g, c, lt[i]);
        z[i] = BigRat(oracle(gi, ci, k + lt[i].block_count()));
    }

    std::vector<std::vector<BigRat>> a(b, std::vector<BigRat>(b));
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j)
            a[i][j] = f(lt[lt.meet_index(i, j)]);

    // Gaussian elimination with the first nonzero pivot
    for (std::size_t col = 0; col < b; ++col) {
        std::size_t pivot = col;
        while (pivot < b && a[pivot][col] == 0) ++pivot;
        if (pivot == b) throw std::runtime_error("meet matrix singular; lattice machinery broken");
        std::swap(a[col], a[pivot]);
        std::swap(z[col], z[pivot]);
        for (std::size_t r = 0; r < b; ++r) {
            if (r == col || a[r][col] == 0) continue;
            BigRat factor = a[r][col] / a[col][col];
            for (std::size_t cc = col; cc < b; ++cc) a[r][cc] -= factor * a[col][cc];
            z[r] -= factor * z[col];
        }
    }
    BigRat n_top = z[lt.top_index()] / a[lt.top_index()][lt.top_index()];
    if (denominator(n_top) != 1 || n_top < 0)
        throw std::runtime_error("linear system produced a non-integral count; oracle faulty");
    return numerator(n_top);
}

// The whole reduction chain: #k-clique via blow-up, lattice inversion,
// inclusion-exclusion, and plain connected counting.
inline BigInt clique_count_via_reduction(const Graph& g, int k) {
    auto [blown, colors] = clique_blowup(g, k);
    BruteCaps inner{blown.vertex_count() + k, 2 * k};
    MulticolourConnectedOracle oracle = [&](const Graph& gi, const Coloring& ci, int kk) {
        return multicolour_connected_via_ie(gi, ci, kk, [&](const Graph& sub, int kkk) {
            return brute_connected_count(sub, kkk, inner);
        });
    };
    BigInt alpha = colorful_independent_sets_via_oracle(blown, colors, k, oracle);
    BigInt kfact = factorial(k);
    if (alpha % kfact != 0)
        throw std::runtime_error("blow-up count not divisible by k!; reduction broken");
    return alpha / kfact;
}

// --- identity suites ----------------------------------------------------------

struct IdentityCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Lattice laws, Mobius closed form vs recursion, determinant vs product.
// inject_fault flips one meet-matrix entry to prove the comparison can fail.
inline std::vector<IdentityCheck> verify_lattice_identities(int k_max, bool inject_fault = false) {
    std::vector<IdentityCheck> out;
    for (int k = 1; k <= k_max; ++k) {
        LatticeTable lt(k);
        std::size_t b = lt.size();

        bool laws = true;
        for (std::size_t i = 0; i < b && laws; ++i) {
            if (lt.meet_index(i, i) != i) laws = false; // idempotent
            for (std::size_t j = 0; j < b && laws; ++j) {
                if (lt.meet_index(i, j) != lt.meet_index(j, i)) laws = false; // commutative
                if (lt.less_equal(i, j) != (lt.meet_index(i, j) == i)) laws = false;
            }
        }
        for (std::size_t i = 0; i < b && laws && k <= 6; ++i)
            for (std::size_t j = 0; j < b && laws; ++j)
                for (std::size_t l = 0; l < b && laws; ++l)
                    if (lt.meet_index(lt.meet_index(i, j), l) !=
                        lt.meet_index(i, lt.meet_index(j, l)))
                        laws = false; // associative
        out.push_back({"lattice-laws k=" + std::to_string(k), laws, ""});

        auto recursive = mobius_bottom_recursive(lt);
        bool mob = true;
        for (std::size_t i = 0; i < b; ++i)
            if (recursive[i] != lt.mobius(i)) mob = false;
        out.push_back({"mobius closed-form vs recursive k=" + std::to_string(k), mob, ""});

        if (k <= 6) {
            BigInt det = meet_matrix_det(k);
            if (inject_fault) {
                // negative control: perturb one entry and recompute
                IndicatorF f;
                std::vector<std::vector<BigInt>> a(b, std::vector<BigInt>(b));
                for (std::size_t i = 0; i < b; ++i)
                    for (std::size_t j = 0; j < b; ++j)
                        a[i][j] = f(lt[lt.meet_index(i, j)]);
                if (b > 1) a[0][b - 1] = 1 - a[0][b - 1];
                det = detail::bareiss_determinant(std::move(a));
            }
            BigInt product = 1;
            for (std::size_t i = 0; i < b; ++i) product *= lt.mobius(i);
            bool ok = det == product && det != 0;
            out.push_back({"det(meet matrix) = product of mobius k=" + std::to_string(k), ok,
                           "det=" + det.str() + " product=" + product.str()});
        }
    }
    return out;
}

// A*N = z checked both ways: N classified by brute force over colorful sets,
// z evaluated through the gadget graphs.
inline std::vector<IdentityCheck> verify_linear_system(int instances, u64 seed) {
    std::vector<IdentityCheck> out;
    Rng rng(seed);
    for (int inst = 0; inst < instances; ++inst) {
        int k = 2 + static_cast<int>(rng.below(2)); // 2..3
        int n = k + 2 + static_cast<int>(rng.below(5));
        Graph g = random_graph(n, 0.2 + 0.15 * static_cast<double>(rng.below(4)), rng.next());
        Coloring c = random_coloring(n, k, rng.next());
        LatticeTable lt(k);
        std::size_t b = lt.size();
        IndicatorF f;

        std::vector<BigInt> n_vec(b, 0);
        detail::for_each_colorful(g, c, k, [&](const std::vector<int>& pick) {
            n_vec[lt.index_of(connectivity_partition(g, c, pick))] += 1;
        });
        bool ok = true;
        for (std::size_t i = 0; i < b && ok; ++i) {
            BigInt lhs = 0;
            for (std::size_t j = 0; j < b; ++j)
                if (f(lt[lt.meet_index(i, j)])) lhs += n_vec[j];
            auto [gi, ci] = gadget_graph(g, c, lt[i]);
            BigInt rhs = brute_colorful_connected(gi, ci, k + lt[i].block_count());
            if (lhs != rhs) ok = false;
        }
        out.push_back({"A*N = z instance " + std::to_string(inst) + " (n=" + std::to_string(n) +
                           ", k=" + std::to_string(k) + ")",
                       ok, ""});
    }
    return out;
}

// Claim 1: the gadget graph G_i[W] is connected exactly when
// f(P(U) meet P_i) = 1, checked over every colorful W.
inline std::vector<IdentityCheck> verify_gadget_claim(int instances, u64 seed) {
    std::vector<IdentityCheck> out;
    Rng rng(seed);
    IndicatorF f;
    for (int inst = 0; inst < instances; ++inst) {
        int k = 2 + static_cast<int>(rng.below(2));
        int n = k + 2 + static_cast<int>(rng.below(4));
        Graph g = random_graph(n, 0.3, rng.next());
        Coloring c = random_coloring(n, k, rng.next());
        LatticeTable lt(k);
        bool ok = true;
        for (std::size_t i = 0; i < lt.size() && ok; ++i) {
            auto [gi, ci] = gadget_graph(g, c, lt[i]);
            detail::for_each_colorful(gi, ci, k + lt[i].block_count(),
                                      [&](const std::vector<int>& w) {
                std::vector<int> u_set;
                for (int v : w)
                    if (v < n) u_set.push_back(v);
                if (static_cast<int>(u_set.size()) != k) return;
                bool lhs = induced_connected(gi, w);
                bool rhs = f(meet(connectivity_partition(g, c, u_set), lt[i])) == 1;
                if (lhs != rhs) ok = false;
            });
        }
        out.push_back({"gadget claim instance " + std::to_string(inst), ok, ""});
    }
    return out;
}

// IE over color classes against direct colorful connected counting.
inline std::vector<IdentityCheck> verify_ie_identity(int instances, u64 seed) {
    std::vector<IdentityCheck> out;
    Rng rng(seed);
    for (int inst = 0; inst < instances; ++inst) {
        int k = 2 + static_cast<int>(rng.below(3));
        int n = k + 2 + static_cast<int>(rng.below(6));
        Graph g = random_graph(n, 0.35, rng.next());
        Coloring c = random_coloring(n, k, rng.next());
        BruteCaps caps{n, k};
        BigInt via_ie = multicolour_connected_via_ie(
            g, c, k, [&](const Graph& sub, int kk) { return brute_connected_count(sub, kk, caps); });
        BigInt direct = brute_colorful_connected(g, c, k);
        out.push_back({"inclusion-exclusion instance " + std::to_string(inst),
                       via_ie == direct,
                       "ie=" + via_ie.str() + " direct=" + direct.str()});
    }
    return out;
}

// End to end: blow-up, gadget inversion, IE, plain counting vs brute cliques.
inline std::vector<IdentityCheck> verify_reduction_chain(int instances, u64 seed) {
    std::vector<IdentityCheck> out;
    Rng rng(seed);
    for (int inst = 0; inst < instances; ++inst) {
        int k = 2 + static_cast<int>(rng.below(2)); // 2..3
        int n = 4 + static_cast<int>(rng.below(5)); // 4..8
        Graph g = random_graph(n, 0.3 + 0.15 * static_cast<double>(rng.below(3)), rng.next());
        BigInt via_chain = clique_count_via_reduction(g, k);
        BigInt direct = brute_clique_count(g, k, BruteCaps{n, k});
        out.push_back({"reduction chain instance " + std::to_string(inst) + " (n=" +
                           std::to_string(n) + ", k=" + std::to_string(k) + ")",
                       via_chain == direct,
                       "chain=" + via_chain.str() + " brute=" + direct.str()});
    }
    return out;
}

} // namespace subcount
