#include "subcount/pattern.hpp"
#include "subcount/property.hpp"
#include "subcount/treewidth.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace subcount;

namespace {

// connectivity via the tree characterization: some labelled tree is contained
bool connected_via_trees(const LabelledPattern& p) {
    for (const auto& t : prufer_trees(p.k))
        if (pattern_subset(t, p)) return true;
    return false;
}

u64 pow_u64(u64 b, int e) {
    u64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

TEST_CASE("labelled pattern basics") {
    auto tri = LabelledPattern::from_edges(3, {{1, 2}, {1, 3}, {2, 3}});
    REQUIRE(tri.adjacent(2, 1));
    REQUIRE(tri.edge_mask() == 0b111);
    REQUIRE(LabelledPattern::from_mask(3, 0b111) == tri);
    REQUIRE_THROWS_AS(LabelledPattern::from_edges(2, {{1, 1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(LabelledPattern::from_edges(2, {{1, 3}}), std::invalid_argument);

    SECTION("mask round trip over all k=4 patterns") {
        for (u64 m = 0; m < 64; ++m)
            REQUIRE(LabelledPattern::from_mask(4, m).edge_mask() == m);
    }
    SECTION("relabelling preserves edge count and composes") {
        auto p = LabelledPattern::from_edges(4, {{1, 2}, {2, 3}});
        auto q = p.relabel({4, 3, 2, 1});
        REQUIRE(q == LabelledPattern::from_edges(4, {{3, 4}, {2, 3}}));
    }
}

TEST_CASE("phi_connected") {
    REQUIRE(phi_connected(LabelledPattern::from_edges(3, {{1, 2}, {2, 3}})) == true);
    REQUIRE(phi_connected(LabelledPattern::from_edges(2, {})) == false);
    REQUIRE(phi_connected(LabelledPattern::from_mask(4, 0b111111)) == true); // K4
    REQUIRE(phi_connected(LabelledPattern::from_edges(1, {})) == true);

    SECTION("equivalent to the labelled-tree characterization, k <= 5") {
        for (int k = 1; k <= 5; ++k)
            for (u64 m = 0; m < (u64(1) << LabelledPattern::slot_count(k)); ++m) {
                auto p = LabelledPattern::from_mask(k, m);
                REQUIRE(phi_connected(p) == connected_via_trees(p));
            }
    }
}

TEST_CASE("pattern_subset") {
    auto edge = LabelledPattern::from_edges(3, {{1, 2}});
    auto tri = LabelledPattern::from_mask(3, 0b111);
    auto other = LabelledPattern::from_edges(3, {{2, 3}});
    REQUIRE(pattern_subset(edge, tri));
    REQUIRE_FALSE(pattern_subset(edge, other));
    REQUIRE_THROWS_AS(pattern_subset(edge, LabelledPattern::from_edges(4, {})), std::invalid_argument);
    for (u64 m = 0; m < 64; ++m) {
        auto p = LabelledPattern::from_mask(4, m);
        REQUIRE(pattern_subset(p, p));
    }
}

TEST_CASE("prufer trees") {
    REQUIRE(prufer_trees(1).size() == 1);
    REQUIRE(prufer_trees(2).size() == 1);
    SECTION("k^{k-2} trees, all connected and acyclic, no duplicates") {
        for (int k = 2; k <= 7; ++k) {
            auto trees = prufer_trees(k);
            REQUIRE(trees.size() == pow_u64(k, k - 2));
            std::set<u64> masks;
            for (const auto& t : trees) {
                REQUIRE(t.edge_count() == k - 1);
                REQUIRE(phi_connected(t));
                masks.insert(t.edge_mask());
            }
            REQUIRE(masks.size() == trees.size());
        }
    }
}

TEST_CASE("minimal patterns") {
    SECTION("connectivity k=3: the three labelled paths") {
        auto pats = minimal_patterns(connected_property(), 3);
        REQUIRE(pats.size() == 3);
        for (const auto& p : pats) REQUIRE(p.edge_count() == 2);
    }
    SECTION("connectivity k=4 by exhaustive filtering matches Cayley") {
        Property conn = connected_property();
        conn.minimal_enumerator = nullptr; // force the exhaustive path
        auto pats = minimal_patterns(conn, 4);
        REQUIRE(pats.size() == 16);
        auto trees = prufer_trees(4);
        std::set<u64> a, b;
        for (const auto& p : pats) a.insert(p.edge_mask());
        for (const auto& t : trees) b.insert(t.edge_mask());
        REQUIRE(a == b);
    }
    SECTION("hamiltonicity k=4: the three labelled 4-cycles") {
        auto pats = minimal_patterns(hamiltonian_property(), 4);
        REQUIRE(pats.size() == 3);
        for (const auto& p : pats) {
            REQUIRE(p.edge_count() == 4);
            REQUIRE(detail::pattern_hamiltonian(p));
        }
    }
    SECTION("no returned pattern strictly contains another") {
        for (const Property& phi :
             {connected_property(), hamiltonian_property(), non_bipartite_property()}) {
            for (int k = 3; k <= 5; ++k) {
                auto pats = minimal_patterns(phi, k);
                for (const auto& p : pats)
                    for (const auto& q : pats)
                        if (!(p == q)) REQUIRE_FALSE(pattern_subset(p, q));
            }
        }
    }
    SECTION("direct enumerators agree with exhaustive filtering") {
        for (Property phi : {connected_property(), non_bipartite_property()}) {
            for (int k = 2; k <= 5; ++k) {
                auto direct = minimal_patterns(phi, k);
                Property ex = phi;
                ex.minimal_enumerator = nullptr;
                auto brute = minimal_patterns(ex, k);
                REQUIRE(direct == brute);
            }
        }
    }
    SECTION("reconstruction: phi(P) iff some minimal pattern is contained, k <= 5") {
        for (const Property& phi :
             {connected_property(), hamiltonian_property(), non_bipartite_property()}) {
            for (int k = 2; k <= 5; ++k) {
                auto pats = minimal_patterns(phi, k);
                for (u64 m = 0; m < (u64(1) << LabelledPattern::slot_count(k)); ++m) {
                    auto p = LabelledPattern::from_mask(k, m);
                    bool via_minimal = false;
                    for (const auto& q : pats)
                        if (pattern_subset(q, p)) {
                            via_minimal = true;
                            break;
                        }
                    REQUIRE(phi.predicate(p) == via_minimal);
                }
            }
        }
    }
    SECTION("exhaustive cap is enforced") {
        Property conn = connected_property();
        conn.minimal_enumerator = nullptr;
        REQUIRE_THROWS_AS(minimal_patterns(conn, 7), cap_exceeded);
    }
}

TEST_CASE("monotonicity checking") {
    for (int k = 2; k <= 4; ++k) {
        REQUIRE(check_monotone(connected_property(), k));
        REQUIRE(check_monotone(hamiltonian_property(), k));
        REQUIRE(check_monotone(non_bipartite_property(), k));
    }
    SECTION("edgeless-ness is not monotone") {
        Property edgeless;
        edgeless.name = "edgeless";
        edgeless.predicate = [](const LabelledPattern& p) { return p.edge_count() == 0; };
        REQUIRE_FALSE(check_monotone(edgeless, 2));
    }
}

TEST_CASE("k=1 conventions") {
    auto v1 = LabelledPattern::from_edges(1, {});
    REQUIRE(connected_property().predicate(v1));
    REQUIRE_FALSE(hamiltonian_property().predicate(v1));
    REQUIRE_FALSE(non_bipartite_property().predicate(v1));
}

TEST_CASE("minimal patterns have the declared treewidth bounds") {
    struct Row {
        Property phi;
        int bound;
    };
    for (auto& [phi, bound] : {Row{connected_property(), 1}, Row{hamiltonian_property(), 2},
                               Row{non_bipartite_property(), 2}}) {
        REQUIRE(phi.treewidth_bound == bound);
        for (int k = 3; k <= 5; ++k)
            for (const auto& p : minimal_patterns(phi, k)) {
                auto td = tree_decomposition(p);
                REQUIRE(td.width() <= bound);
            }
    }
}

TEST_CASE("custom pattern files") {
    SECTION("a valid antichain loads and reconstructs the property") {
        std::istringstream in("3 2\n1-2,2-3\n1-3\n");
        Property phi = property_from_pattern_file(in);
        REQUIRE(phi.monotone);
        auto pats = minimal_patterns(phi, 3);
        REQUIRE(pats.size() == 2);
        REQUIRE(phi.predicate(LabelledPattern::from_edges(3, {{1, 3}})));
        REQUIRE_FALSE(phi.predicate(LabelledPattern::from_edges(3, {{2, 3}})));
        REQUIRE(check_monotone(phi, 3));
    }
    SECTION("edgeless pattern via dash") {
        std::istringstream in("2 1\n-\n");
        Property phi = property_from_pattern_file(in);
        REQUIRE(phi.predicate(LabelledPattern::from_edges(2, {})));
    }
    SECTION("non-antichain is rejected") {
        std::istringstream in("3 2\n1-2\n1-2,2-3\n");
        REQUIRE_THROWS_AS(property_from_pattern_file(in), parse_error);
    }
    SECTION("malformed edge token") {
        std::istringstream in("3 1\n1:2\n");
        REQUIRE_THROWS_AS(property_from_pattern_file(in), parse_error);
    }
}
