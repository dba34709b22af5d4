#include "subcount/treewidth.hpp"
#include "subcount/json_io.hpp"
#include "subcount/pattern.hpp"
#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace subcount;
using namespace subcount::test;

namespace {

LabelledPattern random_pattern(int k, double p, u64 seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b)
            if (rng.bernoulli(p)) edges.emplace_back(a, b);
    return LabelledPattern::from_edges(k, std::move(edges));
}

LabelledPattern cycle_pattern(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= k; ++i) edges.emplace_back(i, i % k + 1);
    return LabelledPattern::from_edges(k, std::move(edges));
}

} // namespace

TEST_CASE("exact treewidth on known patterns") {
    for (const auto& t : prufer_trees(5)) REQUIRE(tree_decomposition(t).width() == 1);
    REQUIRE(tree_decomposition(cycle_pattern(5)).width() == 2);
    REQUIRE(tree_decomposition(LabelledPattern::from_mask(4, 0b111111)).width() == 3);
    REQUIRE(tree_decomposition(LabelledPattern::from_edges(1, {})).width() == 0);
    REQUIRE(tree_decomposition(LabelledPattern::from_edges(4, {})).width() == 0);
    REQUIRE_THROWS_AS(tree_decomposition(LabelledPattern::from_edges(13, {})), cap_exceeded);
}

TEST_CASE("treewidth equals the exhaustive elimination-order minimum") {
    SECTION("every pattern with k <= 4") {
        for (int k = 1; k <= 4; ++k)
            for (u64 m = 0; m < (u64(1) << LabelledPattern::slot_count(k)); ++m) {
                auto p = LabelledPattern::from_mask(k, m);
                REQUIRE(tree_decomposition(p).width() == exhaustive_treewidth(p));
            }
    }
    SECTION("random patterns at k = 5, 6, 7") {
        for (int k = 5; k <= 7; ++k)
            for (u64 seed = 0; seed < 40; ++seed) {
                auto p = random_pattern(k, 0.2 + 0.1 * (seed % 6), seed);
                REQUIRE(tree_decomposition(p).width() == exhaustive_treewidth(p));
            }
    }
}

TEST_CASE("validate catches broken decompositions") {
    auto p = LabelledPattern::from_edges(3, {{1, 2}, {2, 3}});
    SECTION("single bag with all vertices is valid, width k-1") {
        TreeDecomposition td;
        td.parent = {-1};
        td.bags = {{1, 2, 3}};
        REQUIRE(validate(p, td));
        REQUIRE(td.width() == 2);
    }
    SECTION("a decomposition missing an edge's bag is invalid") {
        TreeDecomposition td;
        td.parent = {-1, 0};
        td.bags = {{1, 2}, {3}};
        REQUIRE_FALSE(validate(p, td)); // edge {2,3} fits in no bag
    }
    SECTION("disconnected occurrence set is invalid") {
        TreeDecomposition td;
        td.parent = {-1, 0, 1};
        td.bags = {{1, 2}, {2, 3}, {1, 3}};
        REQUIRE_FALSE(validate(p, td)); // label 1 appears in bags 0 and 2 only
    }
    SECTION("empty bag is invalid in a raw decomposition") {
        TreeDecomposition td;
        td.parent = {-1, 0};
        td.bags = {{1, 2, 3}, {}};
        REQUIRE_FALSE(validate(p, td));
    }
    SECTION("uncovered vertex is invalid") {
        TreeDecomposition td;
        td.parent = {-1};
        td.bags = {{1, 2}};
        REQUIRE_FALSE(validate(p, td));
    }
}

TEST_CASE("tree_decomposition outputs validate") {
    for (u64 seed = 0; seed < 100; ++seed) {
        int k = 2 + static_cast<int>(seed % 7);
        auto p = random_pattern(k, 0.35, seed * 31 + 1);
        auto td = tree_decomposition(p);
        REQUIRE(validate(p, td));
    }
}

TEST_CASE("nice decompositions") {
    SECTION("single-bag decomposition of an edge becomes a leaf/introduce chain") {
        auto p = LabelledPattern::from_edges(2, {{1, 2}});
        auto td = tree_decomposition(p);
        auto nd = make_nice(td);
        REQUIRE(nd.width() == 1);
        REQUIRE(validate(p, nd));
        REQUIRE(nd.nodes.front().type == NiceNodeType::Leaf);
        REQUIRE(nd.nodes.back().bag.empty());
    }
    SECTION("valid and width-preserving on random patterns") {
        for (u64 seed = 0; seed < 100; ++seed) {
            int k = 2 + static_cast<int>(seed % 7);
            auto p = random_pattern(k, 0.3, seed * 17 + 3);
            auto td = tree_decomposition(p);
            auto nd = make_nice(td);
            REQUIRE(validate(p, nd));
            REQUIRE(nd.width() == td.width());
        }
    }
    SECTION("node count stays linear in k for trees") {
        for (const auto& t : prufer_trees(6)) {
            auto nd = make_nice(tree_decomposition(t));
            REQUIRE(static_cast<int>(nd.nodes.size()) <= 8 * 6);
        }
    }
    SECTION("disconnected patterns are handled") {
        auto p = LabelledPattern::from_edges(5, {{1, 2}, {4, 5}});
        auto nd = make_nice(tree_decomposition(p));
        REQUIRE(validate(p, nd));
        REQUIRE(nd.width() == 1);
    }
    SECTION("make_nice rejects invalid input") {
        TreeDecomposition bad;
        bad.parent = {};
        bad.bags = {};
        REQUIRE_THROWS_AS(make_nice(bad), std::invalid_argument);
    }
}

TEST_CASE("decompositions serialize to JSON") {
    auto p = LabelledPattern::from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    auto td = tree_decomposition(p);
    auto raw = to_json(td);
    REQUIRE(raw["width"] == 2);
    REQUIRE(raw["nodes"].size() == static_cast<std::size_t>(td.node_count()));
    auto nice = to_json(make_nice(td));
    REQUIRE(nice["width"] == 2);
    REQUIRE(nice["nodes"].back()["bag"].empty());
    for (const auto& node : nice["nodes"])
        REQUIRE((node["type"] == "leaf" || node["type"] == "introduce" ||
                 node["type"] == "forget" || node["type"] == "join"));
}

TEST_CASE("removing edges never raises the exhaustive optimum") {
    for (u64 seed = 0; seed < 30; ++seed) {
        auto p = random_pattern(6, 0.5, seed * 7 + 11);
        if (p.edge_count() == 0) continue;
        int full_width = exhaustive_treewidth(p);
        auto edges = p.edges;
        edges.erase(edges.begin() + static_cast<long>(seed % edges.size()));
        auto q = LabelledPattern::from_edges(p.k, std::move(edges));
        REQUIRE(exhaustive_treewidth(q) <= full_width);
        REQUIRE(tree_decomposition(q).width() <= tree_decomposition(p).width());
    }
}
