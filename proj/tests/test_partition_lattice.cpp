#include "subcount/partition_lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace subcount;

namespace {
const u64 bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
}

TEST_CASE("partition construction and canonical form") {
    Partition p = Partition::of(4, {{3}, {4, 1}, {2}});
    REQUIRE(p.blocks == std::vector<std::vector<int>>{{1, 4}, {2}, {3}});
    REQUIRE(p.rank() == 2);
    REQUIRE_THROWS_AS(Partition::of(3, {{1, 2}}), std::invalid_argument);        // misses 3
    REQUIRE_THROWS_AS(Partition::of(3, {{1, 2}, {2, 3}}), std::invalid_argument); // repeats 2
    REQUIRE_THROWS_AS(Partition::of(3, {{1, 2, 3}, {}}), std::invalid_argument);  // empty block
    REQUIRE(Partition::bottom(3).block_count() == 1);
    REQUIRE(Partition::top(3).block_count() == 3);
}

TEST_CASE("lattice table enumerates all partitions in a stable order") {
    for (int k = 1; k <= 8; ++k) {
        LatticeTable lt(k);
        REQUIRE(lt.size() == bell[k]);
        REQUIRE(lt[lt.bottom_index()] == Partition::bottom(k));
        REQUIRE(lt[lt.top_index()] == Partition::top(k));
        REQUIRE(lt[lt.bottom_index()].rank() == 0);
        REQUIRE(lt[lt.top_index()].rank() == k - 1);
    }
    REQUIRE_THROWS_AS(LatticeTable(9), cap_exceeded);
}

TEST_CASE("meet") {
    Partition p = Partition::of(3, {{1, 2}, {3}});
    Partition q = Partition::of(3, {{1, 3}, {2}});
    SECTION("bottom absorbs") { REQUIRE(meet(p, Partition::bottom(3)) == Partition::bottom(3)); }
    SECTION("idempotent") { REQUIRE(meet(p, p) == p); }
    SECTION("transitive closure of merged relations") {
        REQUIRE(meet(p, q) == Partition::bottom(3));
    }
    SECTION("mismatched k") {
        REQUIRE_THROWS_AS(meet(p, Partition::bottom(4)), std::invalid_argument);
    }
    SECTION("lattice laws for k <= 5") {
        for (int k = 2; k <= 5; ++k) {
            LatticeTable lt(k);
            for (std::size_t i = 0; i < lt.size(); ++i) {
                REQUIRE(lt.meet_index(i, i) == i);
                for (std::size_t j = 0; j < lt.size(); ++j) {
                    REQUIRE(lt.meet_index(i, j) == lt.meet_index(j, i));
                    // order-meet compatibility: P_i <= P_j iff meet is P_i
                    REQUIRE(lt.less_equal(i, j) == (lt.meet_index(i, j) == i));
                }
            }
        }
    }
}

TEST_CASE("mobius values") {
    REQUIRE(mobius_bottom(Partition::bottom(4)) == 1);
    REQUIRE(mobius_bottom(Partition::of(4, {{1, 2, 3}, {4}})) == -1);
    REQUIRE(mobius_bottom(Partition::top(3)) == 2); // rank 2, 2! = 2
    REQUIRE(mobius_bottom(Partition::top(5)) == 24);
    SECTION("never zero, matches the recursion for k <= 6") {
        for (int k = 1; k <= 6; ++k) {
            LatticeTable lt(k);
            auto recursive = mobius_bottom_recursive(lt);
            for (std::size_t i = 0; i < lt.size(); ++i) {
                REQUIRE(lt.mobius(i) != 0);
                REQUIRE(lt.mobius(i) == recursive[i]);
            }
        }
    }
}

TEST_CASE("meet-matrix determinant") {
    REQUIRE(meet_matrix_det(2) == -1); // [[1,1],[1,0]]
    REQUIRE(meet_matrix_det(3) == -2); // 1 * (-1)^3 * 2 over the 5 partitions
    SECTION("equals the product of mobius values for k <= 6") {
        for (int k = 1; k <= 6; ++k) {
            LatticeTable lt(k);
            BigInt product = 1;
            for (std::size_t i = 0; i < lt.size(); ++i) product *= lt.mobius(i);
            BigInt det = meet_matrix_det(k);
            REQUIRE(det == product);
            REQUIRE(det != 0);
        }
    }
    REQUIRE_THROWS_AS(meet_matrix_det(7), cap_exceeded);
}

TEST_CASE("bareiss determinant control cases") {
    using detail::bareiss_determinant;
    REQUIRE(bareiss_determinant({{BigInt(2)}}) == 2);
    REQUIRE(bareiss_determinant({{BigInt(1), BigInt(2)}, {BigInt(3), BigInt(4)}}) == -2);
    REQUIRE(bareiss_determinant({{BigInt(0), BigInt(1)}, {BigInt(1), BigInt(0)}}) == -1);
    REQUIRE(bareiss_determinant({{BigInt(1), BigInt(1)}, {BigInt(1), BigInt(1)}}) == 0);
}
