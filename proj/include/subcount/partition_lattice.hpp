#pragma once

// The lattice of partitions of {1..k} under refinement, ordered so that
// P <= Q iff Q refines P: bottom is the one-block partition, top is all
// singletons. Carries exact Mobius values mu(bottom, .) both in closed form
// and recursively, plus the meet-matrix determinant, all in exact integer
// arithmetic.

#include "subcount/common.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace subcount {

struct Partition {
    int k = 0;
    std::vector<std::vector<int>> blocks; // canonical: elements ascending, blocks by minimum

    static Partition of(int k, std::vector<std::vector<int>> blocks) {
        std::vector<bool> seen(k + 1, false);
        for (auto& b : blocks) {
            if (b.empty()) throw std::invalid_argument("partition block is empty");
            std::sort(b.begin(), b.end());
            for (int x : b) {
                if (x < 1 || x > k) throw std::invalid_argument("partition element out of range");
                if (seen[x]) throw std::invalid_argument("partition element repeated");
                seen[x] = true;
            }
        }
        for (int x = 1; x <= k; ++x)
            if (!seen[x]) throw std::invalid_argument("partition misses element " + std::to_string(x));
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        Partition p;
        p.k = k;
        p.blocks = std::move(blocks);
        return p;
    }

    // id[i] = block index of element i+1 (any labelling; canonicalized here)
    static Partition from_block_ids(int k, const std::vector<int>& ids) {
        std::map<int, std::vector<int>> by_id;
        for (int i = 0; i < k; ++i) by_id[ids[i]].push_back(i + 1);
        std::vector<std::vector<int>> blocks;
        for (auto& [id, b] : by_id) blocks.push_back(std::move(b));
        return of(k, std::move(blocks));
    }

    static Partition bottom(int k) { // single block {1..k}
        std::vector<int> all(k);
        for (int i = 0; i < k; ++i) all[i] = i + 1;
        return of(k, {all});
    }

    static Partition top(int k) { // all singletons
        std::vector<std::vector<int>> blocks;
        for (int i = 1; i <= k; ++i) blocks.push_back({i});
        return of(k, std::move(blocks));
    }

    int block_count() const { return static_cast<int>(blocks.size()); }
    int rank() const { return block_count() - 1; }

    std::vector<int> block_ids() const {
        std::vector<int> ids(k + 1, -1);
        for (int b = 0; b < block_count(); ++b)
            for (int x : blocks[b]) ids[x] = b;
        return ids;
    }

    bool operator==(const Partition& o) const { return k == o.k && blocks == o.blocks; }
    bool operator<(const Partition& o) const {
        if (block_count() != o.block_count()) return block_count() < o.block_count();
        return blocks < o.blocks;
    }
};

// Finest partition refined by both arguments: connected components of the
// union of the two block-equivalence relations.
inline Partition meet(const Partition& p, const Partition& q) {
    if (p.k != q.k) throw std::invalid_argument("meet: mismatched k");
    int k = p.k;
    std::vector<int> root(k + 1);
    for (int i = 1; i <= k; ++i) root[i] = i;
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    auto unite = [&](int a, int b) { root[find(a)] = find(b); };
    for (const auto* part : {&p, &q})
        for (const auto& b : part->blocks)
            for (std::size_t i = 1; i < b.size(); ++i) unite(b[0], b[i]);
    std::vector<int> ids(k);
    for (int i = 1; i <= k; ++i) ids[i - 1] = find(i);
    return Partition::from_block_ids(k, ids);
}

// Does `fine` refine `coarse` (every block of fine inside a block of coarse)?
// In the lattice order used here, coarse <= fine.
inline bool refines(const Partition& fine, const Partition& coarse) {
    if (fine.k != coarse.k) throw std::invalid_argument("refines: mismatched k");
    auto coarse_ids = coarse.block_ids();
    for (const auto& b : fine.blocks)
        for (std::size_t i = 1; i < b.size(); ++i)
            if (coarse_ids[b[i]] != coarse_ids[b[0]]) return false;
    return true;
}

// mu(bottom, P) = (-1)^r r! with r = rank(P); never zero.
inline BigInt mobius_bottom(const Partition& p) {
    BigInt v = factorial(p.rank());
    return p.rank() % 2 ? -v : v;
}

// The indicator f: P -> {0,1} picking out the one-block partition; the
// meet-matrix and the gadget right-hand sides are built from it.
struct IndicatorF {
    int operator()(const Partition& p) const { return p.block_count() == 1 ? 1 : 0; }
};

class LatticeTable {
public:
    explicit LatticeTable(int k) : k_(k) {
        if (k < 1) throw std::invalid_argument("partition lattice needs k >= 1");
        if (k > 8) throw cap_exceeded("partition lattice capped at k <= 8 (B_8 = 4140)");
        // enumerate via restricted growth strings
        std::vector<int> rgs(k, 0);
        for (;;) {
            partitions_.push_back(Partition::from_block_ids(k, rgs));
            int pos = k - 1;
            while (pos > 0) {
                int mx = 0;
                for (int i = 0; i < pos; ++i) mx = std::max(mx, rgs[i]);
                if (rgs[pos] <= mx) break;
                --pos;
            }
            if (pos == 0) break;
            ++rgs[pos];
            for (int i = pos + 1; i < k; ++i) rgs[i] = 0;
        }
        std::sort(partitions_.begin(), partitions_.end());
        for (std::size_t i = 0; i < partitions_.size(); ++i)
            index_[partitions_[i].block_ids()] = i;
        mobius_.reserve(partitions_.size());
        for (const auto& p : partitions_) mobius_.push_back(mobius_bottom(p));
        if (partitions_.size() <= 1000) {
            std::size_t b = partitions_.size();
            meet_table_.assign(b * b, 0);
            for (std::size_t i = 0; i < b; ++i)
                for (std::size_t j = i; j < b; ++j) {
                    u32 m = static_cast<u32>(index_of(meet(partitions_[i], partitions_[j])));
                    meet_table_[i * b + j] = m;
                    meet_table_[j * b + i] = m;
                }
        }
    }

    int k() const { return k_; }
    std::size_t size() const { return partitions_.size(); } // the Bell number B_k
    const Partition& operator[](std::size_t i) const { return partitions_[i]; }
    const std::vector<Partition>& all() const { return partitions_; }
    std::size_t bottom_index() const { return 0; }
    std::size_t top_index() const { return partitions_.size() - 1; }
    const BigInt& mobius(std::size_t i) const { return mobius_[i]; }

    std::size_t index_of(const Partition& p) const {
        auto it = index_.find(p.block_ids());
        if (it == index_.end()) throw std::invalid_argument("partition not in lattice");
        return it->second;
    }

    std::size_t meet_index(std::size_t i, std::size_t j) const {
        if (!meet_table_.empty()) return meet_table_[i * partitions_.size() + j];
        return index_of(meet(partitions_[i], partitions_[j]));
    }

    // P_i <= P_j iff P_j refines P_i
    bool less_equal(std::size_t i, std::size_t j) const {
        return refines(partitions_[j], partitions_[i]);
    }

private:
    int k_;
    std::vector<Partition> partitions_;
    std::map<std::vector<int>, std::size_t> index_;
    std::vector<BigInt> mobius_;
    std::vector<u32> meet_table_;
};

// All partitions of {1..k}: index 0 is the one-block bottom, the last index
// the all-singleton top (blocks ascending, then lexicographic).
inline LatticeTable partitions(int k) { return LatticeTable(k); }

// mu(bottom, .) by the inductive definition, sharing nothing with the closed
// form: mu(0,0) = 1 and mu(0,y) = -sum_{z < y} mu(0,z) over z below y.
inline std::vector<BigInt> mobius_bottom_recursive(const LatticeTable& lt) {
    std::vector<BigInt> mu(lt.size());
    for (std::size_t y = 0; y < lt.size(); ++y) {
        if (y == lt.bottom_index()) {
            mu[y] = 1;
            continue;
        }
        BigInt sum = 0;
        for (std::size_t z = 0; z < lt.size(); ++z)
            if (z != y && lt.less_equal(z, y)) sum += mu[z];
        mu[y] = -sum;
    }
    return mu;
}

namespace detail {

// Fraction-free Bareiss elimination; exact over BigInt.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (int p = 0; p < n - 1; ++p) {
        if (m[p][p] == 0) {
            int swap_row = -1;
            for (int i = p + 1; i < n; ++i)
                if (m[i][p] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(m[p], m[swap_row]);
            sign = -sign;
        }
        for (int i = p + 1; i < n; ++i) {
            for (int j = p + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
            m[i][p] = 0;
        }
        prev = m[p][p];
    }
    BigInt det = m[n - 1][n - 1];
    return sign < 0 ? BigInt(-det) : det;
}

} // namespace detail

// Build A with a_ij = f(P_i meet P_j) over the whole lattice of partitions
// of {1..k} and eliminate exactly. The value is compared elsewhere against
// the independent product of Mobius values.
inline BigInt meet_matrix_det(int k) {
    if (k > 6) throw cap_exceeded("meet_matrix_det capped at k <= 6");
    LatticeTable lt(k);
    IndicatorF f;
    std::size_t b = lt.size();
    std::vector<std::vector<BigInt>> a(b, std::vector<BigInt>(b));
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j)
            a[i][j] = f(lt[lt.meet_index(i, j)]);
    return detail::bareiss_determinant(std::move(a));
}

} // namespace subcount
