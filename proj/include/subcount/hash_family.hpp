#pragma once

// Families of hash functions V -> {1..k} covering every k-subset with an
// injective member. Two constructions: a certified greedy cover (exact at
// desk scale, every family checked perfect) and a randomized family whose
// miss probability is bounded by delta_h via a union bound over the at most
// n^k subsets.

#include "subcount/common.hpp"
#include "subcount/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

namespace subcount {

enum class FamilyMode { ExactGreedy, Randomized };

inline const char* family_mode_name(FamilyMode m) {
    return m == FamilyMode::ExactGreedy ? "exact-greedy" : "randomized";
}

struct HashFamily {
    int n = 0;
    int k = 0;
    FamilyMode mode = FamilyMode::ExactGreedy;
    double delta_h = 0.0;                // randomized mode only
    std::vector<std::vector<u8>> members; // each maps vertex -> color in 1..k

    std::size_t size() const { return members.size(); }
};

namespace detail {

constexpr u64 kExactFamilySubsetCap = 2'000'000;

inline std::vector<u32> all_k_subsets(int n, int k) {
    if (n > 31) throw cap_exceeded("exact family construction needs n <= 31");
    if (binomial(n, k) > kExactFamilySubsetCap)
        throw cap_exceeded("exact family construction: C(n,k) over cap");
    std::vector<u32> subsets;
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    for (;;) {
        u32 mask = 0;
        for (int v : comb) mask |= u32(1) << v;
        subsets.push_back(mask);
        int pos = k - 1;
        while (pos >= 0 && comb[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++comb[pos];
        for (int i = pos + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
    }
    return subsets;
}

inline bool injective_on(const std::vector<u8>& f, u32 subset_mask) {
    u32 seen = 0;
    while (subset_mask) {
        int v = std::countr_zero(subset_mask);
        subset_mask &= subset_mask - 1;
        u32 bit = u32(1) << f[v];
        if (seen & bit) return false;
        seen |= bit;
    }
    return true;
}

// ceil((k^k / k!) * (k ln n + ln(1/delta_h))), with the rational part kept in
// exact integers and the logarithms rounded up before the ceiling division,
// so rounding can only enlarge the family.
inline u64 randomized_family_size(int n, int k, double delta_h) {
    const u64 scale = u64(1) << 20;
    double x = k * std::log(static_cast<double>(n)) + std::log(1.0 / delta_h);
    BigInt x_scaled = static_cast<u64>(std::ceil(x * static_cast<double>(scale)));
    BigInt kk = 1;
    for (int i = 0; i < k; ++i) kk *= k;
    BigInt denom = factorial(k) * scale;
    BigInt r = (kk * x_scaled + denom - 1) / denom;
    return r.convert_to<u64>();
}

} // namespace detail

// Exhaustively checks that every k-subset of {0..n-1} is injectively colored
// by some member.
inline bool is_k_perfect(const HashFamily& family, int n, int k) {
    for (u32 subset : detail::all_k_subsets(n, k)) {
        bool covered = false;
        for (const auto& f : family.members)
            if (detail::injective_on(f, subset)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

inline HashFamily build_family(int n, int k, FamilyMode mode, double delta_h, u64 seed) {
    if (k < 1 || k > n) throw std::invalid_argument("build_family requires 1 <= k <= n");
    HashFamily family;
    family.n = n;
    family.k = k;
    family.mode = mode;
    Rng rng(seed);
    auto draw = [&] {
        std::vector<u8> f(n);
        for (int v = 0; v < n; ++v) f[v] = static_cast<u8>(1 + rng.below(k));
        return f;
    };
    if (mode == FamilyMode::ExactGreedy) {
        std::vector<u32> uncovered = detail::all_k_subsets(n, k);
        while (!uncovered.empty()) {
            std::vector<u8> f = draw();
            std::vector<u32> still;
            still.reserve(uncovered.size());
            for (u32 s : uncovered)
                if (!detail::injective_on(f, s)) still.push_back(s);
            if (still.size() < uncovered.size()) {
                family.members.push_back(std::move(f));
                uncovered = std::move(still);
            }
        }
    } else {
        if (!(delta_h > 0.0 && delta_h < 1.0))
            throw std::invalid_argument("randomized family needs 0 < delta_h < 1");
        family.delta_h = delta_h;
        u64 r = detail::randomized_family_size(n, k, delta_h);
        family.members.reserve(r);
        for (u64 i = 0; i < r; ++i) family.members.push_back(draw());
    }
    return family;
}

} // namespace subcount
