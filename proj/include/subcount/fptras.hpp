#pragma once

// Assembles the set systems behind the FPTRAS and runs the union estimator.
// For a monotone property phi with edge-minimal patterns H_k, the witness
// universe is the set of k-tuples of distinct vertices, written as a union of
// sets A_{f,sigma,H} indexed by a hash-family member f, a permutation sigma
// and a pattern H: the tuples colored injectively as sigma under f whose
// induced graph contains H. Sizes and samples delegate to the colorful DP on
// the pattern relabelled by sigma (so its coloring becomes the identity),
// and sampled embeddings translate back to witness tuples through the
// bijection theta. The motif variant additionally fixes a color bijection d
// and evaluates the same machinery on the filtered host G_{f,d}.

#include "subcount/colorful.hpp"
#include "subcount/common.hpp"
#include "subcount/graph.hpp"
#include "subcount/hash_family.hpp"
#include "subcount/karp_luby.hpp"
#include "subcount/pattern.hpp"
#include "subcount/property.hpp"
#include "subcount/rng.hpp"
#include "subcount/treewidth.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace subcount {

using WitnessTuple = std::vector<int>;

inline constexpr u64 kDefaultSeed = 1729;

struct FptrasOptions {
    double epsilon = 0.1;
    double delta = 0.05;
    u64 seed = kDefaultSeed;
    FamilyMode family_mode = FamilyMode::ExactGreedy;
    int workers = 1;
};

namespace detail {

// lexicographic rank of a permutation of 1..k (factorial number system)
inline std::size_t perm_rank(const int* sigma, int k) {
    std::size_t rank = 0;
    for (int i = 0; i < k; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < k; ++j)
            if (sigma[j] < sigma[i]) ++smaller;
        rank = rank * (k - i) + smaller;
    }
    return rank;
}

inline std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<int> sigma(k);
    for (int i = 0; i < k; ++i) sigma[i] = i + 1;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

// Cache of nice decompositions keyed by pattern edge mask; relabelled
// patterns recur across hash functions and permutations.
class DecompositionCache {
public:
    const NiceDecomposition& get(const LabelledPattern& p) {
        auto [it, fresh] = cache_.try_emplace(p.edge_mask());
        if (fresh) it->second = make_nice(tree_decomposition(p));
        return it->second;
    }

private:
    std::map<u64, NiceDecomposition> cache_;
};

} // namespace detail

// The A_{f,sigma,H} system for one host graph and property.
class PropertySetSystem {
public:
    using element_type = WitnessTuple;

    // the host graph must outlive the system
    PropertySetSystem(const Graph&& g, int k, const Property& phi, HashFamily family) = delete;
    PropertySetSystem(const Graph& g, int k, const Property& phi, HashFamily family)
        : host_(&g), k_(k), family_(std::move(family)) {
        if (k < 1) throw std::invalid_argument("set system needs k >= 1");
        if (k > 11) throw cap_exceeded("set system capped at k <= 11 (pattern edge masks)");
        if (!phi.monotone)
            throw std::invalid_argument("the FPTRAS path accepts monotone properties only; \"" +
                                        phi.name + "\" is not declared monotone");
        patterns_ = minimal_patterns(phi, k);
        pattern_masks_.reserve(patterns_.size());
        for (const auto& p : patterns_) pattern_masks_.push_back(p.edge_mask());
        sigmas_ = detail::all_permutations(k);
        members_flat_.reserve(family_.size() * g.vertex_count());
        for (const auto& member : family_.members)
            members_flat_.insert(members_flat_.end(), member.begin(), member.end());
        detail::DecompositionCache decompositions;
        std::map<std::pair<u32, u64>, u32> counter_key;
        std::size_t m = family_.size() * sigmas_.size() * patterns_.size();
        counter_of_.reserve(m);
        sizes_.reserve(m);
        for (u32 f = 0; f < family_.size(); ++f) {
            auto classes = color_classes(f);
            for (const auto& sigma : sigmas_) {
                for (const auto& pattern : patterns_) {
                    LabelledPattern relabelled = pattern.relabel(sigma);
                    auto [it, fresh] = counter_key.try_emplace({f, relabelled.edge_mask()});
                    if (fresh) {
                        std::vector<std::vector<int>> candidates(k_);
                        for (int j = 0; j < k_; ++j) candidates[j] = classes[j];
                        counters_.push_back(std::make_unique<ColorfulCounter>(
                            *host_, relabelled, decompositions.get(relabelled),
                            std::move(candidates)));
                        it->second = static_cast<u32>(counters_.size() - 1);
                    }
                    counter_of_.push_back(it->second);
                    sizes_.push_back(counters_[it->second]->count());
                }
            }
        }
    }

    std::size_t set_count() const { return sizes_.size(); }
    const BigInt& set_size(std::size_t i) const { return sizes_[i]; }
    int k() const { return k_; }
    const Graph& host() const { return *host_; }
    const HashFamily& family() const { return family_; }
    const std::vector<LabelledPattern>& patterns() const { return patterns_; }

    WitnessTuple sample(std::size_t i, Rng& rng) const {
        WitnessTuple w;
        sample_into(i, rng, w);
        return w;
    }

    void sample_into(std::size_t i, Rng& rng, WitnessTuple& w) const {
        thread_local Embedding scratch;
        counters_[counter_of_[i]]->sample_into(rng, scratch);
        const auto& sigma = sigmas_[(i / patterns_.size()) % sigmas_.size()];
        w.resize(k_);
        for (int j = 0; j < k_; ++j) w[j] = scratch.to_host[sigma[j] - 1];
    }

    bool contains(std::size_t i, const WitnessTuple& w) const {
        const auto& member = family_.members[i / (patterns_.size() * sigmas_.size())];
        const auto& sigma = sigmas_[(i / patterns_.size()) % sigmas_.size()];
        for (int j = 0; j < k_; ++j)
            if (member[w[j]] != sigma[j]) return false;
        const auto& pattern = patterns_[i % patterns_.size()];
        for (auto [a, b] : pattern.edges)
            if (!host_->adjacent(w[a - 1], w[b - 1])) return false;
        return true;
    }

    // smallest containing index in (f, sigma, pattern) order, or -1
    long canonical_index(const WitnessTuple& w) const {
        long p_min = min_pattern_index(w);
        if (p_min < 0) return -1;
        int sigma[16];
        const std::size_t n = static_cast<std::size_t>(host_->vertex_count());
        for (std::size_t f = 0; f < family_.size(); ++f) {
            const u8* member = members_flat_.data() + f * n;
            u32 seen = 0;
            bool injective = true;
            for (int j = 0; j < k_; ++j) {
                u32 bit = u32(1) << member[w[j]];
                if (seen & bit) {
                    injective = false;
                    break;
                }
                seen |= bit;
                sigma[j] = member[w[j]];
            }
            if (!injective) continue;
            return static_cast<long>((f * sigmas_.size() + detail::perm_rank(sigma, k_)) *
                                         patterns_.size() +
                                     static_cast<std::size_t>(p_min));
        }
        return -1;
    }

    // |union of all sets| by iterating the whole tuple universe; the
    // exhaustive side of the union-vs-oracle check.
    BigInt exhaustive_union_count() const {
        BigInt count = 0;
        WitnessTuple w;
        w.reserve(k_);
        std::vector<bool> used(host_->vertex_count(), false);
        exhaustive_rec(w, used, count);
        return count;
    }

private:
    std::vector<std::vector<int>> color_classes(u32 f) const {
        std::vector<std::vector<int>> classes(k_);
        const auto& member = family_.members[f];
        for (int v = 0; v < host_->vertex_count(); ++v) classes[member[v] - 1].push_back(v);
        return classes;
    }

    long min_pattern_index(const WitnessTuple& w) const {
        u64 induced = 0;
        for (int a = 1; a <= k_; ++a)
            for (int b = a + 1; b <= k_; ++b)
                if (host_->adjacent(w[a - 1], w[b - 1]))
                    induced |= u64(1) << LabelledPattern::edge_slot(a, b);
        for (std::size_t p = 0; p < pattern_masks_.size(); ++p)
            if ((pattern_masks_[p] & ~induced) == 0) return static_cast<long>(p);
        return -1;
    }

    void exhaustive_rec(WitnessTuple& w, std::vector<bool>& used, BigInt& count) const {
        if (static_cast<int>(w.size()) == k_) {
            if (canonical_index(w) >= 0) ++count;
            return;
        }
        for (int v = 0; v < host_->vertex_count(); ++v) {
            if (used[v]) continue;
            used[v] = true;
            w.push_back(v);
            exhaustive_rec(w, used, count);
            w.pop_back();
            used[v] = false;
        }
    }

    const Graph* host_;
    int k_;
    HashFamily family_;
    std::vector<u8> members_flat_; // row-major |F| x n copy for the hot scan
    std::vector<LabelledPattern> patterns_;
    std::vector<u64> pattern_masks_;
    std::vector<std::vector<int>> sigmas_;
    std::vector<u32> counter_of_;
    std::vector<BigInt> sizes_;
    std::vector<std::unique_ptr<ColorfulCounter>> counters_;
};

// The B_{f,sigma,H,d} system for graph motifs: property fixed to
// connectivity, one extra index for the bijection d from [k] onto the motif
// multiset, everything evaluated on the filtered host G_{f,d}.
class MotifSetSystem {
public:
    using element_type = WitnessTuple;

    // host graph and coloring must outlive the system
    MotifSetSystem(const Graph&& g, const Coloring& c, const ColorMultiset& motif,
                   HashFamily family) = delete;
    MotifSetSystem(const Graph& g, const Coloring&& c, const ColorMultiset& motif,
                   HashFamily family) = delete;
    MotifSetSystem(const Graph& g, const Coloring& c, const ColorMultiset& motif,
                   HashFamily family)
        : host_(&g), coloring_(&c), k_(motif.size()), family_(std::move(family)) {
        if (k_ < 1) throw std::invalid_argument("motif must be nonempty");
        if (k_ > 11) throw cap_exceeded("motif system capped at |M| <= 11");
        if (c.size() != g.vertex_count())
            throw std::invalid_argument("coloring does not cover the host graph");
        patterns_ = prufer_trees(k_);
        pattern_masks_.reserve(patterns_.size());
        for (const auto& p : patterns_) pattern_masks_.push_back(p.edge_mask());
        sigmas_ = detail::all_permutations(k_);
        members_flat_.reserve(family_.size() * g.vertex_count());
        for (const auto& member : family_.members)
            members_flat_.insert(members_flat_.end(), member.begin(), member.end());
        motif_sorted_.reserve(k_);
        for (auto& [color, mult] : motif.counts)
            for (int i = 0; i < mult; ++i) motif_sorted_.push_back(color);
        // all distinct assignments d with multiset image M, in lex order
        std::vector<int> d = motif_sorted_;
        do {
            d_list_.push_back(d);
        } while (std::next_permutation(d.begin(), d.end()));

        detail::DecompositionCache decompositions;
        std::map<std::tuple<u32, u32, u64>, u32> counter_key;
        for (u32 f = 0; f < family_.size(); ++f) {
            for (const auto& sigma : sigmas_) {
                for (const auto& pattern : patterns_) {
                    LabelledPattern relabelled = pattern.relabel(sigma);
                    for (u32 d_idx = 0; d_idx < d_list_.size(); ++d_idx) {
                        auto [it, fresh] =
                            counter_key.try_emplace({f, d_idx, relabelled.edge_mask()});
                        if (fresh) {
                            const Filtered& host = filtered(f, d_idx);
                            std::vector<std::vector<int>> candidates(k_);
                            const auto& member = family_.members[f];
                            for (std::size_t s = 0; s < host.to_orig.size(); ++s)
                                candidates[member[host.to_orig[s]] - 1].push_back(
                                    static_cast<int>(s));
                            counters_.push_back(std::make_unique<ColorfulCounter>(
                                host.sub, relabelled, decompositions.get(relabelled),
                                std::move(candidates)));
                            it->second = static_cast<u32>(counters_.size() - 1);
                        }
                        counter_of_.push_back(it->second);
                        filtered_of_.push_back(filtered_index_.at({f, d_idx}));
                        sizes_.push_back(counters_[it->second]->count());
                    }
                }
            }
        }
    }

    std::size_t set_count() const { return sizes_.size(); }
    const BigInt& set_size(std::size_t i) const { return sizes_[i]; }
    int k() const { return k_; }
    const HashFamily& family() const { return family_; }
    std::size_t bijection_count() const { return d_list_.size(); }

    WitnessTuple sample(std::size_t i, Rng& rng) const {
        WitnessTuple w;
        sample_into(i, rng, w);
        return w;
    }

    void sample_into(std::size_t i, Rng& rng, WitnessTuple& w) const {
        thread_local Embedding scratch;
        counters_[counter_of_[i]]->sample_into(rng, scratch);
        const auto& sigma = sigmas_[(i / (patterns_.size() * d_list_.size())) % sigmas_.size()];
        const auto& host = *filtered_hosts_[filtered_of_[i]];
        w.resize(k_);
        for (int j = 0; j < k_; ++j) w[j] = host.to_orig[scratch.to_host[sigma[j] - 1]];
    }

    bool contains(std::size_t i, const WitnessTuple& w) const {
        auto [f, sigma_rank, p, d_idx] = decode(i);
        const auto& member = family_.members[f];
        const auto& sigma = sigmas_[sigma_rank];
        const auto& d = d_list_[d_idx];
        for (int j = 0; j < k_; ++j) {
            if (member[w[j]] != sigma[j]) return false;
            if ((*coloring_)(w[j]) != d[sigma[j] - 1]) return false;
        }
        const auto& pattern = patterns_[p];
        for (auto [a, b] : pattern.edges)
            if (!host_->adjacent(w[a - 1], w[b - 1])) return false;
        return true;
    }

    long canonical_index(const WitnessTuple& w) const {
        // color multiset must be exactly the motif
        int colors[16], sorted[16];
        for (int j = 0; j < k_; ++j) colors[j] = sorted[j] = (*coloring_)(w[j]);
        std::sort(sorted, sorted + k_);
        if (!std::equal(sorted, sorted + k_, motif_sorted_.begin())) return -1;

        long p_min = -1;
        {
            u64 induced = 0;
            for (int a = 1; a <= k_; ++a)
                for (int b = a + 1; b <= k_; ++b)
                    if (host_->adjacent(w[a - 1], w[b - 1]))
                        induced |= u64(1) << LabelledPattern::edge_slot(a, b);
            for (std::size_t p = 0; p < pattern_masks_.size(); ++p)
                if ((pattern_masks_[p] & ~induced) == 0) {
                    p_min = static_cast<long>(p);
                    break;
                }
        }
        if (p_min < 0) return -1;

        int sigma[16], d[16];
        const std::size_t n = static_cast<std::size_t>(host_->vertex_count());
        for (std::size_t f = 0; f < family_.size(); ++f) {
            const u8* member = members_flat_.data() + f * n;
            u32 seen = 0;
            bool injective = true;
            for (int j = 0; j < k_; ++j) {
                u32 bit = u32(1) << member[w[j]];
                if (seen & bit) {
                    injective = false;
                    break;
                }
                seen |= bit;
                sigma[j] = member[w[j]];
            }
            if (!injective) continue;
            for (int j = 0; j < k_; ++j) d[sigma[j] - 1] = colors[j];
            auto it = std::lower_bound(
                d_list_.begin(), d_list_.end(), d,
                [this](const std::vector<int>& lhs, const int* rhs) {
                    return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs, rhs + k_);
                });
            if (it == d_list_.end() || !std::equal(it->begin(), it->end(), d))
                return -1; // unreachable once the multiset matched
            std::size_t d_idx = it - d_list_.begin();
            return static_cast<long>(
                ((f * sigmas_.size() + detail::perm_rank(sigma, k_)) * patterns_.size() +
                 static_cast<std::size_t>(p_min)) *
                    d_list_.size() +
                d_idx);
        }
        return -1;
    }

    BigInt exhaustive_union_count() const {
        BigInt count = 0;
        WitnessTuple w;
        w.reserve(k_);
        std::vector<bool> used(host_->vertex_count(), false);
        exhaustive_rec(w, used, count);
        return count;
    }

private:
    struct Filtered {
        Graph sub;
        std::vector<int> to_orig;
    };

    std::tuple<std::size_t, std::size_t, std::size_t, std::size_t> decode(std::size_t i) const {
        std::size_t d_idx = i % d_list_.size();
        i /= d_list_.size();
        std::size_t p = i % patterns_.size();
        i /= patterns_.size();
        std::size_t sigma_rank = i % sigmas_.size();
        std::size_t f = i / sigmas_.size();
        return {f, sigma_rank, p, d_idx};
    }

    const Filtered& filtered(u32 f, u32 d_idx) {
        auto [it, fresh] = filtered_index_.try_emplace({f, d_idx});
        if (fresh) {
            const auto& member = family_.members[f];
            const auto& d = d_list_[d_idx];
            auto ptr = std::make_unique<Filtered>();
            for (int v = 0; v < host_->vertex_count(); ++v)
                if ((*coloring_)(v) == d[member[v] - 1]) ptr->to_orig.push_back(v);
            ptr->sub = induced_subgraph(*host_, ptr->to_orig);
            filtered_hosts_.push_back(std::move(ptr));
            it->second = static_cast<u32>(filtered_hosts_.size() - 1);
        }
        return *filtered_hosts_[it->second];
    }

    void exhaustive_rec(WitnessTuple& w, std::vector<bool>& used, BigInt& count) const {
        if (static_cast<int>(w.size()) == k_) {
            if (canonical_index(w) >= 0) ++count;
            return;
        }
        for (int v = 0; v < host_->vertex_count(); ++v) {
            if (used[v]) continue;
            used[v] = true;
            w.push_back(v);
            exhaustive_rec(w, used, count);
            w.pop_back();
            used[v] = false;
        }
    }

    const Graph* host_;
    const Coloring* coloring_;
    int k_;
    HashFamily family_;
    std::vector<u8> members_flat_;
    std::vector<LabelledPattern> patterns_;
    std::vector<u64> pattern_masks_;
    std::vector<std::vector<int>> sigmas_;
    std::vector<int> motif_sorted_;
    std::vector<std::vector<int>> d_list_;
    std::map<std::pair<u32, u32>, u32> filtered_index_;
    std::vector<std::unique_ptr<Filtered>> filtered_hosts_;
    std::vector<u32> counter_of_;
    std::vector<u32> filtered_of_;
    std::vector<BigInt> sizes_;
    std::vector<std::unique_ptr<ColorfulCounter>> counters_;
};

namespace detail {

struct SplitDelta {
    double family_delta;
    double estimator_delta;
};

// Greedy families are certified, so the estimator keeps the whole budget;
// randomized families spend half of it on coverage.
inline SplitDelta split_delta(FamilyMode mode, double delta) {
    if (mode == FamilyMode::Randomized) return {delta / 2.0, delta / 2.0};
    return {0.0, delta};
}

} // namespace detail

inline PropertySetSystem build_set_system(const Graph&& g, int k, const Property& phi,
                                          HashFamily family) = delete;
inline PropertySetSystem build_set_system(const Graph& g, int k, const Property& phi,
                                          HashFamily family) {
    return PropertySetSystem(g, k, phi, std::move(family));
}

// Estimate of |{(v_1..v_k) distinct : phi(G[v_1..v_k]) = 1}|.
inline Estimate approx_count_labelled(const Graph& g, int k, const Property& phi,
                                      const FptrasOptions& opt) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (g.vertex_count() < k) throw std::invalid_argument("host graph needs n >= k");
    auto [family_delta, estimator_delta] = detail::split_delta(opt.family_mode, opt.delta);
    HashFamily family = build_family(g.vertex_count(), k, opt.family_mode, family_delta,
                                     Rng::stream(opt.seed, 0x66616d).next());
    PropertySetSystem sys(g, k, phi, std::move(family));
    Estimate est = estimate_union(sys, opt.epsilon, estimator_delta,
                                  Rng::stream(opt.seed, 0x657374).next(), opt.workers);
    est.seed = opt.seed;
    est.delta = opt.delta;
    est.family_mode = family_mode_name(opt.family_mode);
    est.family_delta = family_delta;
    est.estimator_delta = estimator_delta;
    return est;
}

// Unlabelled variant for symmetric properties: the labelled estimate divided
// by k!, which preserves the relative-error guarantee.
inline Estimate approx_count_unlabelled(const Graph& g, int k, const Property& phi,
                                        const FptrasOptions& opt) {
    if (!phi.symmetric)
        throw std::invalid_argument("unlabelled counting needs a symmetric property; \"" +
                                    phi.name + "\" is not declared symmetric");
    Estimate est = approx_count_labelled(g, k, phi, opt);
    est.value /= factorial(k);
    return est;
}

// Graph-motif estimate: connected k-subsets whose color multiset is exactly
// the motif. Internally counts tuples and divides by k!.
inline Estimate approx_count_motif(const Graph& g, const Coloring& c, const ColorMultiset& motif,
                                   const FptrasOptions& opt) {
    int k = motif.size();
    if (k < 1) throw std::invalid_argument("motif must be nonempty");
    if (k > g.vertex_count()) throw std::invalid_argument("motif larger than the host graph");
    auto [family_delta, estimator_delta] = detail::split_delta(opt.family_mode, opt.delta);
    HashFamily family = build_family(g.vertex_count(), k, opt.family_mode, family_delta,
                                     Rng::stream(opt.seed, 0x66616d).next());
    MotifSetSystem sys(g, c, motif, std::move(family));
    Estimate est = estimate_union(sys, opt.epsilon, estimator_delta,
                                  Rng::stream(opt.seed, 0x657374).next(), opt.workers);
    est.seed = opt.seed;
    est.delta = opt.delta;
    est.family_mode = family_mode_name(opt.family_mode);
    est.family_delta = family_delta;
    est.estimator_delta = estimator_delta;
    est.value /= factorial(k);
    return est;
}

} // namespace subcount
