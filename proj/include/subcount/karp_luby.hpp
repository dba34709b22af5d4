#pragma once

// The union-cardinality estimator: given an indexed family of sets with
// exact-size, uniform-sample and membership oracles, estimate |A_1 u ... u
// A_m| within relative error eps at confidence 1 - delta. A trial draws an
// index weighted by set size, samples an element of that set, and accepts
// iff the index is the element's smallest containing index; the acceptance
// rate rescaled by the total size is the estimate.
//
// A system must provide:
//   element_type
//   set_count()                    -> number of sets m
//   set_size(i)                    -> exact |A_i| as BigInt
//   sample(i, rng)                 -> uniform element of A_i
//   contains(i, x)                 -> membership
// and may provide canonical_index(x) -> smallest i with x in A_i (or -1),
// which replaces the linear membership scan in the acceptance test.

#include "subcount/common.hpp"
#include "subcount/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace subcount {

struct Estimate {
    BigRat value;
    double epsilon = 0.0;
    double delta = 0.0; // overall failure budget
    u64 trials = 0;
    u64 accepted = 0;
    u64 seed = 0;
    std::size_t set_count = 0;
    BigInt total_size; // S = sum of set sizes
    // provenance filled by the orchestrator
    std::string family_mode;
    double family_delta = 0.0;
    double estimator_delta = 0.0;

    double value_as_double() const { return value.convert_to<double>(); }
};

namespace detail {

template <typename System, typename Element>
concept HasCanonicalIndex = requires(const System& s, const Element& x) {
    { s.canonical_index(x) } -> std::convertible_to<long>;
};

// Size-weighted index selection with exact integer weights. Uses 64-bit
// cumulative sums whenever the total fits; sizes can exceed 2^64 in
// principle, so a big-integer path stays available.
class IndexPicker {
public:
    explicit IndexPicker(const std::vector<BigInt>& sizes) {
        total_ = 0;
        for (const BigInt& s : sizes) total_ += s;
        small_ = total_ <= BigInt(0x7fffffffffffffffULL);
        if (small_) {
            u64 acc = 0;
            cum64_.reserve(sizes.size());
            for (const BigInt& s : sizes) {
                acc += s.convert_to<u64>();
                cum64_.push_back(acc);
            }
        } else {
            BigInt acc = 0;
            cum_.reserve(sizes.size());
            for (const BigInt& s : sizes) {
                acc += s;
                cum_.push_back(acc);
            }
        }
    }

    const BigInt& total() const { return total_; }

    std::size_t pick(Rng& rng) const {
        if (small_) {
            u64 r = rng.below(total_.convert_to<u64>());
            return std::upper_bound(cum64_.begin(), cum64_.end(), r) - cum64_.begin();
        }
        BigInt r = rng.below_big(total_);
        return std::upper_bound(cum_.begin(), cum_.end(), r) - cum_.begin();
    }

private:
    BigInt total_;
    bool small_ = true;
    std::vector<u64> cum64_;
    std::vector<BigInt> cum_;
};

} // namespace detail

inline u64 karp_luby_trials(std::size_t m, double eps, double delta) {
    double t = std::ceil(3.0 * static_cast<double>(m) / (eps * eps) * std::log(2.0 / delta));
    return static_cast<u64>(t);
}

template <typename System>
Estimate estimate_union(const System& sys, double eps, double delta, u64 seed, int workers = 1) {
    if (!(eps > 0.0)) throw std::invalid_argument("estimate_union: eps must be positive");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("estimate_union: delta must lie in (0,1)");

    Estimate est;
    est.epsilon = eps;
    est.delta = delta;
    est.estimator_delta = delta;
    est.seed = seed;
    est.set_count = sys.set_count();

    std::vector<BigInt> sizes(est.set_count);
    for (std::size_t i = 0; i < est.set_count; ++i) sizes[i] = sys.set_size(i);
    detail::IndexPicker picker(sizes);
    est.total_size = picker.total();
    if (est.total_size == 0) {
        est.value = 0;
        return est; // trials = 0, exact answer
    }

    est.trials = karp_luby_trials(est.set_count, eps, delta);
    auto run_range = [&](u64 begin, u64 end) -> u64 {
        u64 accepted = 0;
        typename System::element_type x{};
        for (u64 t = begin; t < end; ++t) {
            Rng rng = Rng::stream(seed, t);
            std::size_t i = picker.pick(rng);
            if constexpr (requires { sys.sample_into(i, rng, x); }) {
                sys.sample_into(i, rng, x);
            } else {
                x = sys.sample(i, rng);
            }
            if (!sys.contains(i, x))
                throw oracle_inconsistency(
                    "sampled element fails its own membership test (set " + std::to_string(i) +
                    ")");
            bool accept;
            if constexpr (detail::HasCanonicalIndex<System, decltype(x)>) {
                accept = sys.canonical_index(x) == static_cast<long>(i);
            } else {
                accept = true;
                for (std::size_t j = 0; j < i; ++j)
                    if (sys.contains(j, x)) {
                        accept = false;
                        break;
                    }
            }
            if (accept) ++accepted;
        }
        return accepted;
    };

    int w = std::max(1, workers);
    if (w == 1 || est.trials < 1024) {
        est.accepted = run_range(0, est.trials);
    } else {
        std::vector<u64> counts(w, 0);
        std::vector<std::exception_ptr> errors(w);
        std::vector<std::thread> threads;
        u64 chunk = est.trials / w;
        for (int t = 0; t < w; ++t) {
            u64 begin = chunk * t;
            u64 end = (t == w - 1) ? est.trials : begin + chunk;
            threads.emplace_back([&, t, begin, end] {
                try {
                    counts[t] = run_range(begin, end);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : threads) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
        for (u64 c : counts) est.accepted += c;
    }

    est.value = BigRat(est.total_size * est.accepted, BigInt(est.trials));
    return est;
}

// Exact union size for systems that can enumerate their sets; the test
// oracle next to the estimator.
template <typename System>
BigInt exact_union(const System& sys) {
    std::set<typename System::element_type> all;
    for (std::size_t i = 0; i < sys.set_count(); ++i)
        for (const auto& x : sys.enumerate(i)) all.insert(x);
    return BigInt(all.size());
}

// Explicitly materialized sets over integer elements, for tests and small
// exact runs.
struct ExplicitSetSystem {
    using element_type = i64;
    std::vector<std::vector<i64>> sets; // each sorted ascending

    static ExplicitSetSystem of(std::vector<std::vector<i64>> raw) {
        for (auto& s : raw) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        return {std::move(raw)};
    }

    std::size_t set_count() const { return sets.size(); }
    BigInt set_size(std::size_t i) const { return BigInt(sets[i].size()); }
    i64 sample(std::size_t i, Rng& rng) const {
        if (sets[i].empty()) throw no_witness_error("sample from empty set");
        return sets[i][static_cast<std::size_t>(rng.below(sets[i].size()))];
    }
    bool contains(std::size_t i, i64 x) const {
        return std::binary_search(sets[i].begin(), sets[i].end(), x);
    }
    const std::vector<i64>& enumerate(std::size_t i) const { return sets[i]; }
};

} // namespace subcount
