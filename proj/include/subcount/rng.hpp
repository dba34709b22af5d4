#pragma once

// Deterministic random number generation. Every randomized component in the
// library draws from an Rng derived from (seed, stream id); estimator trials
// use one stream per trial counter, so results are bit-identical for a fixed
// seed no matter how trials are scheduled across workers.

#include "subcount/common.hpp"

#include <cmath>

namespace subcount {

inline u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(u64 seed) : state_(seed) {
        // burn two rounds so low-entropy seeds (0, 1, 2, ...) diverge
        splitmix64(state_);
        splitmix64(state_);
    }

    // Independent substream: mixes the stream id through the full avalanche
    // before reseeding, so stream(s, 0), stream(s, 1), ... do not overlap in
    // any way that matters at desk scale.
    static Rng stream(u64 seed, u64 stream_id) {
        u64 s = seed;
        u64 a = splitmix64(s);
        u64 t = stream_id ^ 0xd1b54a32d192ed03ULL;
        return Rng(a ^ splitmix64(t));
    }

    u64 next() { return splitmix64(state_); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // uniform in [0, n), n >= 1; multiply-shift with rejection keeps it
    // exactly uniform and division-free on the fast path
    u64 below(u64 n) {
        u64 x = next();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
        u64 low = static_cast<u64>(m);
        if (low < n) {
            u64 threshold = (0 - n) % n;
            while (low < threshold) {
                x = next();
                m = static_cast<unsigned __int128>(x) * n;
                low = static_cast<u64>(m);
            }
        }
        return static_cast<u64>(m >> 64);
    }

    // uniform in [0, n) for arbitrary-precision n >= 1
    BigInt below_big(const BigInt& n) {
        if (n <= 0x7fffffffffffffffULL) return BigInt(below(n.convert_to<u64>()));
        std::size_t bits = msb(n) + 1; // boost msb: index of highest set bit
        std::size_t words = (bits + 63) / 64;
        for (;;) {
            BigInt r = 0;
            for (std::size_t w = 0; w < words; ++w) {
                r <<= 64;
                r |= BigInt(next());
            }
            r >>= words * 64 - bits;
            if (r < n) return r;
        }
    }

private:
    u64 state_;
};

} // namespace subcount
