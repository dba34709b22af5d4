#pragma once

// Shared integer/rational aliases and the error taxonomy used across the
// library. Counts are kept in arbitrary precision throughout: exact-lab
// determinants and DP table values overflow 64 bits long before the
// combinatorial caps do.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace subcount {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Input files or CLI arguments that do not parse. Carries the 1-based line
// number of the offending line when one exists (0 otherwise).
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + std::move(msg)
                                  : std::move(msg)),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// An instance exceeds a combinatorial cap (brute-force enumeration, exact
// hash-family construction, lattice sizes). Distinct from parse errors so
// the CLI can map it to its own exit code.
class cap_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sampling was requested from an empty witness set.
class no_witness_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A set-system oracle contradicted itself (a sampled element failed its own
// membership test). Always a bug in the system construction; the estimator
// aborts rather than silently biasing the estimate.
class oracle_inconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

} // namespace subcount
