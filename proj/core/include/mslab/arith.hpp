#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "mslab/int128.hpp"

namespace mslab {

// Multiplicative functions realized by the segmented sieve.
//   d       divisor count
//   d4      4-fold divisor count, d4(p^e) = C(e+3,3)
//   mu      Moebius function
//   d_cube  d(n^3), d_cube(p^e) = 3e+1
enum class SieveKind { d, d4, mu, d_cube };

// Summatory targets: f in {d^2, d4, d(n^3)}.
enum class SumKind { d2, d4, d_cube };

struct SieveTable {
    uint64_t lo = 1;
    uint64_t hi = 1;
    SieveKind kind = SieveKind::d;
    std::vector<int32_t> values;  // values[n - lo]

    int32_t at(uint64_t n) const { return values[std::size_t(n - lo)]; }
};

inline constexpr uint64_t kDefaultSegmentCap = uint64_t(1) << 26;

// Exact values of the chosen multiplicative function on [lo, hi] via a
// least-prime-factor segmented sieve (base primes up to sqrt(hi), leftover
// cofactor is prime).
SieveTable sieve_multiplicative(uint64_t lo, uint64_t hi, SieveKind kind,
                                uint64_t segment_cap = kDefaultSegmentCap);

// Oracle summation: walks sieve segments and adds f(n) for n <= x.
int128 summatory_direct(uint64_t x, SumKind kind);

// Exact D4(x) = sum_{n<=x} d4(n) in O(x^{3/4}) by the two-sided hyperbola
// split of d4 = d * d. `split` overrides the split point (default floor
// sqrt x); the result is split-invariant.
int128 summatory_d4(uint64_t x);
int128 summatory_d4_split(uint64_t x, uint64_t split);

// Exact sum_{n<=x} d^2(n) via the Moebius convolution
// d^2 = sum_{a^2 m = n} mu(a) d4(m), i.e. sum_{a<=sqrt x} mu(a) D4(x/a^2).
int128 summatory_d2(uint64_t x);

// Exact sum over the half-open interval (x, x+y].
int128 short_interval_sum(uint64_t x, uint64_t y, SumKind kind);

// gcd(m1 n1^2, m2 n2^2) == gcd(m1, n2^2) gcd(m2, n1^2), requiring
// gcd(m1,m2) = gcd(n1,n2) = 1. Returns the comparison result.
bool gcd_identity_check(uint64_t m1, uint64_t n1, uint64_t m2, uint64_t n2);

struct GcdRangeSum {
    int128 sum = 0;
    double bound_ratio = 0.0;  // sum / (M * d(a))
};

// sum_{M < m <= M1} gcd(m, a), plus its ratio against M*d(a).
GcdRangeSum gcd_range_sum(uint64_t m_from, uint64_t m_to, uint64_t a);

// Divisor count by trial division over cached primes; guarded to a <= 10^12.
uint64_t divisor_count_u64(uint64_t a);

// Shared, append-only prime cache (thread safe). The returned reference
// stays valid; the vector holds all primes <= at least `limit`.
const std::vector<uint32_t>& primes_upto(uint32_t limit);

// Streams primes in [lo, hi) through fn in increasing order.
void for_primes_in(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& fn);

// Moebius values mu(1..n) as int8; cached and shared across callers.
std::shared_ptr<const std::vector<int8_t>> mobius_table(uint64_t n);

// Binary gcd on unsigned 128-bit values.
uint128 gcd_u128(uint128 a, uint128 b);

}  // namespace mslab
