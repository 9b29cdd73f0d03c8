#include "mslab/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "mslab/errors.hpp"

namespace mslab {

namespace {

// f(p^e) for each table kind. d4(p^e) = (e+1)(e+2)(e+3)/6 by stars and bars.
int64_t prime_power_value(SieveKind kind, uint64_t e) {
    switch (kind) {
        case SieveKind::d: return int64_t(e + 1);
        case SieveKind::d4: return int64_t((e + 1) * (e + 2) * (e + 3) / 6);
        case SieveKind::mu: return e == 1 ? -1 : 0;
        case SieveKind::d_cube: return int64_t(3 * e + 1);
    }
    return 0;
}

std::mutex g_prime_mutex;
std::vector<uint32_t> g_primes;       // all primes <= g_prime_limit
uint32_t g_prime_limit = 0;

void grow_prime_cache(uint32_t limit) {
    // simple odd-only Eratosthenes; limit stays modest (<= ~3e7 in practice)
    std::vector<uint8_t> comp((limit >> 1) + 1, 0);
    std::vector<uint32_t> out;
    out.push_back(2);
    for (uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
        if (comp[i]) continue;
        uint64_t p = 2 * i + 1;
        out.push_back(uint32_t(p));
        for (uint64_t j = p * p; j <= limit; j += 2 * p) comp[j >> 1] = 1;
    }
    g_primes = std::move(out);
    g_prime_limit = limit;
}

}  // namespace

const std::vector<uint32_t>& primes_upto(uint32_t limit) {
    std::lock_guard<std::mutex> g(g_prime_mutex);
    if (limit < 3) limit = 3;
    if (g_prime_limit < limit) grow_prime_cache(std::max(limit, g_prime_limit * 2));
    return g_primes;
}

void for_primes_in(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& fn) {
    if (lo < 2) lo = 2;
    if (lo >= hi) return;
    uint64_t root = isqrt_u64(hi - 1);
    const auto& base = primes_upto(uint32_t(std::max<uint64_t>(root, 3)));
    const uint64_t kSeg = uint64_t(1) << 22;
    std::vector<uint8_t> comp;
    for (uint64_t seg_lo = lo; seg_lo < hi; ) {
        uint64_t seg_hi = std::min(hi, seg_lo + kSeg);
        comp.assign(std::size_t(seg_hi - seg_lo), 0);
        for (uint32_t p : base) {
            uint64_t pp = uint64_t(p) * p;
            if (pp >= seg_hi) break;
            uint64_t start = std::max(pp, (seg_lo + p - 1) / p * p);
            for (uint64_t m = start; m < seg_hi; m += p) comp[std::size_t(m - seg_lo)] = 1;
        }
        for (uint64_t n = seg_lo; n < seg_hi; ++n)
            if (!comp[std::size_t(n - seg_lo)] && n >= 2) fn(n);
        seg_lo = seg_hi;
    }
}

SieveTable sieve_multiplicative(uint64_t lo, uint64_t hi, SieveKind kind, uint64_t segment_cap) {
    if (lo < 1 || lo > hi) throw ValidationError("sieve_multiplicative: need 1 <= lo <= hi");
    if (hi - lo + 1 > segment_cap)
        throw ResourceError("sieve_multiplicative: segment larger than cap");
    if (hi > (uint64_t(1) << 62)) throw ValidationError("sieve_multiplicative: hi out of range");

    std::size_t count = std::size_t(hi - lo + 1);
    SieveTable table;
    table.lo = lo;
    table.hi = hi;
    table.kind = kind;
    table.values.assign(count, 1);

    std::vector<uint64_t> rem(count);
    for (std::size_t i = 0; i < count; ++i) rem[i] = lo + i;

    uint64_t root = isqrt_u64(hi);
    const auto& primes = primes_upto(uint32_t(std::max<uint64_t>(root, 3)));
    auto apply = [&](std::size_t i, uint64_t e) {
        int64_t f = prime_power_value(kind, e);
        int64_t v = int64_t(table.values[i]) * f;
        if (v > INT32_MAX || v < INT32_MIN)
            throw ValidationError("sieve_multiplicative: value overflows 32-bit range");
        table.values[i] = int32_t(v);
    };

    for (uint32_t p : primes) {
        if (uint64_t(p) > root) break;
        uint64_t start = (lo + p - 1) / p * p;
        for (uint64_t m = start; m <= hi; m += p) {
            std::size_t i = std::size_t(m - lo);
            uint64_t e = 0;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                ++e;
            }
            apply(i, e);
        }
    }
    for (std::size_t i = 0; i < count; ++i)
        if (rem[i] > 1) apply(i, 1);  // leftover prime factor > sqrt(hi)

    // n = 1 has the empty factorization: value 1 for every kind.
    return table;
}

namespace {

SieveKind sieve_kind_for(SumKind kind) {
    switch (kind) {
        case SumKind::d2: return SieveKind::d;
        case SumKind::d4: return SieveKind::d4;
        case SumKind::d_cube: return SieveKind::d_cube;
    }
    return SieveKind::d;
}

// Walk [lo, hi] in sieve segments, adding f(n) (squared for d2).
int128 segment_sum(uint64_t lo, uint64_t hi, SumKind kind) {
    if (lo > hi) return 0;
    const uint64_t kSeg = uint64_t(1) << 22;
    SieveKind sk = sieve_kind_for(kind);
    int128 total = 0;
    for (uint64_t seg_lo = lo; seg_lo <= hi; ) {
        uint64_t seg_hi = std::min(hi, seg_lo + kSeg - 1);
        SieveTable t = sieve_multiplicative(seg_lo, seg_hi, sk);
        int128 part = 0;
        if (kind == SumKind::d2) {
            for (int32_t v : t.values) part += int64_t(v) * int64_t(v);
        } else {
            for (int32_t v : t.values) part += v;
        }
        total = checked_add(total, part);
        if (seg_hi == hi) break;
        seg_lo = seg_hi + 1;
    }
    return total;
}

// D(y) = sum_{n<=y} d(n) = 2 sum_{b<=sqrt y} floor(y/b) - floor(sqrt y)^2.
int128 divisor_summatory(uint64_t y) {
    if (y == 0) return 0;
    uint64_t s = isqrt_u64(y);
    uint64_t acc = 0;
    int128 total = 0;
    for (uint64_t b = 1; b <= s; ++b) {
        acc += y / b;
        if (acc >= (uint64_t(1) << 62)) {  // spill to 128-bit before wrap
            total += acc;
            acc = 0;
        }
    }
    total += acc;
    return checked_sub(checked_mul(total, 2), checked_mul(int128(s), int128(s)));
}

}  // namespace

int128 summatory_direct(uint64_t x, SumKind kind) {
    if (x < 1) throw ValidationError("summatory_direct: x >= 1 required");
    if (kind == SumKind::d2 && x > uint64_t(100'000'000'000'000))
        throw ValidationError("summatory_direct: d2 accumulator budget is x <= 10^14");
    return segment_sum(1, x, kind);
}

int128 summatory_d4_split(uint64_t x, uint64_t split) {
    if (x < 1) throw ValidationError("summatory_d4: x >= 1 required");
    if (split < 1 || split > x) throw ValidationError("summatory_d4: split out of range");

    uint64_t upper = x / split;
    uint64_t table_hi = std::max(split, upper);
    SieveTable d_tab = sieve_multiplicative(1, table_hi, SieveKind::d);

    int128 total = 0;
    for (uint64_t a = 1; a <= split; ++a)
        total = checked_add(total, checked_mul(int128(d_tab.at(a)), divisor_summatory(x / a)));
    for (uint64_t b = 1; b <= upper; ++b)
        total = checked_add(total, checked_mul(int128(d_tab.at(b)), divisor_summatory(x / b)));

    int128 d_split = 0, d_upper = 0;
    for (uint64_t a = 1; a <= split; ++a) d_split += d_tab.at(a);
    for (uint64_t b = 1; b <= upper; ++b) d_upper += d_tab.at(b);
    return checked_sub(total, checked_mul(d_split, d_upper));
}

int128 summatory_d4(uint64_t x) {
    if (x < 1) throw ValidationError("summatory_d4: x >= 1 required");
    return summatory_d4_split(x, isqrt_u64(x));
}

int128 summatory_d2(uint64_t x) {
    if (x < 1) throw ValidationError("summatory_d2: x >= 1 required");
    uint64_t s = isqrt_u64(x);
    SieveTable mu = sieve_multiplicative(1, s, SieveKind::mu);
    int128 total = 0;
    for (uint64_t a = 1; a <= s; ++a) {
        int32_t m = mu.at(a);
        if (m == 0) continue;
        int128 term = summatory_d4(x / (a * a));
        total = m > 0 ? checked_add(total, term) : checked_sub(total, term);
    }
    return total;
}

int128 short_interval_sum(uint64_t x, uint64_t y, SumKind kind) {
    if (y == 0) return 0;
    if (x > UINT64_MAX - y) throw ValidationError("short_interval_sum: x + y overflows");
    uint64_t hi = x + y;
    // Sieving the window costs ~y log log; the sublinear difference costs
    // ~hi^{3/4}. d_cube has no sublinear route.
    bool use_difference = kind != SumKind::d_cube && double(y) > 8.0 * std::pow(double(hi), 0.75);
    if (!use_difference) return segment_sum(x + 1, hi, kind);
    auto prefix = [&](uint64_t v) -> int128 {
        if (v == 0) return 0;
        return kind == SumKind::d2 ? summatory_d2(v) : summatory_d4(v);
    };
    return checked_sub(prefix(hi), prefix(x));
}

// binary gcd; operands here never exceed ~2^100
uint128 gcd_u128(uint128 a, uint128 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    auto ctz = [](uint128 v) -> int {
        uint64_t lo = uint64_t(v);
        return lo ? __builtin_ctzll(lo) : 64 + __builtin_ctzll(uint64_t(v >> 64));
    };
    int k = ctz(a | b);
    a >>= ctz(a);
    for (;;) {
        b >>= ctz(b);
        if (a > b) std::swap(a, b);
        b -= a;
        if (b == 0) break;
    }
    return a << k;
}

bool gcd_identity_check(uint64_t m1, uint64_t n1, uint64_t m2, uint64_t n2) {
    if (m1 == 0 || n1 == 0 || m2 == 0 || n2 == 0)
        throw ValidationError("gcd_identity_check: arguments must be positive");
    if (std::gcd(m1, m2) != 1)
        throw ValidationError("gcd_identity_check: gcd(m1, m2) != 1");
    if (std::gcd(n1, n2) != 1)
        throw ValidationError("gcd_identity_check: gcd(n1, n2) != 1");
    uint128 n1sq = uint128(n1) * n1;
    uint128 n2sq = uint128(n2) * n2;
    uint128 lhs = gcd_u128(uint128(m1) * n1sq, uint128(m2) * n2sq);
    uint128 rhs = gcd_u128(uint128(m1), n2sq) * gcd_u128(uint128(m2), n1sq);
    return lhs == rhs;
}

GcdRangeSum gcd_range_sum(uint64_t m_from, uint64_t m_to, uint64_t a) {
    if (!(m_from < m_to)) throw ValidationError("gcd_range_sum: need M < M1");
    if (a < 1) throw ValidationError("gcd_range_sum: a >= 1 required");
    int128 sum = 0;
    uint64_t acc = 0;
    for (uint64_t m = m_from + 1; m <= m_to; ++m) {
        acc += std::gcd(m, a);
        if (acc >= (uint64_t(1) << 62)) {
            sum += acc;
            acc = 0;
        }
    }
    sum += acc;
    GcdRangeSum r;
    r.sum = sum;
    r.bound_ratio = to_double(sum) / (double(m_from) * double(divisor_count_u64(a)));
    return r;
}

uint64_t divisor_count_u64(uint64_t a) {
    if (a == 0) throw ValidationError("divisor_count: a >= 1 required");
    if (a > uint64_t(1'000'000'000'000)) throw ValidationError("divisor_count: a <= 10^12 required");
    uint64_t count = 1;
    uint64_t rest = a;
    const auto& primes = primes_upto(uint32_t(std::max<uint64_t>(isqrt_u64(a), 3)));
    for (uint32_t p : primes) {
        if (uint64_t(p) * p > rest) break;
        if (rest % p == 0) {
            uint64_t e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            count *= e + 1;
        }
    }
    if (rest > 1) count *= 2;
    return count;
}

std::shared_ptr<const std::vector<int8_t>> mobius_table(uint64_t n) {
    if (n > (uint64_t(1) << 28))
        throw ResourceError("mobius_table: table larger than 2^28 entries");
    static std::mutex mu_mutex;
    static std::map<uint64_t, std::weak_ptr<const std::vector<int8_t>>> cache;
    std::lock_guard<std::mutex> g(mu_mutex);
    auto it = cache.lower_bound(n);
    for (; it != cache.end(); ++it) {
        if (auto hit = it->second.lock()) return hit;
    }
    auto table = std::make_shared<std::vector<int8_t>>(std::size_t(n) + 1, 0);
    const uint64_t kSeg = uint64_t(1) << 22;
    for (uint64_t lo = 1; lo <= n; ) {
        uint64_t hi = std::min(n, lo + kSeg - 1);
        SieveTable t = sieve_multiplicative(lo, hi, SieveKind::mu);
        for (uint64_t m = lo; m <= hi; ++m) (*table)[std::size_t(m)] = int8_t(t.at(m));
        if (hi == n) break;
        lo = hi + 1;
    }
    cache[n] = table;
    return table;
}

}  // namespace mslab
