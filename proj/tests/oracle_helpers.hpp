#pragma once

// Independent oracles for the unit and acceptance tests. Everything here is
// brute force on purpose: these functions must not share code paths with
// the implementations they check.

#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

// divisor count by direct divisor enumeration
inline uint64_t d_naive(uint64_t n) {
    uint64_t c = 0;
    for (uint64_t i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            c += 2;
            if (i * i == n) --c;
        }
    }
    return c;
}

// d4 by convolving d with itself: d4(n) = sum_{ab=n} d(a) d(b)
inline uint64_t d4_naive(uint64_t n) {
    uint64_t c = 0;
    for (uint64_t a = 1; a * a <= n; ++a) {
        if (n % a == 0) {
            uint64_t b = n / a;
            c += d_naive(a) * d_naive(b);
            if (a != b) c += d_naive(b) * d_naive(a);
        }
    }
    return c;
}

// Moebius by trial factorization
inline int mu_naive(uint64_t n) {
    int m = 1;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

// d(n^3) via factorization: product of (3e+1)
inline uint64_t d_cube_naive(uint64_t n) {
    uint64_t v = 1;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            uint64_t e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            v *= 3 * e + 1;
        }
    }
    if (n > 1) v *= 4;
    return v;
}

// Ramanujan sum c_q(l) = sum_{d | gcd(q,|l|)} d mu(q/d); c_q(0) = phi(q).
inline int64_t ramanujan_sum(uint64_t q, int64_t l) {
    uint64_t g = l == 0 ? q : std::gcd(uint64_t(l < 0 ? -l : l), q);
    int64_t total = 0;
    for (uint64_t d = 1; d <= g; ++d)
        if (g % d == 0) total += int64_t(d) * mu_naive(q / d);
    return total;
}

// zeta(1/2) etc. via the eta (alternating) series with Euler acceleration:
// zeta(s) = eta(s)/(1 - 2^{1-s}), eta via van Wijngaarden averaging.
inline std::complex<double> zeta_eta_series(std::complex<double> s) {
    const int N = 64;
    std::vector<std::complex<double>> partial(2 * N);
    std::complex<double> acc = 0.0;
    for (int n = 1; n <= 2 * N; ++n) {
        double sign = (n % 2 == 1) ? 1.0 : -1.0;
        acc += sign * std::exp(-s * std::log(double(n)));
        partial[n - 1] = acc;
    }
    // repeated averaging of the tail block
    std::vector<std::complex<double>> row(partial.begin() + N - 1, partial.end());
    for (std::size_t len = row.size(); len > 1; --len)
        for (std::size_t i = 0; i + 1 < len; ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    return row[0] / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

// Euler's constant from the harmonic limit with two correction terms,
// independent of the Stieltjes machinery.
inline double euler_gamma_harmonic() {
    const uint64_t N = 1'000'000;
    long double h = 0;
    for (uint64_t n = 1; n <= N; ++n) h += 1.0L / n;
    long double ln = std::log((long double)N);
    long double g = h - ln - 1.0L / (2 * N) + 1.0L / (12.0L * N * N);
    return double(g);
}

}  // namespace oracle
