#include "mslab/estermann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mslab/arith.hpp"
#include "mslab/errors.hpp"
#include "mslab/kahan.hpp"

namespace mslab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_finite(complex s, const char* who) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw ValidationError(std::string(who) + ": non-finite argument");
}

}  // namespace

uint64_t mod_inverse(uint64_t a, uint64_t m) {
    if (m == 1) return 0;
    int64_t t = 0, new_t = 1;
    int64_t r = int64_t(m), new_r = int64_t(a % m);
    while (new_r != 0) {
        int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw ValidationError("mod_inverse: arguments not coprime");
    return uint64_t(t < 0 ? t + int64_t(m) : t);
}

FareyArg::FareyArg(int64_t h_raw, uint64_t k_in) {
    if (k_in < 1) throw ValidationError("FareyArg: k >= 1 required");
    k = k_in;
    int64_t m = h_raw % int64_t(k);
    if (m < 0) m += int64_t(k);
    h = uint64_t(m);
    if (std::gcd(h, k) != 1 && k > 1) throw ValidationError("FareyArg: gcd(h, k) must be 1");
    h_bar = k == 1 ? 0 : mod_inverse(h, k);
}

FareyArg FareyArg::negated() const { return FareyArg(-int64_t(h), k); }

FareyArg FareyArg::inverse_arg() const { return FareyArg(int64_t(h_bar), k); }

EstermannValue estermann_dirichlet(complex s, const FareyArg& arg, uint64_t l_cut) {
    require_finite(s, "estermann_dirichlet");
    double sigma = s.real();
    if (sigma < 1.25)
        throw ValidationError("estermann_dirichlet: Re s >= 1.25 required (use continuation)");
    if (l_cut < 1000) throw ValidationError("estermann_dirichlet: l_cut >= 1000 required");

    SieveTable d_tab = sieve_multiplicative(1, l_cut, SieveKind::d);
    ComplexSum acc;
    for (uint64_t l = 1; l <= l_cut; ++l) {
        double ln_l = std::log(double(l));
        uint64_t idx = (l % arg.k) * arg.h % arg.k;  // l h mod k, exact
        double ph = -s.imag() * ln_l + 2 * kPi * double(idx) / double(arg.k);
        double mag = double(d_tab.at(l)) * std::exp(-sigma * ln_l);
        acc.add(complex(mag * std::cos(ph), mag * std::sin(ph)));
    }
    // sum_{l>L} d(l) l^{-sigma} <= int_L^inf (ln x + 2 gamma + 1) x^{-sigma} dx
    double L = double(l_cut);
    double gamma2 = 2 * 0.5772156649015329 + 1.0;
    double tail = std::pow(L, 1.0 - sigma) *
                  ((std::log(L) + gamma2) / (sigma - 1.0) + 1.0 / ((sigma - 1.0) * (sigma - 1.0)));
    EstermannValue out;
    out.value = acc.value();
    out.tail_bound = tail;
    return out;
}

complex estermann_hurwitz(complex s, const FareyArg& arg) {
    require_finite(s, "estermann_hurwitz");
    if (std::abs(s - complex(1.0, 0.0)) < 1e-10)
        throw ValidationError("estermann_hurwitz: pole at s = 1");
    if (arg.k > 200) throw ResourceError("estermann_hurwitz: k <= 200 budget");

    uint64_t k = arg.k;
    std::vector<complex> hz(k + 1);
    for (uint64_t a = 1; a <= k; ++a) hz[a] = hurwitz_zeta(s, double(a) / double(k));

    // roots of unity e(j/k)
    std::vector<complex> root(k);
    for (uint64_t j = 0; j < k; ++j) {
        double ph = 2 * kPi * double(j) / double(k);
        root[j] = complex(std::cos(ph), std::sin(ph));
    }

    ComplexSum acc;
    for (uint64_t a = 1; a <= k; ++a) {
        for (uint64_t b = 1; b <= k; ++b) {
            uint64_t idx = (a * b % k) * arg.h % k;
            acc.add(root[idx] * hz[a] * hz[b]);
        }
    }
    complex kfac = std::exp(-2.0 * s * std::log(double(k)));
    return kfac * acc.value();
}

LaurentData laurent_at_one(const FareyArg& arg) {
    if (arg.k > 200) throw ResourceError("laurent_at_one: k <= 200 budget");
    const double r = 0.25;

    // One D evaluation per node serves both coefficients:
    // c_n = (1/M) sum_j D(s_j) (s_j - 1)^{-n}.
    auto extract = [&](int M) -> LaurentData {
        ComplexSum acc2, acc1;
        for (int j = 0; j < M; ++j) {
            double ph = 2 * kPi * double(j) / double(M);
            complex offset = complex(r * std::cos(ph), r * std::sin(ph));
            complex d = estermann_hurwitz(complex(1.0, 0.0) + offset, arg);
            acc2.add(d * offset * offset);
            acc1.add(d * offset);
        }
        complex c2 = acc2.value() * (1.0 / double(M));
        complex c1 = acc1.value() * (1.0 / double(M));
        double imag_leak = std::max(std::abs(c2.imag()), std::abs(c1.imag()));
        if (imag_leak > 1e-7)
            throw PrecisionError("laurent_at_one: imaginary leakage " + std::to_string(imag_leak));
        LaurentData out;
        out.c_m2 = c2.real();
        out.c_m1 = c1.real();
        return out;
    };

    LaurentData a = extract(128);
    LaurentData b = extract(256);
    double drift = std::max(std::abs(a.c_m2 - b.c_m2), std::abs(a.c_m1 - b.c_m1));
    if (drift > 1e-8 * std::max(1.0, std::abs(b.c_m2)))
        throw PrecisionError("laurent_at_one: node doubling drift " + std::to_string(drift));
    return b;
}

double functional_equation_residual(complex s, const FareyArg& arg) {
    require_finite(s, "functional_equation_residual");
    complex one(1.0, 0.0);
    if (std::abs(s - one) < 1e-10 || std::abs(s) < 1e-10)
        throw ValidationError("functional_equation_residual: s and 1-s must avoid the pole");
    if (arg.k > 200) throw ResourceError("functional_equation_residual: k <= 200 budget");
    if (std::abs(s.imag()) > 20.0)
        throw ValidationError("functional_equation_residual: |Im s| <= 20 guard (cos growth)");

    complex lhs = estermann_hurwitz(s, arg);
    FareyArg bar = arg.inverse_arg();
    complex d_plus = estermann_hurwitz(one - s, bar);
    complex d_minus = estermann_hurwitz(one - s, bar.negated());
    complex G = std::pow(2 * kPi, s - one) * complex_gamma(one - s);
    complex rhs = 2.0 * G * G * std::pow(complex(double(arg.k), 0.0), one - 2.0 * s) *
                  (d_plus - std::cos(kPi * s) * d_minus);
    return std::abs(lhs - rhs) / (std::abs(lhs) + 1.0);
}

KloostermanSum incomplete_kloosterman(double A, double B, uint64_t q, uint64_t b, int64_t l) {
    if (q < 2) throw ValidationError("incomplete_kloosterman: q >= 2 required");
    if (b < 1) throw ValidationError("incomplete_kloosterman: b >= 1 required");
    if (!(A >= 0.0 && A < B && B < 2.0 * double(q)))
        throw ValidationError("incomplete_kloosterman: need 0 <= A < B < 2q");

    uint64_t lo = uint64_t(std::floor(A)) + 1;
    uint64_t hi = uint64_t(std::floor(B));
    uint64_t l_mod = uint64_t(((l % int64_t(q)) + int64_t(q)) % int64_t(q));

    ComplexSum acc;
    for (uint64_t a = lo; a <= hi; ++a) {
        if (std::gcd(a, q) != 1 || std::gcd(a, b) != 1) continue;
        uint64_t inv = mod_inverse(a % q, q);
        uint64_t num = uint64_t((uint128(l_mod) * inv) % q);
        double ph = 2 * kPi * double(num) / double(q);
        acc.add(complex(std::cos(ph), std::sin(ph)));
    }

    uint64_t g = l_mod == 0 ? q : std::gcd(l_mod, q);
    KloostermanSum out;
    out.sum = acc.value();
    out.bound_ratio = std::abs(out.sum) /
                      (std::sqrt(double(g)) * std::pow(double(q), 0.55) * std::pow(double(b), 0.05));
    return out;
}

}  // namespace mslab
