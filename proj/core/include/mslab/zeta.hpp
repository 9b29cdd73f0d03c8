#pragma once

#include <complex>
#include <cstdint>

namespace mslab {

using complex = std::complex<double>;

// zeta(s) by Euler-Maclaurin with Bernoulli corrections through B30 and
// cutoff N = max(20, ceil(2|Im s|)). 10+ significant digits for Re s >= -1;
// usable (8+ digits) down to Re s ~ -2.5. Guard: |Im s| <= 10^6.
complex zeta_em(complex s);

// Hurwitz zeta(s, a) for 0 < a <= 1, same engine. hurwitz_zeta(s, 1) == zeta(s).
complex hurwitz_zeta(complex s, double a);

// zeta(1/2 + it): Riemann-Siegel with remainder terms C0..C4 for t > 30,
// Euler-Maclaurin below. Relative error <= 1e-6 for t <= 1e6.
complex zeta_half_line(double t);

// Internal evaluation routes, exposed so the crossover seam can be tested.
complex zeta_half_line_rs(double t);
complex zeta_half_line_em(double t);

// Riemann-Siegel theta, asymptotic series (t >= 10 for full accuracy).
double rs_theta(double t);

// Gamma(s) by a 9-term Lanczos approximation, reflection for Re s < 1/2.
// ~12+ significant digits for |s| <= 100.
complex complex_gamma(complex s);

// chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), the zeta functional-equation
// factor; built on complex_gamma.
complex zeta_functional_chi(complex s);

struct MollifierParams {
    double X = 0.0;        // Dirichlet-polynomial cutoff
    double T = 0.0;        // height scale the cutoff was derived from
    double epsilon = 0.05; // analytic-parameter default used by the bound suites

    // X = exp((2/shape_eps) (ln T)^{3/4}). shape_eps = 0.5 keeps X <= ~1.5e9
    // for T <= 10^4, matching the resource guard on the sum below.
    static MollifierParams from_height(double T, double shape_eps = 0.5);
};

// sum_{n<=X} mu(n) n^{-1-it} e^{-n/X}, the smoothed Moebius approximation
// to 1/zeta(1+it). Exact finite sum, compensated accumulation, mu shared
// from the arith sieve. Guard: X <= 1e9.
complex inv_zeta_mollified(double t, const MollifierParams& params);

// log zeta(s) = sum over prime powers p^m of 1/(m p^{ms}), truncated with a
// rigorous tail bound < 1e-10 (partial summation against pi(x) < 1.26 x/ln x).
// Requires Re s >= 1.2; raises a precision error when the bound cannot be
// met within the prime-streaming cap.
complex log_zeta_prime_sum(complex s);

struct IntegralEstimate {
    double value = 0.0;
    double abs_err = 0.0;
    uint64_t panels = 0;
};

// int_1^T |zeta(1/2+it)|^4 dt by adaptive Gauss-Kronrod panels keyed to the
// oscillation scale ~ 2 pi / ln(t/2pi). Halts when abs_err < tol*max(1,|I|).
IntegralEstimate fourth_moment(double T, double rel_tol = 1e-4, unsigned threads = 1);

// int_1^T |zeta(1/2+it)|^4 / |zeta(1+2it)|^k dt, same discipline; the
// denominator is always evaluated exactly (Euler-Maclaurin), never mollified.
IntegralEstimate ratio_moment(double T, double k, double rel_tol = 1e-4, unsigned threads = 1);

struct LaplaceSample {
    complex lhs;          // truncated integral int_0^{t_cut} e^{-zt}|zeta(1/2+it)|^2 dt
    complex series_main;  // 2 pi e^{iz/2} sum_{l<=l_cut} d(l) exp(2 pi i l e^{iz})
    complex diff;         // lhs - series_main
};

// Both sides of the Laplace-transform identity for |zeta(1/2+it)|^2 with
// explicit truncations; diff samples the holomorphic remainder.
LaplaceSample laplace_check(complex z, double t_cut, uint64_t l_cut);

}  // namespace mslab
