#pragma once

#include <cstdint>

#include "mslab/zeta.hpp"

namespace mslab {

// Reduced fraction h/k with the modular inverse of h precomputed. h is
// normalized to its least non-negative residue mod k, so -h/k is
// (k - h mod k)/k and the functional equation's two arguments are both
// well-formed FareyArgs.
struct FareyArg {
    uint64_t h = 0;
    uint64_t k = 1;
    uint64_t h_bar = 0;  // h * h_bar == 1 (mod k)

    FareyArg(int64_t h_raw, uint64_t k);
    FareyArg negated() const;      // -h/k
    FareyArg inverse_arg() const;  // h_bar/k
};

struct EstermannValue {
    complex value;
    double tail_bound = 0.0;  // integral-comparison bound on the dropped tail
};

// D(s; h/k) = sum d(l) l^{-s} e(l h/k), truncated at l_cut. Requires
// Re s >= 1.25 (use the continuation below elsewhere).
EstermannValue estermann_dirichlet(complex s, const FareyArg& arg, uint64_t l_cut);

// Continuation of D(s; h/k) through the bilinear Hurwitz identity
//   D(s; h/k) = k^{-2s} sum_{a,b=1..k} e(ab h/k) zeta(s, a/k) zeta(s, b/k),
// obtained by splitting l = mn over residues of m, n mod k. Valid for all
// s != 1; k <= 200 (k Hurwitz evaluations + k^2 mixing).
complex estermann_hurwitz(complex s, const FareyArg& arg);

struct LaurentData {
    double c_m2 = 0.0;  // coefficient of (s-1)^{-2}; expected 1/k
    double c_m1 = 0.0;  // coefficient of (s-1)^{-1}; expected 2(gamma - log k)/k
};

// Principal part of D(s; h/k) at s = 1 by contour quadrature on
// |s-1| = 1/4 with node doubling 128 -> 256.
LaurentData laurent_at_one(const FareyArg& arg);

// |LHS - RHS| / (|LHS| + 1) for the functional equation
//   D(s;h/k) = 2 G(s)^2 k^{1-2s} (D(1-s; h_bar/k) - cos(pi s) D(1-s; -h_bar/k)),
// G(s) = (2 pi)^{s-1} Gamma(1-s). Both sides via the Hurwitz continuation.
double functional_equation_residual(complex s, const FareyArg& arg);

struct KloostermanSum {
    complex sum;
    double bound_ratio = 0.0;  // |sum| / (gcd(l,q)^{1/2} q^{0.55} b^{0.05})
};

// Exact incomplete Kloosterman sum over a in (A, B], gcd(a,q)=gcd(a,b)=1,
// of e(l a_bar / q). Requires 0 <= A < B < 2q, q >= 2, b >= 1.
KloostermanSum incomplete_kloosterman(double A, double B, uint64_t q, uint64_t b, int64_t l);

// Modular inverse of a mod m for gcd(a, m) = 1.
uint64_t mod_inverse(uint64_t a, uint64_t m);

}  // namespace mslab
