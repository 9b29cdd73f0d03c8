#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mslab/int128.hpp"
#include "mslab/zeta.hpp"

namespace mslab {

// Dirichlet series whose summatory main term is extracted:
//   d2     : zeta^4(s)/zeta(2s)            (sum of d^2)
//   d_cube : zeta^4(s)/zeta^3(2s) * G1(s)  (sum of d(n^3))
enum class Series { d2, d_cube };

// Stieltjes constant gamma_k, k <= 3, to 12+ significant digits
// (Euler-Maclaurin acceleration of the defining limit).
double stieltjes(unsigned k);

// zeta and its first three derivatives at a real point s0 > 1,
// by Euler-Maclaurin differentiated through jet arithmetic.
std::array<double, 4> zeta_derivatives(double s0);

// Euler product G1(s) = prod_p (1 + 2 p^-s) / ((1 - p^-s)(1 + p^-s)^3),
// truncated at primes <= prime_bound; absolutely convergent for Re s > 1/3.
complex euler_product_g1(complex s, uint32_t prime_bound = 100000);

struct ResidueOptions {
    double radius = 0.25;          // contour |s-1| = radius
    unsigned nodes = 128;          // trapezoid nodes (doubled for the check)
    uint32_t prime_bound = 100000; // G1 truncation (d_cube only)
};

// x P(log x) as the residue at s = 1 of F(s) x^s / s, by the trapezoid rule
// on the circle |s-1| = radius. Node doubling past 1e-8 relative drift
// raises a precision error.
double residue_main_term(double x, Series series, const ResidueOptions& opt = {});

struct MainTermPoly {
    Series series = Series::d2;
    double a = 0, b = 0, c = 0, d = 0;  // P(y) = a y^3 + b y^2 + c y + d
    unsigned digits_valid = 0;

    double eval(double y) const {  // Horner, fixed order
        return ((a * y + b) * y + c) * y + d;
    }
};

// Least-squares fit of (A,B,C,D) from residues at x = 1e3..1e8 on the
// Vandermonde system in log x; digits_valid estimated from a second
// extraction at contour radius 1/3.
MainTermPoly main_term_coefficients(Series series, const ResidueOptions& opt = {});

struct ScanRow {
    uint64_t x = 0;
    int128 sum = 0;
    double main = 0;   // x P(log x)
    double e = 0;      // sum - main
    double ratio = 0;  // e / (sqrt(x) ln^5 x)
};

// One row: exact sum from arith, main term from the residue.
ScanRow error_term(uint64_t x, Series series);

// Geometric grid of `points` values on [x_from, x_to], ascending. When
// checkpoint_path is set, rows are appended there as JSON lines (fsync per
// row) and a rerun resumes after the last complete row; a corrupt
// checkpoint raises IntegrityError.
std::vector<ScanRow> scan_error_term(uint64_t x_from, uint64_t x_to, unsigned points,
                                     Series series, const std::string& checkpoint_path = "",
                                     unsigned threads = 1);

// The grid used by scan_error_term.
std::vector<uint64_t> scan_grid(uint64_t x_from, uint64_t x_to, unsigned points);

}  // namespace mslab
