#pragma once

// Internal: the Euler-Maclaurin engine instantiated for double and long
// double. The long-double route serves the contour quadrature in constants,
// where the coefficient fit wants a few guard digits.

#include <complex>

namespace mslab::detail {

extern const long double kBern2k[15];

template <class F>
std::complex<F> hurwitz_em_impl(std::complex<F> s, F a);

extern template std::complex<double> hurwitz_em_impl<double>(std::complex<double>, double);
extern template std::complex<long double> hurwitz_em_impl<long double>(std::complex<long double>,
                                                                       long double);

}  // namespace mslab::detail
