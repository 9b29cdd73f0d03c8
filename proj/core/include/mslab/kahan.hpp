#pragma once

#include <cmath>
#include <complex>

namespace mslab {

// Kahan-Babuska-Neumaier compensated accumulator. All reductions that feed
// reproducible artifacts run through this in a fixed index order.
template <class T = double>
struct CompensatedSum {
    T sum{};
    T comp{};

    void add(T x) {
        T t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    T value() const { return sum + comp; }
};

template <class F = double>
struct ComplexSumT {
    CompensatedSum<F> re, im;

    void add(std::complex<F> z) {
        re.add(z.real());
        im.add(z.imag());
    }

    std::complex<F> value() const { return {re.value(), im.value()}; }
};

using ComplexSum = ComplexSumT<double>;

}  // namespace mslab
