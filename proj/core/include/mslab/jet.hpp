#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace mslab {

// Truncated Taylor series ("jet") arithmetic: c[i] holds f^(i)(x0)/i!.
// Used for the Riemann-Siegel remainder coefficients (derivatives of the
// auxiliary cos-quotient up to order 12) and for zeta derivatives at a
// real point. The recurrences for exp/sin/cos are the standard ODE forms.
template <class T, int N>
struct Jet {
    std::array<T, N> c{};

    static Jet constant(T v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    static Jet variable(T x0) {
        Jet j;
        j.c[0] = x0;
        if constexpr (N > 1) j.c[1] = T(1);
        return j;
    }

    T deriv(int k) const {
        T f = 1;
        for (int i = 2; i <= k; ++i) f *= T(i);
        return c[std::size_t(k)] * f;
    }

    Jet operator+(const Jet& o) const {
        Jet r;
        for (int i = 0; i < N; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Jet operator-(const Jet& o) const {
        Jet r;
        for (int i = 0; i < N; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Jet operator*(const Jet& o) const {
        Jet r;
        for (int i = 0; i < N; ++i) {
            T acc = 0;
            for (int j = 0; j <= i; ++j) acc += c[j] * o.c[i - j];
            r.c[i] = acc;
        }
        return r;
    }
    Jet operator*(T s) const {
        Jet r;
        for (int i = 0; i < N; ++i) r.c[i] = c[i] * s;
        return r;
    }
    Jet operator/(const Jet& o) const {
        Jet q;
        for (int i = 0; i < N; ++i) {
            T acc = c[i];
            for (int j = 0; j < i; ++j) acc -= q.c[j] * o.c[i - j];
            q.c[i] = acc / o.c[0];
        }
        return q;
    }

    friend Jet exp(const Jet& f) {
        Jet e;
        e.c[0] = std::exp(f.c[0]);
        for (int k = 1; k < N; ++k) {
            T acc = 0;
            for (int i = 1; i <= k; ++i) acc += T(i) * f.c[i] * e.c[k - i];
            e.c[k] = acc / T(k);
        }
        return e;
    }

    // cos and sin propagate together.
    friend void sincos(const Jet& f, Jet& s, Jet& co) {
        s.c[0] = std::sin(f.c[0]);
        co.c[0] = std::cos(f.c[0]);
        for (int k = 1; k < N; ++k) {
            T sa = 0, ca = 0;
            for (int i = 1; i <= k; ++i) {
                sa += T(i) * f.c[i] * co.c[k - i];
                ca += T(i) * f.c[i] * s.c[k - i];
            }
            s.c[k] = sa / T(k);
            co.c[k] = -ca / T(k);
        }
    }

    friend Jet cos(const Jet& f) {
        Jet s, co;
        sincos(f, s, co);
        return co;
    }
};

}  // namespace mslab
