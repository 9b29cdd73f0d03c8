#pragma once

// Internal adaptive Gauss-Kronrod (7-15) panel integrator shared by the
// moment integrals and the Laplace-transform check. Panel evaluations may
// run in parallel; the reduction is a fixed-order compensated pass, so the
// result is independent of the thread count.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

#include "mslab/errors.hpp"
#include "mslab/kahan.hpp"
#include "mslab/parallel.hpp"

namespace mslab::quad {

// QUADPACK qk15 abscissae/weights.
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class V>
struct Panel {
    double a = 0, b = 0;
    V integral{};
    double err = 0;
};

template <class V, class F>
Panel<V> eval_panel(const F& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    V fc = f(c);
    V i15 = fc * kWgk[7];
    V i7 = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        V f1 = f(c - dx);
        V f2 = f(c + dx);
        i15 = i15 + (f1 + f2) * kWgk[j];
        if (j % 2 == 1) i7 = i7 + (f1 + f2) * kWg[j / 2];
    }
    Panel<V> p;
    p.a = a;
    p.b = b;
    p.integral = i15 * h;
    p.err = std::abs(i15 * h - i7 * h);
    return p;
}

template <class V>
struct Result {
    V value{};
    double abs_err = 0;
    std::uint64_t panels = 0;
};

template <class V>
void reduce(const std::vector<Panel<V>>& panels, V& total, double& err) {
    if constexpr (std::is_same_v<V, double>) {
        CompensatedSum<double> vs;
        CompensatedSum<double> es;
        for (const auto& p : panels) {
            vs.add(p.integral);
            es.add(p.err);
        }
        total = vs.value();
        err = es.value();
    } else {
        ComplexSum vs;
        CompensatedSum<double> es;
        for (const auto& p : panels) {
            vs.add(p.integral);
            es.add(p.err);
        }
        total = vs.value();
        err = es.value();
    }
}

// widths(t) gives the initial panel width at t. Halts once
// abs_err < rel_tol * max(1, |value|); panel cap exceeded raises
// PrecisionError carrying the partial estimate.
template <class V, class F, class W>
Result<V> integrate(const F& f, double a, double b, const W& width, double rel_tol,
                    unsigned threads, std::uint64_t panel_cap = 1u << 21) {
    std::vector<std::pair<double, double>> spans;
    for (double t = a; t < b;) {
        double w = std::max(1e-6, width(t));
        double next = std::min(b, t + w);
        spans.emplace_back(t, next);
        t = next;
    }
    if (spans.empty()) spans.emplace_back(a, b);

    std::vector<Panel<V>> panels(spans.size());
    parallel_for(spans.size(), threads, [&](std::uint64_t i) {
        panels[i] = eval_panel<V>(f, spans[i].first, spans[i].second);
    });

    for (;;) {
        V total;
        double err;
        reduce(panels, total, err);
        double tol_abs = rel_tol * std::max(1.0, std::abs(total));
        if (err < tol_abs) {
            Result<V> r;
            r.value = total;
            r.abs_err = err;
            r.panels = panels.size();
            return r;
        }
        if (panels.size() >= panel_cap)
            throw PrecisionError("quadrature panel cap reached before tolerance",
                                 double(std::abs(total)), err, panels.size());

        double share = tol_abs / (2.0 * double(panels.size()));
        std::vector<std::size_t> split;
        for (std::size_t i = 0; i < panels.size(); ++i)
            if (panels[i].err > share) split.push_back(i);
        if (split.empty()) {  // forced progress: split the worst panel
            std::size_t worst = 0;
            for (std::size_t i = 1; i < panels.size(); ++i)
                if (panels[i].err > panels[worst].err) worst = i;
            split.push_back(worst);
        }

        std::vector<Panel<V>> halves(split.size() * 2);
        parallel_for(split.size(), threads, [&](std::uint64_t i) {
            const Panel<V>& p = panels[split[i]];
            double mid = 0.5 * (p.a + p.b);
            halves[2 * i] = eval_panel<V>(f, p.a, mid);
            halves[2 * i + 1] = eval_panel<V>(f, mid, p.b);
        });

        std::vector<Panel<V>> next;
        next.reserve(panels.size() + split.size());
        std::size_t si = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (si < split.size() && split[si] == i) {
                next.push_back(halves[2 * si]);
                next.push_back(halves[2 * si + 1]);
                ++si;
            } else {
                next.push_back(panels[i]);
            }
        }
        panels = std::move(next);
    }
}

}  // namespace mslab::quad
