#include <cmath>

#include "mslab/errors.hpp"
#include "mslab/zeta.hpp"
#include "quad.hpp"

namespace mslab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Initial panel width keyed to the oscillation scale ~ 2 pi / ln(t/2pi).
double moment_width(double t) {
    return std::min(0.5, kPi / std::max(std::log(std::max(t, 2.0)), 1.0));
}

IntegralEstimate to_estimate(const quad::Result<double>& r) {
    IntegralEstimate e;
    e.value = r.value;
    e.abs_err = r.abs_err;
    e.panels = r.panels;
    return e;
}

}  // namespace

IntegralEstimate fourth_moment(double T, double rel_tol, unsigned threads) {
    if (!(T >= 2.0 && T <= 1e5)) throw ValidationError("fourth_moment: need 2 <= T <= 1e5");
    auto f = [](double t) {
        double a = std::abs(zeta_half_line(t));
        double a2 = a * a;
        return a2 * a2;
    };
    return to_estimate(quad::integrate<double>(f, 1.0, T, moment_width, rel_tol, threads));
}

IntegralEstimate ratio_moment(double T, double k, double rel_tol, unsigned threads) {
    if (!(T >= 2.0 && T <= 1e5)) throw ValidationError("ratio_moment: need 2 <= T <= 1e5");
    if (!(k >= 0.0 && k <= 8.0)) throw ValidationError("ratio_moment: need 0 <= k <= 8");
    auto f = [k](double t) {
        double a = std::abs(zeta_half_line(t));
        double a2 = a * a;
        double num = a2 * a2;
        if (k == 0.0) return num;
        double den = std::abs(zeta_em(complex(1.0, 2.0 * t)));
        return num / std::pow(den, k);
    };
    return to_estimate(quad::integrate<double>(f, 1.0, T, moment_width, rel_tol, threads));
}

}  // namespace mslab
