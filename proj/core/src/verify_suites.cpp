#include "verify_internal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mslab/arith.hpp"
#include "mslab/constants.hpp"
#include "mslab/errors.hpp"
#include "mslab/estermann.hpp"
#include "mslab/parallel.hpp"
#include "mslab/pins.hpp"
#include "mslab/rng.hpp"
#include "mslab/zeta.hpp"

namespace mslab::verify {

namespace {

using nlohmann::ordered_json;

ordered_json base_result(const std::string& suite, uint64_t trials, uint64_t seed) {
    ordered_json j;
    j["suite"] = suite;
    j["trials"] = trials;
    j["seed"] = seed;
    j["failures"] = 0;
    j["max_statistic"] = 0.0;
    j["pass"] = true;
    return j;
}

// Attach the pinned-regression comparison when this run matches the pinned
// sampling configuration.
void apply_pin(ordered_json& j, uint64_t trials, uint64_t seed, double pin, double measured) {
    if (trials == 10000 && seed == 42) {
        j["pinned_max"] = pin;
        bool ok = std::isfinite(pin) && measured <= pin * (1.0 + pins::kPinRelTol);
        if (!ok) j["pass"] = false;
    } else {
        j["pinned_max"] = nullptr;
    }
}

ordered_json suite_lemma15(uint64_t trials, uint64_t seed, unsigned threads) {
    CounterRng rng(seed);
    const uint64_t cap = 1'000'000'000;
    struct Quad {
        uint64_t m1, n1, m2, n2;
    };
    std::vector<Quad> quads(trials);
    for (auto& q : quads) {  // draws are serial so the stream is seed-determined
        q.m1 = rng.range(1, cap);
        q.m2 = rng.range(1, cap);
        while (std::gcd(q.m1, q.m2) != 1) q.m2 = rng.range(1, cap);
        q.n1 = rng.range(1, cap);
        q.n2 = rng.range(1, cap);
        while (std::gcd(q.n1, q.n2) != 1) q.n2 = rng.range(1, cap);
    }
    std::vector<uint8_t> bad(trials, 0);
    parallel_for(trials, threads, [&](uint64_t i) {
        bad[i] = gcd_identity_check(quads[i].m1, quads[i].n1, quads[i].m2, quads[i].n2) ? 0 : 1;
    });
    uint64_t failures = 0;
    for (auto b : bad) failures += b;
    ordered_json j = base_result("lemma15", trials, seed);
    j["failures"] = failures;
    j["pass"] = failures == 0;
    return j;
}

ordered_json suite_lemma16(uint64_t trials, uint64_t seed, unsigned threads) {
    CounterRng rng(seed);
    std::vector<std::pair<uint64_t, uint64_t>> draws(trials);
    for (auto& d : draws) {
        d.first = rng.log_range(16, 1'000'000);
        d.second = rng.range(1, 1'000'000);
    }
    std::vector<double> ratios(trials);
    parallel_for(trials, threads, [&](uint64_t i) {
        ratios[i] = gcd_range_sum(draws[i].first, 2 * draws[i].first, draws[i].second).bound_ratio;
    });
    double max_ratio = 0;
    for (double r : ratios) max_ratio = std::max(max_ratio, r);
    ordered_json j = base_result("lemma16", trials, seed);
    j["max_statistic"] = max_ratio;
    apply_pin(j, trials, seed, pins::kLemma16MaxBoundRatio, max_ratio);
    return j;
}

ordered_json suite_lemma17(uint64_t trials, uint64_t seed, unsigned threads) {
    CounterRng rng(seed);
    struct Draw {
        uint64_t q, b;
        int64_t l;
        double A, B;
    };
    std::vector<Draw> draws(trials);
    for (auto& d : draws) {
        d.q = rng.log_range(8, 10'000);
        d.b = rng.range(1, 10'000);
        d.l = int64_t(rng.range(0, 20'000)) - 10'000;
        double span = 2.0 * double(d.q);
        d.A = rng.real01() * (span - 2.0);
        d.B = d.A + 1.0 + rng.real01() * (span - d.A - 1.5);
        if (!(d.B < span)) d.B = std::nextafter(span, 0.0);
    }
    std::vector<double> ratios(trials);
    parallel_for(trials, threads, [&](uint64_t i) {
        ratios[i] = incomplete_kloosterman(draws[i].A, draws[i].B, draws[i].q, draws[i].b,
                                           draws[i].l)
                        .bound_ratio;
    });
    double max_ratio = 0;
    for (double r : ratios) max_ratio = std::max(max_ratio, r);
    ordered_json j = base_result("lemma17", trials, seed);
    j["max_statistic"] = max_ratio;
    apply_pin(j, trials, seed, pins::kLemma17MaxBoundRatio, max_ratio);
    return j;
}

ordered_json suite_prop1(uint64_t trials, uint64_t seed, unsigned threads) {
    const double T = 1000.0;
    MollifierParams params = MollifierParams::from_height(T);
    CounterRng rng(seed);
    std::vector<double> ts(trials);
    for (auto& t : ts) t = T + rng.real01() * T;
    std::vector<double> diffs(trials);
    parallel_for(trials, threads, [&](uint64_t i) {
        complex moll = inv_zeta_mollified(ts[i], params);
        complex truth = 1.0 / zeta_em(complex(1.0, ts[i]));
        diffs[i] = std::abs(moll - truth);
    });
    double sup = 0;
    for (double d : diffs) sup = std::max(sup, d);
    ordered_json j = base_result("prop1", trials, seed);
    j["max_statistic"] = sup;
    j["cutoff_x"] = params.X;
    j["pass"] = sup <= 5.0;
    return j;
}

ordered_json suite_laplace(uint64_t trials, uint64_t seed) {
    uint64_t n = std::max<uint64_t>(trials, 5);
    std::vector<complex> diffs(n);
    bool all_finite = true;
    bool lhs_positive = true;
    for (uint64_t i = 0; i < n; ++i) {
        double z = 0.05 + 0.10 * double(i) / double(n - 1);
        double t_cut = 19.0 / z;
        uint64_t l_cut = 16;
        while (double(l_cut + 1) * std::exp(-2 * 3.141592653589793 * double(l_cut) * std::sin(z)) >=
               1e-8)
            l_cut *= 2;
        LaplaceSample s = laplace_check(complex(z, 0.0), t_cut, l_cut);
        diffs[i] = s.diff;
        if (!std::isfinite(s.diff.real()) || !std::isfinite(s.diff.imag())) all_finite = false;
        if (!(s.lhs.real() > 0)) lhs_positive = false;
    }
    double scale = 0;
    for (auto d : diffs) scale = std::max(scale, std::abs(d));
    double max_dd = 0;
    for (uint64_t i = 2; i < n; ++i)
        max_dd = std::max(max_dd, std::abs(diffs[i] - 2.0 * diffs[i - 1] + diffs[i - 2]));
    double smooth = scale > 0 ? max_dd / scale : 0.0;
    ordered_json j = base_result("laplace", n, seed);
    j["max_statistic"] = smooth;
    j["diff_scale"] = scale;
    j["pass"] = all_finite && lhs_positive;
    return j;
}

ordered_json suite_estermann_fe(uint64_t trials, uint64_t seed) {
    CounterRng rng(seed);
    double max_res = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        uint64_t k = rng.range(1, 30);
        uint64_t h = 0;
        if (k > 1) {
            h = rng.range(1, k - 1);
            while (std::gcd(h, k) != 1) h = rng.range(1, k - 1);
        }
        double re, im;
        for (;;) {
            re = -1.0 + 3.0 * rng.real01();
            im = -10.0 + 20.0 * rng.real01();
            complex s(re, im);
            if (std::abs(s) > 0.15 && std::abs(s - complex(1.0, 0.0)) > 0.15) break;
        }
        double res = functional_equation_residual(complex(re, im), FareyArg(int64_t(h), k));
        max_res = std::max(max_res, res);
    }
    ordered_json j = base_result("estermann-fe", trials, seed);
    j["max_statistic"] = max_res;
    j["pass"] = max_res < 1e-6;
    return j;
}

ordered_json suite_laurent(uint64_t trials, uint64_t seed) {
    uint64_t k_max = std::clamp<uint64_t>(trials, 5, 30);
    double gamma = stieltjes(0);
    double max_err = 0;
    for (uint64_t k = 1; k <= k_max; ++k) {
        for (uint64_t h = (k == 1 ? 0 : 1); h < std::max<uint64_t>(k, 1); ++h) {
            if (k > 1 && std::gcd(h, k) != 1) continue;
            LaurentData ld = laurent_at_one(FareyArg(int64_t(h), k));
            double want_m2 = 1.0 / double(k);
            double want_m1 = 2.0 * (gamma - std::log(double(k))) / double(k);
            max_err = std::max({max_err, std::abs(ld.c_m2 - want_m2), std::abs(ld.c_m1 - want_m1)});
            if (k == 1) break;
        }
    }
    ordered_json j = base_result("laurent", k_max, seed);
    j["max_statistic"] = max_err;
    j["pass"] = max_err < 1e-6;
    return j;
}

}  // namespace

ordered_json run_suite(const std::string& suite, uint64_t trials, uint64_t seed, unsigned threads) {
    if (trials < 1) throw ValidationError("verify: trials >= 1 required");
    if (suite == "lemma15") return suite_lemma15(trials, seed, threads);
    if (suite == "lemma16") return suite_lemma16(trials, seed, threads);
    if (suite == "lemma17") return suite_lemma17(trials, seed, threads);
    if (suite == "prop1") return suite_prop1(trials, seed, threads);
    if (suite == "laplace") return suite_laplace(trials, seed);
    if (suite == "estermann-fe") return suite_estermann_fe(trials, seed);
    if (suite == "laurent") return suite_laurent(trials, seed);
    throw ValidationError("verify: unknown suite '" + suite +
                          "' (expected lemma15|lemma16|lemma17|prop1|laplace|estermann-fe|laurent)");
}

}  // namespace mslab::verify
