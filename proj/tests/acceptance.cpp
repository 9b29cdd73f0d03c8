// Acceptance suite: one test case per criterion, each printing a single
// [criterion NN] PASS/FAIL line. Regression pins live in mslab/pins.hpp;
// measured candidates are always printed so a pin refresh is copy-paste.

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include <json.hpp>

#include "mslab/arith.hpp"
#include "mslab/cli.hpp"
#include "mslab/constants.hpp"
#include "mslab/errors.hpp"
#include "mslab/estermann.hpp"
#include "mslab/parallel.hpp"
#include "mslab/pins.hpp"
#include "mslab/report.hpp"
#include "mslab/rng.hpp"
#include "mslab/zeta.hpp"
#include "oracle_helpers.hpp"
#include "subprocess_helpers.hpp"

using namespace mslab;
using testutil::fresh_dir;
using testutil::run_cli;
using testutil::slurp;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int n, bool ok, const std::string& detail) {
    std::printf("[criterion %02d] %s: %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(ok, "criterion ", n, ": ", detail);
}

bool pin_matches(double measured, double pin) {
    if (!std::isfinite(pin)) return false;  // unpinned
    return std::abs(measured - pin) <= pins::kPinRelTol * std::max(std::abs(pin), 1e-300);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

unsigned accept_threads() { return std::min(8u, hardware_threads()); }

}  // namespace

TEST_CASE("criterion 01 constant A reported by the CLI matches 1/pi^2") {
    Stopwatch sw;
    std::string dir = fresh_dir("acc1");
    auto r = run_cli("constants --series d2", dir);
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    double a = j["results"]["A"];
    double want = 1.0 / (kPi * kPi);
    double diff = std::abs(a - want);
    bool ok = diff < 1e-10 && sw.seconds() < 10.0;
    report(1, ok, "A = " + fmt(a) + ", |A - 1/pi^2| = " + fmt(diff) + ", " + fmt(sw.seconds()) +
                      " s");
}

TEST_CASE("criterion 02 constant B matches the closed form re-derived in-process") {
    Stopwatch sw;
    std::string dir = fresh_dir("acc2");
    auto r = run_cli("constants --series d2", dir);
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    double b = j["results"]["B"];
    double gamma = stieltjes(0);
    double zp2 = zeta_derivatives(2.0)[1];
    double want = (12 * gamma - 3) / (kPi * kPi) - 36 * zp2 / (kPi * kPi * kPi * kPi);
    double diff = std::abs(b - want);
    bool ok = diff < 1e-8 && sw.seconds() < 10.0;
    report(2, ok, "B = " + fmt(b) + ", closed form = " + fmt(want) + ", |diff| = " + fmt(diff) +
                      ", " + fmt(sw.seconds()) + " s");
}

TEST_CASE("criterion 03 sublinear summation equals the sieve oracle") {
    Stopwatch sw;
    bool ok = true;
    uint64_t first_bad = 0;

    SieveTable d = sieve_multiplicative(1, 10000, SieveKind::d);
    int128 run = 0;
    for (uint64_t x = 1; x <= 10000 && ok; ++x) {
        run += int64_t(d.at(x)) * int64_t(d.at(x));
        if (summatory_d2(x) != run) {
            ok = false;
            first_bad = x;
        }
    }

    CounterRng rng(42);
    std::vector<uint64_t> xs(1000);
    for (auto& x : xs) x = rng.range(1, 1000000);
    std::sort(xs.begin(), xs.end());
    int128 acc = 0;
    uint64_t covered = 0;
    std::size_t i = 0;
    const uint64_t kSeg = 1 << 20;
    while (covered < 1000000 && i < xs.size() && ok) {
        uint64_t lo = covered + 1, hi = std::min<uint64_t>(1000000, covered + kSeg);
        SieveTable t = sieve_multiplicative(lo, hi, SieveKind::d);
        for (uint64_t n = lo; n <= hi; ++n) {
            acc += int64_t(t.at(n)) * int64_t(t.at(n));
            while (i < xs.size() && xs[i] == n) {
                if (summatory_d2(n) != acc) {
                    ok = false;
                    first_bad = n;
                }
                ++i;
            }
        }
        covered = hi;
    }
    ok = ok && sw.seconds() < 60.0;
    report(3, ok,
           ok ? "exact equality on x <= 1e4 and 1000 random x <= 1e6, " + fmt(sw.seconds()) + " s"
              : "first mismatch at x = " + std::to_string(first_bad));
}

TEST_CASE("criterion 04 d2 error-term ratio bound and pinned grid maximum") {
    Stopwatch sw;
    auto rows = scan_error_term(10000, 100000000, 40, Series::d2, "", accept_threads());
    double max_ratio = 0;
    for (const auto& r : rows) max_ratio = std::max(max_ratio, std::abs(r.ratio));
    std::printf("[pin] kD2ScanMaxAbsRatio = %.17g\n", max_ratio);
    bool bounded = max_ratio <= 1.0;
    bool pinned = pin_matches(max_ratio, pins::kD2ScanMaxAbsRatio);
    bool in_time = sw.seconds() < 1800.0;
    report(4, bounded && pinned && in_time,
           "max |E(x)|/(sqrt(x) ln^5 x) = " + fmt(max_ratio) + " over 40 points in [1e4, 1e8], " +
               (pinned ? "matches pin" : "PIN MISMATCH") + ", " + fmt(sw.seconds()) + " s");
}

TEST_CASE("criterion 05 dcube error-term ratio stays below 1 on [1e4, 1e7]") {
    Stopwatch sw;
    auto rows = scan_error_term(10000, 10000000, 40, Series::d_cube, "", accept_threads());
    double max_ratio = 0;
    for (const auto& r : rows) max_ratio = std::max(max_ratio, std::abs(r.ratio));
    std::printf("[pin] kDcubeScanMaxAbsRatio = %.17g\n", max_ratio);
    bool bounded = max_ratio <= 1.0;
    bool pinned = pin_matches(max_ratio, pins::kDcubeScanMaxAbsRatio);
    bool in_time = sw.seconds() < 600.0;
    report(5, bounded && pinned && in_time,
           "max ratio = " + fmt(max_ratio) + ", " + (pinned ? "matches pin" : "PIN MISMATCH") +
               ", " + fmt(sw.seconds()) + " s");
}

TEST_CASE("criterion 06 mollifier tracks 1/zeta(1+it) within 5") {
    Stopwatch sw;
    const double T = 1000.0;
    MollifierParams params = MollifierParams::from_height(T);
    CounterRng rng(42);
    std::vector<double> ts(200);
    for (auto& t : ts) t = T + rng.real01() * T;
    std::vector<double> diffs(ts.size());
    parallel_for(ts.size(), accept_threads(), [&](uint64_t i) {
        complex moll = inv_zeta_mollified(ts[i], params);
        complex truth = 1.0 / zeta_em(complex(1.0, ts[i]));
        diffs[i] = std::abs(moll - truth);
    });
    double sup = 0;
    for (double v : diffs) sup = std::max(sup, v);
    bool ok = sup <= 5.0 && sw.seconds() < 300.0;
    report(6, ok, "X = " + fmt(params.X) + ", sup over 200 samples of |mollifier - 1/zeta| = " +
                      fmt(sup) + ", " + fmt(sw.seconds()) + " s");
}

TEST_CASE("criterion 07 moment integrals: shape band, ratio bound, pins") {
    Stopwatch sw;
    struct Probe {
        double T;
        double fourth_pin, ratio_pin;
    };
    const Probe probes[3] = {{1000.0, pins::kFourthMoment1e3, pins::kRatioK1Moment1e3},
                             {4000.0, pins::kFourthMoment4e3, pins::kRatioK1Moment4e3},
                             {16000.0, pins::kFourthMoment16e3, pins::kRatioK1Moment16e3}};
    bool ok = true;
    std::string detail;
    for (const auto& p : probes) {
        double lt = std::log(p.T);
        double norm_div = p.T * lt * lt * lt * lt;
        IntegralEstimate f = fourth_moment(p.T, 1e-4, accept_threads());
        IntegralEstimate r = ratio_moment(p.T, 1.0, 1e-4, accept_threads());
        std::printf("[pin] fourth_moment(%g) = %.17g\n", p.T, f.value);
        std::printf("[pin] ratio_moment(%g, 1) = %.17g\n", p.T, r.value);
        double fn = f.value / norm_div, rn = r.value / norm_div;
        if (!(fn >= 0.01 && fn <= 0.2)) ok = false;
        if (!(rn <= 10.0)) ok = false;
        if (!pin_matches(f.value, p.fourth_pin) || !pin_matches(r.value, p.ratio_pin)) ok = false;
        detail += "T=" + fmt(p.T) + " fourth/Tln4T=" + fmt(fn) + " ratio/Tln4T=" + fmt(rn) + "; ";
    }
    ok = ok && sw.seconds() < 1200.0;
    report(7, ok, detail + fmt(sw.seconds()) + " s");
}

TEST_CASE("criterion 08 estermann pole data and functional equation") {
    Stopwatch sw;
    double gamma = stieltjes(0);
    double max_laurent_err = 0;
    for (uint64_t k = 1; k <= 30; ++k) {
        for (uint64_t h = (k == 1 ? 0 : 1); h < std::max<uint64_t>(k, 1); ++h) {
            if (k > 1 && std::gcd(h, k) != 1) continue;
            LaurentData ld = laurent_at_one(FareyArg(int64_t(h), k));
            max_laurent_err = std::max(max_laurent_err, std::abs(ld.c_m2 - 1.0 / double(k)));
            max_laurent_err = std::max(
                max_laurent_err, std::abs(ld.c_m1 - 2.0 * (gamma - std::log(double(k))) / double(k)));
            if (k == 1) break;
        }
    }

    CounterRng rng(42);
    double max_residual = 0;
    int samples = 0;
    while (samples < 100) {
        uint64_t k = rng.range(1, 30);
        uint64_t h = 0;
        if (k > 1) {
            h = rng.range(1, k - 1);
            while (std::gcd(h, k) != 1) h = rng.range(1, k - 1);
        }
        complex s(-1.0 + 3.0 * rng.real01(), -10.0 + 20.0 * rng.real01());
        if (std::abs(s) < 0.15 || std::abs(s - complex(1.0, 0.0)) < 0.15) continue;
        ++samples;
        max_residual =
            std::max(max_residual, functional_equation_residual(s, FareyArg(int64_t(h), k)));
    }
    bool ok = max_laurent_err < 1e-6 && max_residual < 1e-6 && sw.seconds() < 300.0;
    report(8, ok, "max laurent error = " + fmt(max_laurent_err) + ", max FE residual = " +
                      fmt(max_residual) + " over 100 strip samples, " + fmt(sw.seconds()) + " s");
}

TEST_CASE("criterion 09 exact lemma suites: gcd identity and ramanujan sums") {
    Stopwatch sw;
    CounterRng rng(42);
    uint64_t failures = 0;
    for (int i = 0; i < 100000; ++i) {
        uint64_t m1 = rng.range(1, 1000000000), m2 = rng.range(1, 1000000000);
        while (std::gcd(m1, m2) != 1) m2 = rng.range(1, 1000000000);
        uint64_t n1 = rng.range(1, 1000000000), n2 = rng.range(1, 1000000000);
        while (std::gcd(n1, n2) != 1) n2 = rng.range(1, 1000000000);
        if (!gcd_identity_check(m1, n1, m2, n2)) ++failures;
    }

    uint64_t ram_failures = 0;
    for (uint64_t q = 2; q <= 500; ++q) {
        for (int64_t l = -50; l <= 50; ++l) {
            auto got = incomplete_kloosterman(0, double(q), q, 1, l);
            double want = double(oracle::ramanujan_sum(q, l));
            long long rounded = std::llround(got.sum.real());
            if (rounded != (long long)want || std::abs(got.sum.real() - want) > 1e-7 ||
                std::abs(got.sum.imag()) > 1e-7)
                ++ram_failures;
        }
    }
    bool ok = failures == 0 && ram_failures == 0 && sw.seconds() < 120.0;
    report(9, ok, "gcd identity failures " + std::to_string(failures) + "/1e5, ramanujan failures " +
                      std::to_string(ram_failures) + " over q <= 500 and |l| <= 50, " +
                      fmt(sw.seconds()) + " s");
}

TEST_CASE("criterion 10 repeated runs produce byte-identical artifacts") {
    Stopwatch sw;
    bool ok = true;
    std::string detail;

    {  // identical scan invocation repeated: CSV and stdout byte-identical
        std::string d = fresh_dir("acc10a");
        std::string o = d + "/scan.csv";
        auto a = run_cli("scan --kind d2 --from 10000 --to 100000 --points 5 --out " + o, d);
        std::string first = slurp(o);
        auto b = run_cli("scan --kind d2 --from 10000 --to 100000 --points 5 --out " + o, d);
        if (a.exit_code != 0 || b.exit_code != 0 || first.empty() || slurp(o) != first ||
            a.out != b.out) {
            ok = false;
            detail += "scan differs; ";
        }
        // and from a cold cache in another directory: same bytes
        std::string d2 = fresh_dir("acc10b");
        std::string o2 = d2 + "/scan.csv";
        run_cli("scan --kind d2 --from 10000 --to 100000 --points 5 --out " + o2, d2);
        if (slurp(o2) != first) {
            ok = false;
            detail += "scan cache-dependent; ";
        }
    }
    {  // verify JSON summary on stdout
        std::string d = fresh_dir("acc10c");
        auto a = run_cli("verify --suite lemma16 --trials 300 --seed 42", d);
        auto b = run_cli("verify --suite lemma16 --trials 300 --seed 42", d);
        if (a.out != b.out || a.out.empty()) {
            ok = false;
            detail += "verify differs; ";
        }
    }
    {  // moments CSV
        std::string d1 = fresh_dir("acc10d"), d2 = fresh_dir("acc10e");
        std::string o1 = d1 + "/m.csv", o2 = d2 + "/m.csv";
        run_cli("moments --which ratio --k 1 --t-max 60 --out " + o1, d1);
        run_cli("moments --which ratio --k 1 --t-max 60 --out " + o2, d2);
        if (slurp(o1).empty() || slurp(o1) != slurp(o2)) {
            ok = false;
            detail += "moments differ; ";
        }
    }
    {  // SVG
        std::string d = fresh_dir("acc10f");
        std::string csv = d + "/in.csv", s1 = d + "/a.svg", s2 = d + "/b.svg";
        auto rows = scan_error_term(10000, 100000, 4, Series::d2);
        emit_scan_csv(rows, csv);
        run_cli("report --in " + csv + " --svg " + s1, d);
        run_cli("report --in " + csv + " --svg " + s2, d);
        if (slurp(s1).empty() || slurp(s1) != slurp(s2)) {
            ok = false;
            detail += "svg differs; ";
        }
    }
    {  // constants JSON summary: identical invocation repeated
        std::string d = fresh_dir("acc10g");
        std::string s = d + "/sum.json";
        run_cli("constants --series d2 --summary " + s, d);
        std::string first = slurp(s);
        run_cli("constants --series d2 --summary " + s, d);
        if (first.empty() || slurp(s) != first) {
            ok = false;
            detail += "constants summary differs; ";
        }
    }
    ok = ok && sw.seconds() < 600.0;
    report(10, ok, ok ? "scan/verify/moments/svg/constants artifacts byte-identical, " +
                            fmt(sw.seconds()) + " s"
                      : detail);
}
