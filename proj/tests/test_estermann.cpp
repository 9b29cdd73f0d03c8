#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mslab/cli.hpp"
#include "mslab/constants.hpp"
#include "mslab/errors.hpp"
#include "mslab/estermann.hpp"
#include "mslab/pins.hpp"
#include "mslab/rng.hpp"
#include "oracle_helpers.hpp"

using namespace mslab;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_SUITE_BEGIN("estermann");

TEST_CASE("farey normalization and inverse") {
    FareyArg a(7, 5);  // 7 = 2 mod 5
    CHECK(a.h == 2);
    CHECK(a.h_bar == 3);  // 2*3 = 6 = 1 mod 5
    FareyArg neg = a.negated();
    CHECK(neg.h == 3);
    FareyArg b(-1, 4);
    CHECK(b.h == 3);
    CHECK_THROWS_AS(FareyArg(2, 4), ValidationError);
    CHECK_NOTHROW(FareyArg(0, 1));
}

TEST_CASE("periodicity: h and h+k give the same argument") {
    FareyArg a(2, 7), b(9, 7), c(-5, 7);
    CHECK(a.h == b.h);
    CHECK(a.h == c.h);
    CHECK(a.h_bar == b.h_bar);
}

TEST_CASE("k=1 reduces to zeta squared") {
    complex v = estermann_hurwitz(complex(2.0, 0.0), FareyArg(0, 1));
    CHECK(v.real() == doctest::Approx(std::pow(kPi, 4) / 36).epsilon(1e-11));
    complex s(-0.5, 2.0);
    complex z = zeta_em(s);
    CHECK(std::abs(estermann_hurwitz(s, FareyArg(0, 1)) - z * z) < 1e-10);
    CHECK(estermann_hurwitz(complex(0.0, 0.0), FareyArg(0, 1)).real() ==
          doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("dirichlet truncation: guards, Cauchy shrink, dual agreement") {
    FareyArg arg(1, 2);
    CHECK_THROWS_AS(estermann_dirichlet(complex(1.0, 0.0), arg, 5000), ValidationError);
    CHECK_THROWS_AS(estermann_dirichlet(complex(2.0, 0.0), arg, 10), ValidationError);

    auto a = estermann_dirichlet(complex(2.0, 0.0), arg, 1000);
    auto b = estermann_dirichlet(complex(2.0, 0.0), arg, 10000);
    CHECK(std::abs(a.value - b.value) < a.tail_bound);

    auto dir = estermann_dirichlet(complex(2.0, 0.0), FareyArg(1, 3), 10000);
    complex hur = estermann_hurwitz(complex(2.0, 0.0), FareyArg(1, 3));
    CHECK(std::abs(dir.value - hur) < dir.tail_bound + 1e-6);
}

TEST_CASE("dual agreement at random arguments on Re s = 2") {
    CounterRng rng(31);
    for (int i = 0; i < 50; ++i) {
        uint64_t k = rng.range(1, 50);
        uint64_t h = 0;
        if (k > 1) {
            h = rng.range(1, k - 1);
            while (std::gcd(h, k) != 1) h = rng.range(1, k - 1);
        }
        complex s(2.0, -5.0 + 10.0 * rng.real01());
        FareyArg arg(int64_t(h), k);
        auto dir = estermann_dirichlet(s, arg, 20000);
        complex hur = estermann_hurwitz(s, arg);
        CHECK(std::abs(dir.value - hur) <= dir.tail_bound + 1e-6);
    }
}

TEST_CASE("conjugation symmetry") {
    CounterRng rng(33);
    for (int i = 0; i < 20; ++i) {
        uint64_t k = rng.range(2, 30);
        uint64_t h = rng.range(1, k - 1);
        while (std::gcd(h, k) != 1) h = rng.range(1, k - 1);
        complex s(0.3 + 1.4 * rng.real01(), -8 + 16 * rng.real01());
        if (std::abs(s - complex(1.0, 0.0)) < 0.1) continue;
        FareyArg arg(int64_t(h), k);
        complex lhs = estermann_hurwitz(std::conj(s), arg.negated());
        complex rhs = std::conj(estermann_hurwitz(s, arg));
        CHECK(std::abs(lhs - rhs) < 1e-9 * (std::abs(rhs) + 1));
    }
}

TEST_CASE("laurent principal part matches the closed forms") {
    double gamma = stieltjes(0);
    LaurentData l1 = laurent_at_one(FareyArg(0, 1));
    CHECK(l1.c_m2 == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(l1.c_m1 == doctest::Approx(1.1544313298).epsilon(1e-8));

    LaurentData l3 = laurent_at_one(FareyArg(1, 3));
    CHECK(l3.c_m2 == doctest::Approx(1.0 / 3).epsilon(1e-8));
    CHECK(l3.c_m1 == doctest::Approx(2 * (gamma - std::log(3.0)) / 3).epsilon(1e-8));

    // principal part independent of h
    LaurentData l3b = laurent_at_one(FareyArg(2, 3));
    CHECK(l3.c_m2 == doctest::Approx(l3b.c_m2).epsilon(1e-10));
    CHECK(l3.c_m1 == doctest::Approx(l3b.c_m1).epsilon(1e-10));
}

TEST_CASE("functional equation residual examples") {
    CHECK(functional_equation_residual(complex(0.3, 0.0), FareyArg(2, 5)) < 1e-6);
    CHECK(functional_equation_residual(complex(0.5, 3.0), FareyArg(3, 7)) < 1e-6);
    CHECK(functional_equation_residual(complex(0.3, 0.0), FareyArg(0, 1)) < 1e-8);
}

TEST_CASE("functional equation guards") {
    CHECK_THROWS_AS(functional_equation_residual(complex(0.5, 25.0), FareyArg(1, 3)),
                    ValidationError);
    CHECK_THROWS_AS(functional_equation_residual(complex(1.0, 0.0), FareyArg(1, 3)),
                    ValidationError);
}

TEST_CASE("kloosterman examples") {
    auto k5 = incomplete_kloosterman(0, 5, 5, 1, 1);
    CHECK(k5.sum.real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(k5.sum.imag()) < 1e-12);
    CHECK(std::abs(incomplete_kloosterman(0, 4, 4, 1, 1).sum) < 1e-12);
    CHECK(incomplete_kloosterman(0, 3, 3, 1, 1).sum.real() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("kloosterman guards") {
    CHECK_THROWS_AS(incomplete_kloosterman(5, 4, 7, 1, 1), ValidationError);
    CHECK_THROWS_AS(incomplete_kloosterman(0, 20, 7, 1, 1), ValidationError);  // B >= 2q
    CHECK_THROWS_AS(incomplete_kloosterman(0, 3, 1, 1, 1), ValidationError);   // q < 2
}

TEST_CASE("complete sums reduce to ramanujan sums") {
    CounterRng rng(37);
    for (int i = 0; i < 150; ++i) {
        uint64_t q = rng.range(2, 500);
        int64_t l = int64_t(rng.range(0, 100)) - 50;
        auto got = incomplete_kloosterman(0, double(q), q, 1, l);
        CHECK(std::abs(got.sum.real() - double(oracle::ramanujan_sum(q, l))) < 1e-7);
        CHECK(std::abs(got.sum.imag()) < 1e-7);
    }
}

TEST_CASE("trivial bound |sum| <= B - A + 1") {
    CounterRng rng(39);
    for (int i = 0; i < 200; ++i) {
        uint64_t q = rng.range(2, 2000);
        uint64_t b = rng.range(1, 100);
        int64_t l = int64_t(rng.range(0, 200)) - 100;
        double A = rng.real01() * (2.0 * q - 2);
        double B = A + 1 + rng.real01() * (2.0 * q - A - 1.5);
        auto got = incomplete_kloosterman(A, B, q, b, l);
        CHECK(std::abs(got.sum) <= B - A + 1);
        CHECK(got.bound_ratio >= 0);
    }
}

TEST_CASE("lemma17 suite: empirical maximum matches the pinned constant") {
    cli::RunConfig cfg;
    cfg.command = cli::Command::verify;
    cfg.params = {{"suite", "lemma17"}, {"trials", "10000"}};
    cfg.seed = 42;
    cfg.threads = 4;
    cfg.cache_dir = std::string(MSLAB_TEST_TMP) + "/lemma17pin";
    std::ostringstream out, diag;
    cli::run(cfg, out, diag);
    auto j = nlohmann::json::parse(out.str());
    double measured = j["results"]["max_statistic"];
    std::printf("[pin] kLemma17MaxBoundRatio = %.17g\n", measured);
    CHECK(j["results"]["pass"] == true);
    CHECK(measured ==
          doctest::Approx(mslab::pins::kLemma17MaxBoundRatio).epsilon(mslab::pins::kPinRelTol));
}

TEST_SUITE_END();
