#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ucpt/uproc.hpp"

using ucpt::Kernel;
using ucpt::Series;

namespace {

const Series kZeroOne = Series::univariate({0.0, 1.0, 0.0, 1.0});

Series diag_pairs(std::initializer_list<double> xs) {
    std::vector<double> v(xs);
    return Series::bivariate(v, v);
}

}  // namespace

TEST_CASE("prefix U-statistics match pair enumeration") {
    const auto u = ucpt::prefix_u(Kernel::builtin("gmd"), kZeroOne);
    CHECK(u[2] == doctest::Approx(1.0));
    CHECK(u[3] == doctest::Approx(2.0 / 3.0));
    CHECK(u[4] == doctest::Approx(2.0 / 3.0));

    const auto uv = ucpt::prefix_u(Kernel::builtin("variance"),
                                   Series::univariate({0.0, 1.0}));
    CHECK(uv[2] == doctest::Approx(0.5));

    const auto uk = ucpt::prefix_u(Kernel::builtin("kendall"),
                                   diag_pairs({1.0, 2.0, 3.0}));
    CHECK(uk[3] == doctest::Approx(1.0));

    CHECK_THROWS_AS(ucpt::prefix_u(Kernel::builtin("gmd"),
                                   Series::univariate({1.0})),
                    ucpt::SampleTooSmallError);
}

TEST_CASE("suffix U-statistics mirror prefix on the reversed series") {
    const auto us = ucpt::suffix_u(Kernel::builtin("gmd"), kZeroOne);
    CHECK(us[2] == doctest::Approx(1.0));  // U_{3:4} = |0-1|
    CHECK(us[0] == doctest::Approx(2.0 / 3.0));

    const auto uk = ucpt::suffix_u(Kernel::builtin("kendall"),
                                   diag_pairs({1.0, 2.0, 3.0}));
    CHECK(uk[1] == doctest::Approx(1.0));  // U_{2:3}, one concordant pair

    ucpt::Xoshiro256pp rng(11);
    for (const char* name : {"gmd", "variance", "covariance", "kendall"}) {
        const Kernel k = Kernel::builtin(name);
        const int dim = k.arity() == ucpt::Arity::univariate ? 1 : 2;
        for (int rep = 0; rep < 20; ++rep) {
            const int n = 4 + static_cast<int>(rng.uniform01() * 40);
            const Series s = oracles::random_series(n, dim, rng);
            const auto suf = ucpt::suffix_u(k, s);
            const auto pre_rev = ucpt::prefix_u(k, s.reversed());
            for (int j = 2; j <= n; ++j) {
                // U over the last j observations == prefix of the reversal
                CHECK(suf[n - j] == doctest::Approx(pre_rev[j]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("difference processes on the hand-enumerated series") {
    const auto d = ucpt::diff_processes(Kernel::builtin("gmd"), kZeroOne);
    CHECK(d.n == 4);
    CHECK(d.d_first_vs_full[1] == 0.0);
    CHECK(d.d_first_vs_full[2] == doctest::Approx(2.0 / 3.0));
    CHECK(d.d_first_vs_full[3] == doctest::Approx(0.0));
    CHECK(d.d_first_vs_full[4] == 0.0);
    for (int k = 1; k <= 4; ++k) CHECK(d.d_first_vs_last[k] == doctest::Approx(0.0));
    CHECK(d.fvf_lo == 2);
    CHECK(d.fvf_hi == 4);
    CHECK(d.fvl_lo == 2);
    CHECK(d.fvl_hi == 2);

    CHECK_THROWS_AS(ucpt::diff_processes(Kernel::builtin("gmd"),
                                         Series::univariate({1.0, 2.0, 3.0})),
                    ucpt::SampleTooSmallError);
}

TEST_CASE("constant series yields identically zero gmd processes") {
    const Series c = Series::univariate(std::vector<double>(16, 3.25));
    const auto d = ucpt::diff_processes(Kernel::builtin("gmd"), c);
    for (int k = 0; k <= d.n; ++k) {
        CHECK(d.d_first_vs_full[k] == 0.0);
        CHECK(d.d_first_vs_last[k] == 0.0);
    }
}

TEST_CASE("both processes agree with the O(n^3) oracle") {
    ucpt::Xoshiro256pp rng(515);
    int cases = 0;
    while (cases < 200) {
        for (const char* name : {"gmd", "variance", "covariance", "kendall"}) {
            const Kernel k = Kernel::builtin(name);
            const int dim = k.arity() == ucpt::Arity::univariate ? 1 : 2;
            const int n = 4 + static_cast<int>(rng.uniform01() * 56);
            const Series s = oracles::random_series(n, dim, rng);

            const auto d = ucpt::diff_processes(k, s);
            const auto want = oracles::diff_direct(k, s);
            double scale = 1.0;
            for (int i = 1; i <= n; ++i) {
                scale = std::max({scale, std::fabs(want.d_fvf[i]),
                                  std::fabs(want.d_fvl[i])});
            }
            for (int i = 1; i <= n; ++i) {
                CHECK(std::fabs(d.d_first_vs_full[i] - want.d_fvf[i]) <= 1e-9 * scale);
                CHECK(std::fabs(d.d_first_vs_last[i] - want.d_fvl[i]) <= 1e-9 * scale);
            }
            ++cases;
        }
    }
}

TEST_CASE("serial reference and production paths coincide") {
    ucpt::Xoshiro256pp rng(99);
    for (const char* name : {"gmd", "variance", "kendall"}) {
        const Kernel k = Kernel::builtin(name);
        const int dim = k.arity() == ucpt::Arity::univariate ? 1 : 2;
        for (int rep = 0; rep < 10; ++rep) {
            const int n = 4 + static_cast<int>(rng.uniform01() * 600);
            const Series s = oracles::random_series(n, dim, rng);
            const auto a = ucpt::diff_processes(k, s);
            const auto b = ucpt::serial::diff_processes(k, s);
            double max_h = 1.0;
            if (k.kind() == ucpt::KernelKind::gmd) {
                for (int i = 1; i < n; ++i) {
                    max_h = std::max(max_h, std::fabs(s.xs()[i] - s.xs()[0]));
                }
            }
            const double tol = 1e-10 * n * max_h * 10.0;
            for (int i = 1; i <= n; ++i) {
                CHECK(std::fabs(a.d_first_vs_full[i] - b.d_first_vs_full[i]) <= tol);
                CHECK(std::fabs(a.d_first_vs_last[i] - b.d_first_vs_last[i]) <= tol);
            }
        }
    }
}

TEST_CASE("linear kernel makes the two processes equal") {
    const auto linear = Kernel::custom("linear", ucpt::Arity::univariate,
                                       [](const ucpt::Observation& a,
                                          const ucpt::Observation& b) {
                                           return a.x + b.x;
                                       });
    ucpt::Xoshiro256pp rng(31);
    for (int rep = 0; rep < 25; ++rep) {
        const int n = 6 + static_cast<int>(rng.uniform01() * 100);
        const Series s = oracles::random_series(n, 1, rng);
        const auto d = ucpt::diff_processes(linear, s);
        double scale = 1.0;
        for (int k = 2; k <= n - 2; ++k) {
            scale = std::max(scale, std::fabs(d.d_first_vs_full[k]));
        }
        for (int k = 2; k <= n - 2; ++k) {
            CHECK(std::fabs(d.d_first_vs_full[k] - d.d_first_vs_last[k]) <=
                  1e-12 * n * scale);
        }
    }
}

TEST_CASE("classical mean CUSUM identity holds for the linear kernel") {
    // For h(x,y) = x + y, U_{1:k} = 2 * mean(x_1..x_k); the first-vs-full and
    // first-vs-last weightings of mean differences are algebraically equal.
    const auto linear = Kernel::custom("linear2", ucpt::Arity::univariate,
                                       [](const ucpt::Observation& a,
                                          const ucpt::Observation& b) {
                                           return a.x + b.x;
                                       });
    ucpt::Xoshiro256pp rng(32);
    const int n = 80;
    const Series s = oracles::random_series(n, 1, rng);
    const auto u = ucpt::prefix_u(linear, s);
    double run = 0.0;
    for (int k = 1; k <= n; ++k) {
        run += s.xs()[k - 1];
        if (k >= 2) CHECK(u[k] == doctest::Approx(2.0 * run / k).epsilon(1e-12));
    }
}

TEST_CASE("gmd processes scale linearly with the data") {
    ucpt::Xoshiro256pp rng(77);
    const Kernel gmd = Kernel::builtin("gmd");
    const int n = 50;
    const Series s = oracles::random_series(n, 1, rng);
    std::vector<double> scaled(s.xs().begin(), s.xs().end());
    const double c = 3.5;
    for (double& x : scaled) x *= c;
    const auto d1 = ucpt::diff_processes(gmd, s);
    const auto d2 = ucpt::diff_processes(gmd, Series::univariate(scaled));
    for (int k = 1; k <= n; ++k) {
        CHECK(d2.d_first_vs_full[k] ==
              doctest::Approx(c * d1.d_first_vs_full[k]).epsilon(1e-10));
        CHECK(d2.d_first_vs_last[k] ==
              doctest::Approx(c * d1.d_first_vs_last[k]).epsilon(1e-10));
    }
}
