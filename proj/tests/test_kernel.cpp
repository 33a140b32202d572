#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ucpt/kernel.hpp"
#include "ucpt/rng.hpp"

using ucpt::Kernel;
using ucpt::Observation;
using ucpt::Series;

TEST_CASE("builtin kernel values") {
    const Kernel gmd = Kernel::builtin("gmd");
    const Kernel var = Kernel::builtin("variance");
    const Kernel cov = Kernel::builtin("covariance");
    const Kernel ken = Kernel::builtin("kendall");

    CHECK(gmd.eval({3.0, 0.0}, {1.0, 0.0}) == 2.0);
    CHECK(var.eval({4.0, 0.0}, {0.0, 0.0}) == 8.0);
    CHECK(cov.eval({1.0, 2.0}, {3.0, 5.0}) == doctest::Approx(3.0));
    CHECK(ken.eval({1.0, 1.0}, {2.0, 0.0}) == -1.0);
    CHECK(ken.eval({1.0, 1.0}, {2.0, 2.0}) == 1.0);
    CHECK(ken.eval({1.0, 1.0}, {1.0, 2.0}) == 0.0);

    CHECK(gmd.fast_prefix_capable());
    CHECK(var.fast_prefix_capable());
    CHECK_FALSE(cov.fast_prefix_capable());
    CHECK_FALSE(ken.fast_prefix_capable());

    CHECK_THROWS_AS(Kernel::builtin("median"), ucpt::ConfigError);
}

TEST_CASE("builtin kernels are exactly symmetric on random pairs") {
    ucpt::Xoshiro256pp rng(101);
    for (const char* name : {"gmd", "variance", "covariance", "kendall"}) {
        const Kernel k = Kernel::builtin(name);
        for (int i = 0; i < 10000; ++i) {
            const Observation a{10.0 * rng.uniform_pm1(), 10.0 * rng.uniform_pm1()};
            const Observation b{10.0 * rng.uniform_pm1(), 10.0 * rng.uniform_pm1()};
            CHECK(k.eval(a, b) == k.eval(b, a));
        }
    }
}

TEST_CASE("custom kernel registration spot-checks symmetry") {
    auto linear = Kernel::custom("linear", ucpt::Arity::univariate,
                                 [](const Observation& a, const Observation& b) {
                                     return a.x + b.x;
                                 });
    CHECK(linear.eval({1.0, 0.0}, {2.0, 0.0}) == 3.0);
    CHECK(linear.kind() == ucpt::KernelKind::custom);

    CHECK_THROWS_AS(Kernel::custom("broken", ucpt::Arity::univariate,
                                   [](const Observation& a, const Observation& b) {
                                       return a.x - b.x;
                                   }),
                    ucpt::ConfigError);
}

TEST_CASE("projection on tiny series matches hand enumeration") {
    const Kernel gmd = Kernel::builtin("gmd");

    // series [0,1]: U = 1, h1(0) = (0+1)/2 - 1 = -0.5, same for 1
    const auto p = ucpt::projection(gmd, Series::univariate({0.0, 1.0}));
    CHECK(p.u_full == doctest::Approx(1.0));
    CHECK(p.values[0] == doctest::Approx(-0.5));
    CHECK(p.values[1] == doctest::Approx(-0.5));

    // constant series: all pair distances zero
    const auto pc = ucpt::projection(gmd, Series::univariate({2.0, 2.0, 2.0}));
    CHECK(pc.u_full == 0.0);
    for (double v : pc.values) CHECK(v == 0.0);

    // variance on [0,1,0,1]: matches the n-1 denominator sample variance
    const auto pv = ucpt::projection(Kernel::builtin("variance"),
                                     Series::univariate({0.0, 1.0, 0.0, 1.0}));
    CHECK(pv.u_full == doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(ucpt::projection(gmd, Series::univariate({1.0})),
                    ucpt::SampleTooSmallError);
}

TEST_CASE("projection mean obeys the diagonal-term identity") {
    // mean h1 = (avg_diag - U)/n exactly in the algebra
    ucpt::Xoshiro256pp rng(2024);
    for (const char* name : {"gmd", "variance", "covariance", "kendall"}) {
        const Kernel k = Kernel::builtin(name);
        const int dim = k.arity() == ucpt::Arity::univariate ? 1 : 2;
        for (int rep = 0; rep < 20; ++rep) {
            const int n = 2 + static_cast<int>(rng.uniform01() * 60);
            const Series s = oracles::random_series(n, dim, rng);
            const auto p = ucpt::projection(k, s);

            double mean = 0.0, diag = 0.0, max_diag = 0.0;
            for (int i = 0; i < n; ++i) {
                mean += p.values[i];
                const double d = k.eval(s[i], s[i]);
                diag += d;
                max_diag = std::max(max_diag, std::fabs(d));
            }
            mean /= n;
            diag /= n;
            CHECK(mean == doctest::Approx((diag - p.u_full) / n).epsilon(1e-9));
            CHECK(std::fabs(mean) <=
                  (max_diag + std::fabs(p.u_full)) / n + 1e-12);
        }
    }
}

TEST_CASE("gmd and variance fast projections match the double loop") {
    ucpt::Xoshiro256pp rng(7);
    for (const char* name : {"gmd", "variance"}) {
        const Kernel k = Kernel::builtin(name);
        for (int rep = 0; rep < 100; ++rep) {
            const int n = 2 + static_cast<int>(rng.uniform01() * 498);
            const Series s = oracles::random_series(n, 1, rng);
            const auto fast = ucpt::projection(k, s);
            const auto ref = ucpt::serial::projection(k, s);

            double max_h = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    max_h = std::max(max_h, std::fabs(k.eval(s[i], s[j])));
                }
            }
            const double tol = 1e-10 * n * std::max(1.0, max_h);
            CHECK(std::fabs(fast.u_full - ref.u_full) <= tol);
            for (int i = 0; i < n; ++i) {
                CHECK(std::fabs(fast.values[i] - ref.values[i]) <= tol);
            }
        }
    }
}

TEST_CASE("kernel arity is validated against series dimension") {
    const Series uni = Series::univariate({1.0, 2.0, 3.0});
    CHECK_THROWS_AS(ucpt::projection(Kernel::builtin("kendall"), uni),
                    ucpt::ConfigError);
}

TEST_CASE("series rejects non-finite input") {
    CHECK_THROWS_AS(Series::univariate({1.0, std::nan("")}), ucpt::DataError);
    CHECK_THROWS_AS(Series::univariate({1.0, INFINITY}), ucpt::DataError);
}
