// Timing comparison of the OpenMP production paths against the serial
// reference implementations, plus a worker-count scaling check for the
// simulation harness. Results must agree; speed is what differs.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>

#include "ucpt/kernel.hpp"
#include "ucpt/mcsim.hpp"
#include "ucpt/rng.hpp"
#include "ucpt/uproc.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

ucpt::Series random_bivariate(int n, std::uint64_t seed) {
    ucpt::Xoshiro256pp rng(seed);
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = rng.normal();
        ys[i] = 0.5 * xs[i] + rng.normal();
    }
    return ucpt::Series::bivariate(std::move(xs), std::move(ys));
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::fabs(a[i] - b[i]));
    }
    return m;
}

}  // namespace

int main() {
    const int threads = omp_get_max_threads();
    std::printf("threads available: %d\n\n", threads);

    {
        const int n = 6000;
        const ucpt::Series s = random_bivariate(n, 42);
        const ucpt::Kernel kendall = ucpt::Kernel::builtin("kendall");

        auto t0 = clock_type::now();
        const auto serial = ucpt::serial::prefix_pair_sums(kendall, s);
        const double t_serial = seconds_since(t0);

        t0 = clock_type::now();
        const auto parallel = ucpt::prefix_pair_sums(kendall, s);
        const double t_parallel = seconds_since(t0);

        std::printf("kendall prefix pair sums, n=%d\n", n);
        std::printf("  serial    %8.3f s\n", t_serial);
        std::printf("  openmp    %8.3f s   (x%.2f)\n", t_parallel, t_serial / t_parallel);
        std::printf("  max |diff| = %.3e\n\n", max_abs_diff(serial, parallel));
    }

    {
        const int n = 4000;
        const ucpt::Series s = random_bivariate(n, 43);
        const ucpt::Kernel kendall = ucpt::Kernel::builtin("kendall");

        auto t0 = clock_type::now();
        const auto serial = ucpt::serial::projection(kendall, s);
        const double t_serial = seconds_since(t0);

        t0 = clock_type::now();
        const auto parallel = ucpt::projection(kendall, s);
        const double t_parallel = seconds_since(t0);

        std::printf("kendall projection, n=%d\n", n);
        std::printf("  serial    %8.3f s\n", t_serial);
        std::printf("  openmp    %8.3f s   (x%.2f)\n", t_parallel, t_serial / t_parallel);
        std::printf("  max |diff| = %.3e\n\n", max_abs_diff(serial.values, parallel.values));
    }

    {
        ucpt::Scenario sc;
        sc.label = "bench";
        sc.kernel_id = "gmd";
        sc.n = 1000;
        sc.tau_star = 0.5;
        sc.pre = ucpt::DistSpec::normal(0.0, 1.0).to_json();
        sc.post = ucpt::DistSpec::normal(0.0, 1.5).to_json();
        sc.runs = 400;
        sc.seed = 7;

        auto t0 = clock_type::now();
        const auto one = ucpt::run_scenario(sc, 1);
        const double t_one = seconds_since(t0);

        t0 = clock_type::now();
        const auto many = ucpt::run_scenario(sc, threads);
        const double t_many = seconds_since(t0);

        std::printf("gmd power study, n=%d, %d runs\n", sc.n, sc.runs);
        std::printf("  1 thread  %8.3f s\n", t_one);
        std::printf("  %d threads %8.3f s   (x%.2f)\n", threads, t_many, t_one / t_many);
        const bool identical =
            one.rows[0].rejections == many.rows[0].rejections &&
            one.rows[1].rejections == many.rows[1].rejections;
        std::printf("  identical tallies: %s\n", identical ? "yes" : "NO");
        return identical ? 0 : 1;
    }
}
