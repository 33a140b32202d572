#include "ucpt/kernel.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "ucpt/rng.hpp"

namespace ucpt {

Kernel Kernel::builtin(std::string_view name) {
    if (name == "gmd") {
        return Kernel("gmd", Arity::univariate, KernelKind::gmd, true, nullptr);
    }
    if (name == "variance") {
        return Kernel("variance", Arity::univariate, KernelKind::variance, true, nullptr);
    }
    if (name == "covariance") {
        return Kernel("covariance", Arity::bivariate, KernelKind::covariance, false, nullptr);
    }
    if (name == "kendall") {
        return Kernel("kendall", Arity::bivariate, KernelKind::kendall, false, nullptr);
    }
    throw ConfigError("unknown kernel '" + std::string(name) +
                      "' (expected gmd, variance, covariance, or kendall)");
}

Kernel Kernel::custom(std::string id, Arity arity,
                      std::function<double(const Observation&, const Observation&)> eval) {
    if (!eval) throw ConfigError("custom kernel '" + id + "' has no evaluator");
    // Symmetry is the caller's contract; spot-check it on 16 random pairs.
    Xoshiro256pp rng(0x5CA7755u);
    for (int i = 0; i < 16; ++i) {
        Observation a{3.0 * rng.normal(), 3.0 * rng.normal()};
        Observation b{3.0 * rng.normal(), 3.0 * rng.normal()};
        const double ab = eval(a, b);
        const double ba = eval(b, a);
        if (std::fabs(ab - ba) > 1e-12 * (1.0 + std::fabs(ab))) {
            throw ConfigError("custom kernel '" + id + "' is not symmetric");
        }
    }
    return Kernel(std::move(id), arity, KernelKind::custom, false, std::move(eval));
}

void check_kernel_series(const Kernel& kernel, const Series& series) {
    const int want = kernel.arity() == Arity::univariate ? 1 : 2;
    if (series.dimension() != want) {
        throw ConfigError("kernel '" + kernel.id() + "' expects " +
                          std::to_string(want) + "-column data, series has " +
                          std::to_string(series.dimension()));
    }
}

namespace {

// Sorted-order evaluation of row sums sum_j |x - x_j| for the gmd kernel:
// with r values <= x among n, prefix value sum S_r and total S_n,
//   sum_j |x - x_j| = x (2r - n) - 2 S_r + S_n.
ProjectionVector gmd_projection(const Series& series) {
    const auto xs = series.xs();
    const int n = static_cast<int>(xs.size());

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return xs[a] < xs[b]; });

    // row_total[i] = sum_j |x_i - x_j|, computed over the sorted order.
    std::vector<double> row_total(n);
    double prefix = 0.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += xs[order[i]];
    for (int r = 0; r < n; ++r) {
        const double x = xs[order[r]];
        prefix += x;
        row_total[order[r]] = x * (2.0 * (r + 1) - n) - 2.0 * prefix + total;
    }

    double grand = 0.0, c = 0.0;
    for (int i = 0; i < n; ++i) {  // Kahan: n terms of one sign
        const double y = row_total[i] - c;
        const double t = grand + y;
        c = (t - grand) - y;
        grand = t;
    }
    const double u = grand / (static_cast<double>(n) * (n - 1));

    ProjectionVector out;
    out.u_full = u;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = row_total[i] / n - u;
    return out;
}

// (x - y)^2/2 averages reduce to the first two sample moments.
ProjectionVector variance_projection(const Series& series) {
    const auto xs = series.xs();
    const int n = static_cast<int>(xs.size());
    double p = 0.0, q = 0.0;
    for (double x : xs) {
        p += x;
        q += x * x;
    }
    const double m1 = p / n;
    const double m2 = q / n;
    const double u = (n * q - p * p) / (static_cast<double>(n) * (n - 1));

    ProjectionVector out;
    out.u_full = u;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = xs[i];
        out.values[i] = 0.5 * (x * x - 2.0 * x * m1 + m2) - u;
    }
    return out;
}

ProjectionVector generic_projection(const Kernel& kernel, const Series& series) {
    const int n = static_cast<int>(series.size());
    std::vector<double> row_total(n);

#pragma omp parallel for schedule(static) if (n > 256 && !omp_in_parallel())
    for (int i = 0; i < n; ++i) {
        const Observation oi = series[i];
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += kernel.eval(oi, series[j]);
        row_total[i] = s;
    }

    double grand = 0.0, comp = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = row_total[i] - comp;
        const double t = grand + y;
        comp = (t - grand) - y;
        grand = t;
    }
    double diag = 0.0;
    for (int i = 0; i < n; ++i) diag += kernel.eval(series[i], series[i]);

    const double u = (grand - diag) / (static_cast<double>(n) * (n - 1));
    ProjectionVector out;
    out.u_full = u;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = row_total[i] / n - u;
    return out;
}

}  // namespace

ProjectionVector projection(const Kernel& kernel, const Series& series) {
    check_kernel_series(kernel, series);
    if (series.size() < 2) {
        throw SampleTooSmallError("projection needs at least 2 observations");
    }
    switch (kernel.kind()) {
        case KernelKind::gmd: return gmd_projection(series);
        case KernelKind::variance: return variance_projection(series);
        default: return generic_projection(kernel, series);
    }
}

namespace serial {

ProjectionVector projection(const Kernel& kernel, const Series& series) {
    check_kernel_series(kernel, series);
    const int n = static_cast<int>(series.size());
    if (n < 2) throw SampleTooSmallError("projection needs at least 2 observations");

    std::vector<double> row_total(n, 0.0);
    double pair_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const Observation oi = series[i];
        for (int j = 0; j < n; ++j) {
            const double h = kernel.eval(oi, series[j]);
            row_total[i] += h;
            if (i < j) pair_sum += h;
        }
    }
    const double u = pair_sum / (0.5 * static_cast<double>(n) * (n - 1));
    ProjectionVector out;
    out.u_full = u;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = row_total[i] / n - u;
    return out;
}

}  // namespace serial

}  // namespace ucpt
