#include "ucpt/uproc.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace ucpt {

namespace {

inline double binom2(int k) { return 0.5 * static_cast<double>(k) * (k - 1); }

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Fenwick trees over value ranks carrying element counts and value sums, for
// incremental sum_{inserted} |x - x_i| queries in O(log n).
class RankedFenwick {
  public:
    explicit RankedFenwick(std::span<const double> xs) {
        sorted_.assign(xs.begin(), xs.end());
        std::sort(sorted_.begin(), sorted_.end());
        sorted_.erase(std::unique(sorted_.begin(), sorted_.end()), sorted_.end());
        const int m = static_cast<int>(sorted_.size());
        cnt_.assign(m + 1, 0.0);
        sum_.assign(m + 1, 0.0);
    }

    void insert(double x) {
        ++inserted_;
        total_ += x;
        for (int i = rank(x); i <= static_cast<int>(sorted_.size()); i += i & -i) {
            cnt_[i] += 1.0;
            sum_[i] += x;
        }
    }

    // sum over inserted values of |x - x_i|.
    double abs_diff_sum(double x) const {
        double c = 0.0, s = 0.0;
        for (int i = rank(x); i > 0; i -= i & -i) {
            c += cnt_[i];
            s += sum_[i];
        }
        return x * (2.0 * c - inserted_) - 2.0 * s + total_;
    }

  private:
    int rank(double x) const {  // 1-based rank of the value's slot
        return static_cast<int>(std::lower_bound(sorted_.begin(), sorted_.end(), x) -
                                sorted_.begin()) + 1;
    }

    std::vector<double> sorted_;
    std::vector<double> cnt_;
    std::vector<double> sum_;
    double total_ = 0.0;
    int inserted_ = 0;
};

std::vector<double> gmd_prefix_sums(const Series& series) {
    const auto xs = series.xs();
    const int n = static_cast<int>(xs.size());
    RankedFenwick fw(xs);
    std::vector<double> s(n + 1, 0.0);
    KahanSum acc;
    for (int k = 1; k <= n; ++k) {
        acc.add(fw.abs_diff_sum(xs[k - 1]));
        fw.insert(xs[k - 1]);
        s[k] = acc.sum;
    }
    return s;
}

std::vector<double> gmd_suffix_sums(const Series& series) {
    const auto xs = series.xs();
    const int n = static_cast<int>(xs.size());
    RankedFenwick fw(xs);
    std::vector<double> s(n + 1, 0.0);
    KahanSum acc;
    for (int k = n; k >= 1; --k) {
        acc.add(fw.abs_diff_sum(xs[k - 1]));
        fw.insert(xs[k - 1]);
        s[k - 1] = acc.sum;
    }
    return s;
}

// sum_{i<j<=k} (x_i-x_j)^2/2 = (k Q_k - P_k^2)/2 with running moments.
std::vector<double> variance_prefix_sums(const Series& series) {
    const auto xs = series.xs();
    const int n = static_cast<int>(xs.size());
    std::vector<double> s(n + 1, 0.0);
    KahanSum p, q;
    for (int k = 1; k <= n; ++k) {
        p.add(xs[k - 1]);
        q.add(xs[k - 1] * xs[k - 1]);
        s[k] = 0.5 * (k * q.sum - p.sum * p.sum);
    }
    return s;
}

std::vector<double> variance_suffix_sums(const Series& series) {
    const auto xs = series.xs();
    const int n = static_cast<int>(xs.size());
    std::vector<double> s(n + 1, 0.0);
    KahanSum p, q;
    for (int k = n; k >= 1; --k) {
        p.add(xs[k - 1]);
        q.add(xs[k - 1] * xs[k - 1]);
        const int m = n - k + 1;
        s[k - 1] = 0.5 * (m * q.sum - p.sum * p.sum);
    }
    return s;
}

// Generic path: independent row sums (OpenMP), then a compensated prefix
// accumulation in index order so results do not depend on the thread count.
std::vector<double> generic_prefix_sums(const Kernel& kernel, const Series& series) {
    const int n = static_cast<int>(series.size());
    std::vector<double> row(n + 1, 0.0);

#pragma omp parallel for schedule(static, 4) if (n > 256 && !omp_in_parallel())
    for (int j = 2; j <= n; ++j) {
        const Observation oj = series[j - 1];
        double s = 0.0;
        for (int i = 0; i < j - 1; ++i) s += kernel.eval(series[i], oj);
        row[j] = s;
    }

    std::vector<double> out(n + 1, 0.0);
    KahanSum acc;
    for (int k = 2; k <= n; ++k) {
        acc.add(row[k]);
        out[k] = acc.sum;
    }
    return out;
}

std::vector<double> generic_suffix_sums(const Kernel& kernel, const Series& series) {
    const int n = static_cast<int>(series.size());
    std::vector<double> row(n + 1, 0.0);

#pragma omp parallel for schedule(static, 4) if (n > 256 && !omp_in_parallel())
    for (int k = 1; k <= n - 1; ++k) {
        const Observation ok = series[k - 1];
        double s = 0.0;
        for (int j = k; j < n; ++j) s += kernel.eval(ok, series[j]);
        row[k] = s;
    }

    std::vector<double> out(n + 1, 0.0);
    KahanSum acc;
    for (int k = n - 2; k >= 0; --k) {
        acc.add(row[k + 1]);
        out[k] = acc.sum;
    }
    return out;
}

DiffProcess build_diff(int n, const std::vector<double>& pre,
                       const std::vector<double>& suf) {
    DiffProcess d;
    d.n = n;
    d.fvf_lo = 2;
    d.fvf_hi = n;
    d.fvl_lo = 2;
    d.fvl_hi = n - 2;
    d.d_first_vs_full.assign(n + 1, 0.0);
    d.d_first_vs_last.assign(n + 1, 0.0);

    const double u_full = pre[n] / binom2(n);
    for (int k = 2; k <= n; ++k) {
        const double u1k = pre[k] / binom2(k);
        d.d_first_vs_full[k] = k * (u1k - u_full);
        if (k <= n - 2) {
            const double ukn = suf[k] / binom2(n - k);
            d.d_first_vs_last[k] =
                (static_cast<double>(k) * (n - k) / n) * (u1k - ukn);
        }
    }
    return d;
}

}  // namespace

std::vector<double> prefix_pair_sums(const Kernel& kernel, const Series& series) {
    check_kernel_series(kernel, series);
    switch (kernel.kind()) {
        case KernelKind::gmd: return gmd_prefix_sums(series);
        case KernelKind::variance: return variance_prefix_sums(series);
        default: return generic_prefix_sums(kernel, series);
    }
}

std::vector<double> suffix_pair_sums(const Kernel& kernel, const Series& series) {
    check_kernel_series(kernel, series);
    switch (kernel.kind()) {
        case KernelKind::gmd: return gmd_suffix_sums(series);
        case KernelKind::variance: return variance_suffix_sums(series);
        default: return generic_suffix_sums(kernel, series);
    }
}

std::vector<double> prefix_u(const Kernel& kernel, const Series& series) {
    const int n = static_cast<int>(series.size());
    if (n < 2) throw SampleTooSmallError("prefix U-statistics need n >= 2");
    auto s = prefix_pair_sums(kernel, series);
    std::vector<double> u(n + 1, 0.0);
    for (int k = 2; k <= n; ++k) u[k] = s[k] / binom2(k);
    return u;
}

std::vector<double> suffix_u(const Kernel& kernel, const Series& series) {
    const int n = static_cast<int>(series.size());
    if (n < 2) throw SampleTooSmallError("suffix U-statistics need n >= 2");
    auto s = suffix_pair_sums(kernel, series);
    std::vector<double> u(n + 1, 0.0);
    for (int k = 0; k <= n - 2; ++k) u[k] = s[k] / binom2(n - k);
    return u;
}

DiffProcess diff_processes(const Kernel& kernel, const Series& series) {
    const int n = static_cast<int>(series.size());
    if (n < 4) throw SampleTooSmallError("difference processes need n >= 4");
    return build_diff(n, prefix_pair_sums(kernel, series),
                      suffix_pair_sums(kernel, series));
}

namespace serial {

std::vector<double> prefix_pair_sums(const Kernel& kernel, const Series& series) {
    check_kernel_series(kernel, series);
    const int n = static_cast<int>(series.size());
    std::vector<double> out(n + 1, 0.0);
    KahanSum acc;
    for (int k = 2; k <= n; ++k) {
        const Observation ok = series[k - 1];
        double s = 0.0;
        for (int i = 0; i < k - 1; ++i) s += kernel.eval(series[i], ok);
        acc.add(s);
        out[k] = acc.sum;
    }
    return out;
}

std::vector<double> suffix_pair_sums(const Kernel& kernel, const Series& series) {
    check_kernel_series(kernel, series);
    const int n = static_cast<int>(series.size());
    std::vector<double> out(n + 1, 0.0);
    KahanSum acc;
    for (int k = n - 2; k >= 0; --k) {
        const Observation ok = series[k];
        double s = 0.0;
        for (int j = k + 1; j < n; ++j) s += kernel.eval(ok, series[j]);
        acc.add(s);
        out[k] = acc.sum;
    }
    return out;
}

DiffProcess diff_processes(const Kernel& kernel, const Series& series) {
    const int n = static_cast<int>(series.size());
    if (n < 4) throw SampleTooSmallError("difference processes need n >= 4");
    return build_diff(n, serial::prefix_pair_sums(kernel, series),
                      serial::suffix_pair_sums(kernel, series));
}

}  // namespace serial

}  // namespace ucpt
