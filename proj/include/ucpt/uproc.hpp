#pragma once

#include <vector>

#include "ucpt/kernel.hpp"
#include "ucpt/series.hpp"

namespace ucpt {

// The two weighted difference processes, indexed 1-based: entry k of each
// vector is the process value at k (entry 0 unused, always 0).
//
//   d_first_vs_full[k] = k (U_{1:k} - U_{1:n})            for 2 <= k <= n,
//   d_first_vs_last[k] = k(n-k)/n (U_{1:k} - U_{(k+1):n}) for 2 <= k <= n-2,
//
// with entries outside those ranges set to 0 (segments of fewer than two
// points leave the U-statistic undefined). The masked ranges are recorded so
// downstream code can distinguish structural zeros from signal.
struct DiffProcess {
    int n = 0;
    std::vector<double> d_first_vs_full;
    std::vector<double> d_first_vs_last;
    // Inclusive index ranges where each process is defined (not masked).
    int fvf_lo = 2, fvf_hi = 0;
    int fvl_lo = 2, fvl_hi = 0;
};

// Prefix U-statistics: entry k is U_{1:k} for 2 <= k <= n (entries 0, 1 are 0).
std::vector<double> prefix_u(const Kernel& kernel, const Series& series);

// Suffix U-statistics: entry k is U_{(k+1):n} for 0 <= k <= n-2 (entries
// n-1, n are 0); entry 0 is the full-sample statistic.
std::vector<double> suffix_u(const Kernel& kernel, const Series& series);

// Both difference processes from one pass over the prefix/suffix recursions.
DiffProcess diff_processes(const Kernel& kernel, const Series& series);

namespace serial {
// Incremental O(n^2) single-threaded references (no fast paths, no OpenMP).
std::vector<double> prefix_pair_sums(const Kernel& kernel, const Series& series);
std::vector<double> suffix_pair_sums(const Kernel& kernel, const Series& series);
DiffProcess diff_processes(const Kernel& kernel, const Series& series);
}  // namespace serial

// Raw pair sums S[k] = sum_{i<j<=k} h(X_i,X_j) for k = 0..n; production path
// (kernel-specific fast paths, OpenMP generic path). Exposed for tests.
std::vector<double> prefix_pair_sums(const Kernel& kernel, const Series& series);
std::vector<double> suffix_pair_sums(const Kernel& kernel, const Series& series);

}  // namespace ucpt
