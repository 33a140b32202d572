#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "ucpt/kernel.hpp"
#include "ucpt/lrv.hpp"
#include "ucpt/series.hpp"
#include "ucpt/uproc.hpp"

namespace ucpt {

enum class Method { first_vs_full, first_vs_last };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

// Outcome of one change-point test on one series.
struct TestReport {
    Method method = Method::first_vs_full;
    double statistic = 0.0;  // studentized, >= 0
    double p_value = 1.0;
    double tau_hat = 0.0;    // k_hat / n
    int k_hat = 0;           // argmax index, 2 <= k_hat <= n-2
    double sigma2 = 0.0;
    int n = 0;
    std::string kernel_id;
    LrvConfig lrv;
    bool no_signal = false;  // max |D| was exactly 0; location is meaningless
};

struct Location {
    int k_hat = 2;
    double tau_hat = 0.0;
    bool no_signal = false;
};

// Argmax of |D(k)| over the interior 2 <= k <= n-2 (smallest index on ties),
// so the estimate is valid for either method's masked range.
Location estimate_location(const DiffProcess& diff, Method method);

// Full pipeline: difference processes -> projection -> long-run variance ->
// studentization -> p-value. Needs n >= 8. Throws DegenerateVarianceError
// when the variance estimate is non-positive.
TestReport run_test(const Series& series, const Kernel& kernel,
                    const LrvConfig& cfg, Method method);

// Both methods off one shared projection and variance estimate.
std::pair<TestReport, TestReport> run_both(const Series& series,
                                           const Kernel& kernel,
                                           const LrvConfig& cfg);

nlohmann::json to_json(const TestReport& report);
TestReport test_report_from_json(const nlohmann::json& j);

}  // namespace ucpt
