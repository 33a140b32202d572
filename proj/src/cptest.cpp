#include "ucpt/cptest.hpp"

#include <cmath>

#include "ucpt/errors.hpp"
#include "ucpt/nulldist.hpp"

namespace ucpt {

const char* method_name(Method m) {
    return m == Method::first_vs_full ? "first_vs_full" : "first_vs_last";
}

Method method_from_name(const std::string& name) {
    if (name == "first_vs_full" || name == "fvf") return Method::first_vs_full;
    if (name == "first_vs_last" || name == "fvl") return Method::first_vs_last;
    throw ConfigError("unknown method '" + name + "'");
}

Location estimate_location(const DiffProcess& diff, Method method) {
    const auto& d = method == Method::first_vs_full ? diff.d_first_vs_full
                                                    : diff.d_first_vs_last;
    Location loc;
    double best = -1.0;
    for (int k = 2; k <= diff.n - 2; ++k) {
        const double a = std::fabs(d[k]);
        if (a > best) {
            best = a;
            loc.k_hat = k;
        }
    }
    loc.no_signal = (best == 0.0);
    loc.tau_hat = static_cast<double>(loc.k_hat) / diff.n;
    return loc;
}

namespace {

TestReport make_report(const Series& series, const Kernel& kernel,
                       const LrvConfig& cfg, Method method,
                       const DiffProcess& diff, const Studentized& stud,
                       double sigma2) {
    TestReport r;
    r.method = method;
    r.statistic = method == Method::first_vs_full ? stud.t_first_vs_full
                                                  : stud.t_first_vs_last;
    r.p_value = p_value(r.statistic);
    const Location loc = estimate_location(diff, method);
    r.k_hat = loc.k_hat;
    r.tau_hat = loc.tau_hat;
    r.no_signal = loc.no_signal;
    r.sigma2 = sigma2;
    r.n = static_cast<int>(series.size());
    r.kernel_id = kernel.id();
    r.lrv = cfg;
    return r;
}

void check_test_size(const Series& series) {
    if (series.size() < 8) {
        throw SampleTooSmallError("change-point test needs n >= 8");
    }
}

}  // namespace

TestReport run_test(const Series& series, const Kernel& kernel,
                    const LrvConfig& cfg, Method method) {
    check_test_size(series);
    const DiffProcess diff = diff_processes(kernel, series);
    const ProjectionVector proj = projection(kernel, series);
    const double sigma2 = long_run_variance(proj, cfg);
    const Studentized stud = studentize(diff, sigma2);
    return make_report(series, kernel, cfg, method, diff, stud, sigma2);
}

std::pair<TestReport, TestReport> run_both(const Series& series,
                                           const Kernel& kernel,
                                           const LrvConfig& cfg) {
    check_test_size(series);
    const DiffProcess diff = diff_processes(kernel, series);
    const ProjectionVector proj = projection(kernel, series);
    const double sigma2 = long_run_variance(proj, cfg);
    const Studentized stud = studentize(diff, sigma2);
    return {make_report(series, kernel, cfg, Method::first_vs_full, diff, stud, sigma2),
            make_report(series, kernel, cfg, Method::first_vs_last, diff, stud, sigma2)};
}

nlohmann::json to_json(const TestReport& r) {
    return nlohmann::json{
        {"method", method_name(r.method)},
        {"statistic", r.statistic},
        {"p_value", r.p_value},
        {"tau_hat", r.tau_hat},
        {"k_hat", r.k_hat},
        {"sigma2", r.sigma2},
        {"n", r.n},
        {"kernel", r.kernel_id},
        {"window", "bartlett"},
        {"bandwidth", r.lrv.bandwidth.resolve(r.n)},
        {"bandwidth_rule", r.lrv.bandwidth.describe()},
        {"variant", r.lrv.variant == LrvVariant::appendix_d ? "appendix_d" : "intro_gmd"},
        {"no_signal", r.no_signal},
    };
}

TestReport test_report_from_json(const nlohmann::json& j) {
    TestReport r;
    r.method = method_from_name(j.at("method").get<std::string>());
    r.statistic = j.at("statistic").get<double>();
    r.p_value = j.at("p_value").get<double>();
    r.tau_hat = j.at("tau_hat").get<double>();
    r.k_hat = j.at("k_hat").get<int>();
    r.sigma2 = j.at("sigma2").get<double>();
    r.n = j.at("n").get<int>();
    r.kernel_id = j.at("kernel").get<std::string>();
    const std::string rule = j.at("bandwidth_rule").get<std::string>();
    r.lrv.bandwidth = rule == "n^(1/3)"
                          ? Bandwidth::cbrt_rule()
                          : Bandwidth::fixed(j.at("bandwidth").get<double>());
    r.lrv.variant = j.at("variant").get<std::string>() == "intro_gmd"
                        ? LrvVariant::intro_gmd
                        : LrvVariant::appendix_d;
    r.no_signal = j.at("no_signal").get<bool>();
    return r;
}

}  // namespace ucpt
