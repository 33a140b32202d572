#include "ucpt/lrv.hpp"

#include <cmath>

#include "ucpt/errors.hpp"

namespace ucpt {

Bandwidth Bandwidth::fixed(double value) {
    if (!(value > 0.0)) throw ConfigError("bandwidth must be positive");
    return Bandwidth(false, value);
}

double Bandwidth::resolve(int n) const {
    if (n < 2) throw SampleTooSmallError("bandwidth resolution needs n >= 2");
    if (is_rule_) return std::min(std::cbrt(static_cast<double>(n)),
                                  static_cast<double>(n - 1));
    if (value_ > n - 1) {
        throw ConfigError("bandwidth " + std::to_string(value_) +
                          " exceeds n-1 = " + std::to_string(n - 1));
    }
    return value_;
}

std::string Bandwidth::describe() const {
    return is_rule_ ? std::string("n^(1/3)") : std::to_string(value_);
}

double long_run_variance(const ProjectionVector& proj, const LrvConfig& cfg) {
    const int n = static_cast<int>(proj.values.size());
    if (n < 2) throw SampleTooSmallError("long-run variance needs n >= 2");
    const auto& v = proj.values;

    double sigma2 = 0.0;
    if (cfg.variant == LrvVariant::intro_gmd) {
        double s = 0.0;
        for (double x : v) s += x * x;
        sigma2 = 2.0 * s / n;
    } else {
        const double b = cfg.bandwidth.resolve(n);
        double c0 = 0.0;
        for (double x : v) c0 += x * x;
        c0 /= n;
        double acc = c0;
        for (int k = 1; k < n && k < b; ++k) {
            const double w = 1.0 - k / b;  // Bartlett weight, > 0 here
            double ck = 0.0;
            for (int i = 0; i + k < n; ++i) ck += v[i] * v[i + k];
            acc += 2.0 * w * (ck / n);
        }
        sigma2 = 4.0 * acc;
    }

    if (!(sigma2 > 0.0)) throw DegenerateVarianceError(sigma2);
    return sigma2;
}

Studentized studentize(const DiffProcess& diff, double sigma2) {
    if (!(sigma2 > 0.0)) throw DegenerateVarianceError(sigma2);
    const double scale = std::sqrt(static_cast<double>(diff.n)) * std::sqrt(sigma2);
    double m1 = 0.0, m2 = 0.0;
    for (int k = 1; k <= diff.n; ++k) {
        m1 = std::max(m1, std::fabs(diff.d_first_vs_full[k]));
        m2 = std::max(m2, std::fabs(diff.d_first_vs_last[k]));
    }
    return {m1 / scale, m2 / scale};
}

}  // namespace ucpt
