#pragma once

#include <string>

#include "ucpt/kernel.hpp"
#include "ucpt/uproc.hpp"

namespace ucpt {

enum class LrvWindow { bartlett };

// appendix_d: Bartlett lag-window estimator
//   sigma^2 = 4 sum_{|k|<n} W(|k|/b) (1/n) sum_i h1(X_i) h1(X_{i+|k|}).
// intro_gmd: the plain (2/n) sum_i h1(X_i)^2 estimator, kept to probe its
//   normalization against the lag-window one (they differ by a factor 2 at
//   lag 0).
enum class LrvVariant { appendix_d, intro_gmd };

// Bandwidth: either a fixed positive value or the rule b = n^(1/3), resolved
// against the sample size at evaluation time.
class Bandwidth {
  public:
    static Bandwidth cbrt_rule() { return Bandwidth(true, 0.0); }
    static Bandwidth fixed(double value);

    bool is_rule() const { return is_rule_; }
    double fixed_value() const { return value_; }

    // n^(1/3) is clamped to n-1 (only binds at n = 2); a fixed bandwidth
    // larger than n-1 is a configuration error.
    double resolve(int n) const;

    std::string describe() const;

  private:
    Bandwidth(bool rule, double value) : is_rule_(rule), value_(value) {}
    bool is_rule_;
    double value_;
};

struct LrvConfig {
    LrvWindow window = LrvWindow::bartlett;
    Bandwidth bandwidth = Bandwidth::cbrt_rule();
    LrvVariant variant = LrvVariant::appendix_d;
};

// Long-run variance estimate from the projection values. Throws
// DegenerateVarianceError (carrying the raw value) if the estimate is <= 0.
double long_run_variance(const ProjectionVector& proj, const LrvConfig& cfg);

struct Studentized {
    double t_first_vs_full = 0.0;
    double t_first_vs_last = 0.0;
};

// t = max_k |D(k)| / (sqrt(n) * sqrt(sigma2)) for each process.
Studentized studentize(const DiffProcess& diff, double sigma2);

}  // namespace ucpt
