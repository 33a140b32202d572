#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ucpt/series.hpp"

namespace ucpt {

enum class Arity { univariate, bivariate };

enum class KernelKind { gmd, variance, covariance, kendall, custom };

// Built-in kernel evaluators, inlined for the O(n^2) loops.
inline double gmd_eval(double a, double b) { return std::fabs(a - b); }

inline double variance_eval(double a, double b) {
    const double d = a - b;
    return 0.5 * d * d;
}

inline double covariance_eval(const Observation& a, const Observation& b) {
    return 0.5 * (b.x - a.x) * (b.y - a.y);
}

// Concordance sign in {-1, 0, 1}. Signs are taken per coordinate rather than
// of the product, so underflow of tiny differences cannot turn a concordant
// pair into a tie.
inline double kendall_eval(const Observation& a, const Observation& b) {
    const double sx = static_cast<double>((b.x > a.x) - (b.x < a.x));
    const double sy = static_cast<double>((b.y > a.y) - (b.y < a.y));
    return sx * sy;
}

// A symmetric order-2 kernel. Symmetry is part of the contract: built-ins are
// symmetric by construction, custom kernels are spot-checked at registration.
class Kernel {
  public:
    // name: one of gmd | variance | covariance | kendall.
    static Kernel builtin(std::string_view name);

    static Kernel custom(std::string id, Arity arity,
                         std::function<double(const Observation&, const Observation&)> eval);

    const std::string& id() const { return id_; }
    Arity arity() const { return arity_; }
    KernelKind kind() const { return kind_; }
    bool fast_prefix_capable() const { return fast_prefix_capable_; }

    double eval(const Observation& a, const Observation& b) const {
        switch (kind_) {
            case KernelKind::gmd: return gmd_eval(a.x, b.x);
            case KernelKind::variance: return variance_eval(a.x, b.x);
            case KernelKind::covariance: return covariance_eval(a, b);
            case KernelKind::kendall: return kendall_eval(a, b);
            case KernelKind::custom: return custom_eval_(a, b);
        }
        return 0.0;  // unreachable
    }

  private:
    Kernel(std::string id, Arity arity, KernelKind kind, bool fast,
           std::function<double(const Observation&, const Observation&)> eval)
        : id_(std::move(id)), arity_(arity), kind_(kind),
          fast_prefix_capable_(fast), custom_eval_(std::move(eval)) {}

    std::string id_;
    Arity arity_;
    KernelKind kind_;
    bool fast_prefix_capable_;
    std::function<double(const Observation&, const Observation&)> custom_eval_;
};

// Empirical first-order projection:
//   values[i] = (1/n) sum_j h(X_i, X_j) - U_{1:n},  j running over all of
//   1..n including j = i, and u_full = U_{1:n} with binomial normalization.
struct ProjectionVector {
    std::vector<double> values;
    double u_full = 0.0;
};

// Production path: gmd uses a sort-based O(n log n) evaluation, variance an
// O(n) moment identity; everything else is the generic O(n^2) double loop
// with OpenMP over rows.
ProjectionVector projection(const Kernel& kernel, const Series& series);

namespace serial {
// Plain O(n^2) reference implementation, kept for tests and benchmarks.
ProjectionVector projection(const Kernel& kernel, const Series& series);
}  // namespace serial

void check_kernel_series(const Kernel& kernel, const Series& series);

}  // namespace ucpt
