#include "ucpt/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ucpt {

namespace {

void check_finite(const std::vector<double>& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw DataError(std::string("non-finite value in ") + what +
                            " at position " + std::to_string(i + 1));
        }
    }
}

}  // namespace

Series::Series(std::vector<double> xs, std::vector<double> ys, int dim)
    : xs_(std::move(xs)), ys_(std::move(ys)), dim_(dim) {}

Series Series::univariate(std::vector<double> xs) {
    check_finite(xs, "series");
    return Series(std::move(xs), {}, 1);
}

Series Series::bivariate(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size()) {
        throw DataError("bivariate series components differ in length");
    }
    check_finite(xs, "first component");
    check_finite(ys, "second component");
    return Series(std::move(xs), std::move(ys), 2);
}

Series Series::reversed() const {
    std::vector<double> xs(xs_.rbegin(), xs_.rend());
    std::vector<double> ys(ys_.rbegin(), ys_.rend());
    return Series(std::move(xs), std::move(ys), dim_);
}

}  // namespace ucpt
