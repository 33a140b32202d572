#pragma once

#include <span>
#include <vector>

#include "ucpt/errors.hpp"

namespace ucpt {

// One observation: a real scalar or a pair of real scalars. Univariate
// kernels read .x only.
struct Observation {
    double x = 0.0;
    double y = 0.0;
};

// An ordered sample, stored column-wise so the hot loops can stream over
// contiguous doubles. All values are checked finite at construction.
class Series {
  public:
    static Series univariate(std::vector<double> xs);
    static Series bivariate(std::vector<double> xs, std::vector<double> ys);

    int dimension() const { return dim_; }
    std::size_t size() const { return xs_.size(); }

    Observation operator[](std::size_t i) const {
        return {xs_[i], dim_ == 2 ? ys_[i] : 0.0};
    }

    std::span<const double> xs() const { return xs_; }
    std::span<const double> ys() const { return ys_; }

    Series reversed() const;

  private:
    Series(std::vector<double> xs, std::vector<double> ys, int dim);

    std::vector<double> xs_;
    std::vector<double> ys_;
    int dim_;
};

}  // namespace ucpt
