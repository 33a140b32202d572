#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucpt/rng.hpp"
#include "ucpt/series.hpp"

namespace ucpt {

// A named distribution family plus parameters; the seedable description of a
// data-generating marginal. scale_shift and negate_second wrap a base spec.
struct DistSpec {
    enum class Family {
        normal,           // (mu, sigma)
        uniform,          // (a, b)
        exponential,      // rate
        student_t,        // integer df >= 1
        bivariate_normal, // correlation rho, standard normal marginals
        tabulated,        // uniform draw from a fixed value table
        scale_shift,      // scale * base + shift (univariate base)
        negate_second,    // (x, y) -> (x, -y) (bivariate base)
    };

    Family family = Family::normal;
    double p1 = 0.0;  // mu / a / rate / df / rho / scale
    double p2 = 1.0;  // sigma / b / shift
    std::vector<double> table;
    std::shared_ptr<DistSpec> base;

    int dimension() const;

    static DistSpec normal(double mu, double sigma);
    static DistSpec uniform(double a, double b);
    static DistSpec exponential(double rate);
    static DistSpec student_t(int df);
    static DistSpec bivariate_normal(double rho);
    static DistSpec tabulated(std::vector<double> values);
    static DistSpec scale_shift(DistSpec base, double scale, double shift);
    static DistSpec negate_second(DistSpec base);

    // JSON form, e.g. {"family":"normal","mu":0,"sigma":1}.
    static DistSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    // CLI mini-syntax: "normal:0,1", "uniform:0,1", "exponential:1",
    // "student_t:3", "binormal:0.5".
    static DistSpec parse(const std::string& text);
};

// One draw from the given distribution, consuming the given stream.
Observation sample(const DistSpec& spec, Xoshiro256pp& rng);

// A spec bound to its own generator state. Each concurrent worker owns its
// sampler; copies share nothing.
class Sampler {
  public:
    Sampler(DistSpec spec, std::uint64_t seed)
        : spec_(std::move(spec)), rng_(seed) {}

    Observation draw() { return sample(spec_, rng_); }
    const DistSpec& spec() const { return spec_; }
    int dimension() const { return spec_.dimension(); }

  private:
    DistSpec spec_;
    Xoshiro256pp rng_;
};

}  // namespace ucpt
