#pragma once

namespace ucpt {

// Distribution of sup_{0<=t<=1} |B(t)| for a Brownian bridge B (the
// Kolmogorov distribution). The 95% point is ~1.3581.

// CDF K(x); 0 for x <= 0. Uses the alternating exponential series for
// x >= 0.2 and the dual theta series for x < 0.2.
double kolmogorov_cdf(double x);

// Inverse of K on (0,1); throws ConfigError outside the open interval.
double kolmogorov_quantile(double p);

// 1 - K(t), clamped to [0,1].
double p_value(double t);

}  // namespace ucpt
