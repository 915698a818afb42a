#pragma once

namespace plexp::math {

// Error function and complement, rational-approximation implementation
// accurate to ~1.5e-16 relative (not a wrapper over the C library, so
// results are bit-stable across platforms and libm versions).
double erf(double x);
double erfc(double x);

// Inverse standard normal CDF. Requires 0 < p < 1.
double normal_quantile(double p);

// Standard normal CDF.
double normal_cdf(double x);

} // namespace plexp::math
