#pragma once

namespace fdrlab {

// Standard normal distribution function. Absolute error below 1e-12 for |x| <= 8.
double std_normal_cdf(double x);

// Inverse of std_normal_cdf on (0, 1). Throws DomainError at u <= 0 or u >= 1.
// Composed round trips cdf(quantile(u)) agree with u to better than 1e-10.
double std_normal_quantile(double u);

}  // namespace fdrlab
