#pragma once

namespace maxiset {

/// Standard normal distribution function Φ.
double norm_cdf(double x);

/// Inverse of Φ on (0, 1); accurate to about 1e-15 relative.
double norm_quantile(double p);

/// Upper critical value x_α with α = 1 − Φ(x_α). Throws InvalidInput unless
/// 0 < α < 1.
double critical_value(double alpha);

}  // namespace maxiset
