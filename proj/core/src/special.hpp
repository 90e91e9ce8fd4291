#pragma once

#include <vector>

namespace ksu::detail {

// J_0(x), J_1(x), ... up to the order beyond which every remaining term of the
// Chebyshev expansion of exp(-i x t) is below 1e-18. Returns {1} for x == 0.
std::vector<double> chebyshev_bessel_coefficients(double x);

}  // namespace ksu::detail
