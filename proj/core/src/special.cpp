#include "special.hpp"

#include <cmath>

namespace ksu::detail {

// Miller's backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized with
// J_0 + 2 sum_k J_{2k} = 1. Starting well above both x and the wanted order
// makes the spurious Y_k component decay away.
std::vector<double> chebyshev_bessel_coefficients(double x) {
    if (x == 0.0) return {1.0};
    const int top = static_cast<int>(x + 25.0 * std::cbrt(x) + 60.0) / 2 * 2;
    std::vector<double> j(static_cast<std::size_t>(top) + 2, 0.0);
    j[static_cast<std::size_t>(top)] = 1e-300;
    for (int k = top; k >= 1; --k) {
        j[static_cast<std::size_t>(k) - 1] = (2.0 * k / x) * j[static_cast<std::size_t>(k)] - j[static_cast<std::size_t>(k) + 1];
        if (std::abs(j[static_cast<std::size_t>(k) - 1]) > 1e250)
            for (int m = k - 1; m <= top; ++m) j[static_cast<std::size_t>(m)] *= 1e-250;
    }
    double norm = j[0];
    for (int k = 2; k <= top; k += 2) norm += 2.0 * j[static_cast<std::size_t>(k)];
    for (auto& v : j) v /= norm;

    std::size_t keep = j.size();
    for (std::size_t k = static_cast<std::size_t>(x) + 1; k < j.size(); ++k) {
        if (std::abs(j[k]) < 1e-18) {
            keep = k;
            break;
        }
    }
    j.resize(keep);
    return j;
}

}  // namespace ksu::detail
