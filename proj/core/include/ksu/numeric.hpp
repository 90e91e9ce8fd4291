#pragma once

#include <type_traits>

namespace ksu {

// Central difference with one Richardson step:
// (4 D(h/2) - D(h)) / 3, where D(h) = (f(x+h) - f(x-h)) / 2h.
// Works for any f whose values form a vector space (doubles, complex numbers,
// Eigen matrices).
template <class F>
auto richardson_derivative(F&& f, double x, double h) {
    using T = std::decay_t<decltype(f(x))>;
    T d_h = (f(x + h) - f(x - h)) / (2.0 * h);
    T d_half = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    T out = (4.0 * d_half - d_h) / 3.0;
    return out;
}

}  // namespace ksu
