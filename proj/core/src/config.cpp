#include "ksu/config.hpp"

#include <cmath>
#include <string>

#include "ksu/error.hpp"

namespace ksu {

const char* to_string(Errc code) {
    switch (code) {
        case Errc::invalid_argument: return "invalid-argument";
        case Errc::unsupported_k: return "unsupported-k";
        case Errc::invalid_transmissivity: return "invalid-T";
        case Errc::unbalanced: return "unbalanced";
        case Errc::nonpositive: return "nonpositive";
        case Errc::zero_derivative: return "zero-derivative";
        case Errc::pole: return "pole";
        case Errc::degenerate_system: return "degenerate-system";
        case Errc::cutoff_too_small: return "cutoff-too-small";
        case Errc::cutoff_too_large: return "cutoff-too-large";
        case Errc::nonconvergence: return "nonconvergence";
        case Errc::unknown_figure: return "unknown-figure";
    }
    return "unknown";
}

bool InterferometerConfig::is_balanced() const {
    constexpr double tol = 1e-12;
    const double two_pi = 2.0 * std::numbers::pi;
    double d = std::remainder(theta2 - theta1 - std::numbers::pi, two_pi);
    return std::abs(d) < tol && std::abs(g1 - g2) < tol;
}

void require_transmissivity(double T, const char* name) {
    if (!(T > 0.0 && T <= 1.0))
        throw Error(Errc::invalid_transmissivity,
                    std::string(name) + " must lie in (0, 1], got " + std::to_string(T));
}

void require_supported_k(int k) {
    if (k != 1 && k != 2)
        throw Error(Errc::unsupported_k, "nonlinearity order must be 1 or 2, got " + std::to_string(k));
}

void LossConfig::validate() const {
    require_transmissivity(T1, "T1");
    require_transmissivity(T2, "T2");
}

}  // namespace ksu
