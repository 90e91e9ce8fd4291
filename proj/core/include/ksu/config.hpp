#pragma once

#include <complex>
#include <numbers>

namespace ksu {

// Physical knobs of the Kerr SU(1,1) interferometer. OPA j applies
// exp(xi_j^* a b - xi_j a^dag b^dag) with xi_j = g_j e^{i theta_j}; the phase
// element applies exp(i phi (b^dag b)^k) to mode b.
struct InterferometerConfig {
    double g1 = 1.0;
    double g2 = 1.0;
    double theta1 = 0.0;
    double theta2 = std::numbers::pi;
    double alpha_abs = 1.0;
    double theta_alpha = std::numbers::pi / 2;
    int k = 2;
    double phi = 0.0;

    static InterferometerConfig balanced(double g, double alpha_abs, double theta_alpha, int k,
                                         double phi = 0.0) {
        InterferometerConfig c;
        c.g1 = c.g2 = g;
        c.theta1 = 0.0;
        c.theta2 = std::numbers::pi;
        c.alpha_abs = alpha_abs;
        c.theta_alpha = theta_alpha;
        c.k = k;
        c.phi = phi;
        return c;
    }

    // True when the second OPA undoes the first at phi = 0.
    bool is_balanced() const;

    std::complex<double> alpha() const { return std::polar(alpha_abs, theta_alpha); }
};

// Where the internal loss sits relative to the phase element. The closed-form
// lossy sensitivities correspond to after_phase; before_phase is kept so the
// two orderings can be compared numerically.
enum class InternalLossPlacement { after_phase, before_phase };

// Fictitious beam-splitter transmissivities. T1 acts on both modes between the
// OPAs, T2 on both modes after the second OPA.
struct LossConfig {
    double T1 = 1.0;
    double T2 = 1.0;
    InternalLossPlacement placement = InternalLossPlacement::after_phase;

    void validate() const;
};

// Throws Errc::invalid_transmissivity unless T lies in (0, 1].
void require_transmissivity(double T, const char* name);

// Throws Errc::unsupported_k unless k is 1 or 2.
void require_supported_k(int k);

}  // namespace ksu
