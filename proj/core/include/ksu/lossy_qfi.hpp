#pragma once

#include <array>
#include <span>
#include <variant>

#include "ksu/analytic.hpp"

// Purification bound on the quantum Fisher information of the Kerr phase when
// mode b suffers a pure-loss channel of transmissivity eta, and the
// linear-phase lossy baselines it is compared against.
namespace ksu::lossy {

// Variational Kraus parameters (mu1, mu2); (0, 0) places the loss before the
// phase element and (-1, -1) after it.
struct ChannelLoss {
    double eta = 1.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
};

// (Var(n^2), <n^3>, <n^2>, <n>, <n^2><n>, <n>^2) of mode b after the first OPA.
struct MomentVector {
    std::array<double, 6> h{};

    // Builds H from <n>, <n^2>, <n^3>, <n^4>.
    static MomentVector from_number_moments(std::span<const double> n);
    // Throws unless h5 = h3 h4, h6 = h4^2 and h1 >= 0.
    void validate() const;
    bool is_zero() const;
};

MomentVector moment_vector(double g, double alpha_abs);

double cq_bound(const MomentVector& H, const ChannelLoss& loss);

struct OptimalMu {
    double mu1 = 0.0;
    double mu2 = 0.0;
    // Set when H vanishes (g = 0): the stationary system is 0/0 and the bound
    // is zero by convention.
    bool information_free = false;
};

OptimalMu optimal_mu(const MomentVector& H, double eta);

// cq_bound at the stationary (mu1, mu2).
double lossy_qfi(double g, double alpha_abs, double eta);

struct CsVs {
    double alpha_abs;
};
using Baseline = std::variant<CsVs, analytic::CsCs, analytic::CsSvs>;

// Lossless linear-phase QFI and mean photon number in mode b for a baseline input.
double baseline_fisher(const Baseline& input, double g);
double baseline_mean_photons(const Baseline& input, double g);

// 4 eta F <n> / ((1 - eta) F + 4 eta <n>)
double lossy_qfi_baseline(const Baseline& input, double g, double eta);

}  // namespace ksu::lossy
