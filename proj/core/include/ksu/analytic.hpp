#pragma once

#include <complex>

#include "ksu/config.hpp"

// Closed-form sensitivities, quantum Fisher information and benchmark limits.
// Quadratures in this namespace use the X = a + a^dag normalization; the
// sensitivities do not depend on that choice.
namespace ksu::analytic {

using cplx = std::complex<double>;

// Laguerre polynomial L_m(x), m <= 8.
double laguerre(int m, double x);

// <b^dag^m b^m> after the first OPA: m! sinh^{2m}(g) L_m(-|alpha|^2), m in 1..4.
double abar(int m, double g, double alpha_abs);

// Intermediate quantities of the homodyne variance and slope. For k = 1 the
// Kerr-specific factors are unity: chi = Ibar = Z4 = 1, Z1 = Z2 = 0.
struct QuadratureTerms {
    cplx u, chi, Ibar, Z1, Z2, Z3, Z4;
    double UV_sq = 0.0;
    double Obar = 0.0;

    double variance() const { return UV_sq + Obar; }
    double slope() const { return 2.0 * (Z3 * Z4).real(); }
};

QuadratureTerms quadrature_terms(const InterferometerConfig& config);

// <X> of the output mode a with X = a + a^dag.
double signal(const InterferometerConfig& config);

// Error-propagation sensitivity at config.phi.
double sensitivity_analytic(const InterferometerConfig& config);

// Sensitivity at phi = 0 for a general coherent phase theta_alpha.
double sensitivity_optimal(const InterferometerConfig& config);

// Sensitivity at phi = 0 with internal (T1) and external (T2) loss.
double sensitivity_lossy_optimal(const InterferometerConfig& config, const LossConfig& loss);

// |alpha|^2 cosh 2g + 2 sinh^2 g, the mean photon number between the OPAs.
double n_total(const InterferometerConfig& config);

struct Limits {
    double sql, hl, shl;
};

Limits limits(double n_total);

// F1 = 4 Var(n_b) and F2 = 4 Var(n_b^2) after the first OPA.
double qfi_ideal(const InterferometerConfig& config, int k);

double qcrb(double fisher, int trials = 1);

// Lossless linear-phase QFI baselines: coherent light in both ports, and
// coherent light with a squeezed vacuum (squeezing r) in port b.
struct CsCs {
    double alpha_abs, beta_abs;
};
struct CsSvs {
    double alpha_abs, r;
};

double qfi_baseline_ideal(const CsCs& input, double g);
double qfi_baseline_ideal(const CsSvs& input, double g);

}  // namespace ksu::analytic
