#include "ksu/analytic.hpp"

#include <cmath>
#include <string>

#include "ksu/error.hpp"
#include "ksu/fault.hpp"

namespace ksu::analytic {
namespace {

using fault::Site;
using fault::tweak;

void require_balanced(const InterferometerConfig& c) {
    if (!c.is_balanced())
        throw Error(Errc::unbalanced, "closed form needs g1 == g2 and theta2 - theta1 == pi");
}

// 1 / (cosh^2 g - e^{i 2 phi} sinh^2 g)
cplx chi_of(double g, double phi) {
    const double ch = std::cosh(g), sh = std::sinh(g);
    const cplx den = ch * ch - std::polar(1.0, 2.0 * phi) * (sh * sh);
    if (std::abs(den) < 1e-14) throw Error(Errc::pole, "chi(g, phi) is singular");
    return 1.0 / den;
}

cplx ibar_of(double g, double phi, double alpha_abs) {
    const cplx chi = chi_of(g, phi);
    return chi * chi * std::exp(alpha_abs * alpha_abs * (chi - 1.0));
}

double zero_gain_guard(double slope) {
    if (std::abs(slope) < 1e-12) throw Error(Errc::zero_derivative, "signal is stationary at this phase");
    return std::abs(slope);
}

}  // namespace

double laguerre(int m, double x) {
    if (m < 0 || m > 8) throw Error(Errc::invalid_argument, "Laguerre order must lie in 0..8");
    double prev = 1.0, cur = 1.0 - x;
    if (m == 0) return tweak(Site::laguerre, prev);
    for (int j = 1; j < m; ++j) {
        const double next = ((2.0 * j + 1.0 - x) * cur - j * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return tweak(Site::laguerre, cur);
}

double abar(int m, double g, double alpha_abs) {
    if (m < 1 || m > 4) throw Error(Errc::invalid_argument, "abar order must lie in 1..4");
    static constexpr double factorial[] = {1.0, 1.0, 2.0, 6.0, 24.0};
    static constexpr Site sites[] = {Site::none, Site::abar1, Site::abar2, Site::abar3, Site::abar4};
    const double s = std::sinh(g) * std::sinh(g);
    return tweak(sites[m], factorial[m] * std::pow(s, m) * laguerre(m, -alpha_abs * alpha_abs));
}

QuadratureTerms quadrature_terms(const InterferometerConfig& c) {
    require_balanced(c);
    require_supported_k(c.k);
    const double g = c.g1, phi = c.phi;
    const double ch = std::cosh(g), sh = std::sinh(g);
    const double a2 = c.alpha_abs * c.alpha_abs;
    const cplx alpha = c.alpha();
    const cplx i(0.0, 1.0);

    QuadratureTerms t;
    t.u = -std::polar(sh * sh, -phi);
    if (c.k == 1) {
        t.chi = 1.0;
        t.Ibar = 1.0;
        t.Z1 = t.Z2 = 0.0;
        t.Z4 = tweak(Site::quadrature_z4, 1.0);
    } else {
        t.chi = tweak(Site::quadrature_chi, 1.0) * chi_of(g, phi);
        t.Ibar = t.chi * t.chi * std::exp(a2 * (t.chi - 1.0));
        const cplx ibar2 = ibar_of(g, 2.0 * phi, c.alpha_abs);
        const cplx chi2 = chi_of(g, 2.0 * phi);
        t.Z1 = tweak(Site::quadrature_z1, 2.0) * (a2 + std::conj(alpha) * std::conj(alpha)) *
               std::conj(t.u) * t.Ibar * (t.chi - 1.0) * (ch * ch);
        // The subtracted term is the square of the one-phase overlap, which is
        // what <a_out>^2 contributes to the variance.
        t.Z2 = tweak(Site::quadrature_z2, 1.0) * alpha * alpha * t.u * t.u *
               (std::conj(ibar2) * std::polar(1.0, -2.0 * phi) * std::conj(chi2) -
                std::conj(t.Ibar) * std::conj(t.Ibar));
        const double abs_u = std::abs(t.u);
        const cplx e2 = std::polar(1.0, 2.0 * phi);
        t.Z4 = tweak(Site::quadrature_z4, 1.0) *
               (1.0 + 4.0 * e2 * abs_u * t.chi + 2.0 * a2 * e2 * abs_u * t.chi * t.chi);
    }
    t.Z3 = tweak(Site::quadrature_z3, 1.0) * i * std::conj(alpha) * std::conj(t.u) * t.Ibar;

    const double ch2 = std::cosh(2.0 * g), sh2 = std::sinh(2.0 * g);
    t.UV_sq = ch2 * ch2 - (std::polar(1.0, phi) * t.Ibar).real() * sh2 * sh2;
    t.Obar = 2.0 * a2 * std::norm(t.u) * (1.0 - std::norm(t.Ibar)) + 2.0 * (t.Z1 + t.Z2).real();
    return t;
}

double signal(const InterferometerConfig& c) {
    const auto t = quadrature_terms(c);
    const double ch = std::cosh(c.g1);
    return 2.0 * (c.alpha() * (ch * ch + t.u * std::conj(t.Ibar))).real();
}

double sensitivity_analytic(const InterferometerConfig& c) {
    const auto t = quadrature_terms(c);
    return std::sqrt(t.variance()) / zero_gain_guard(t.slope());
}

double sensitivity_optimal(const InterferometerConfig& c) {
    require_balanced(c);
    require_supported_k(c.k);
    if (c.phi != 0.0) throw Error(Errc::invalid_argument, "optimal-point formula needs phi = 0");
    const double n_alpha = c.alpha_abs * c.alpha_abs;
    const double n_opa = 2.0 * std::sinh(c.g1) * std::sinh(c.g1);
    const double sin_t = std::abs(std::sin(c.theta_alpha));
    zero_gain_guard(std::sqrt(n_alpha) * n_opa * sin_t);
    const double d1 = tweak(Site::optimal_k1, 1.0) / (std::sqrt(n_alpha) * n_opa * sin_t);
    if (c.k == 1) return d1;
    return d1 / (1.0 + tweak(Site::optimal_k2_gain, n_opa * (n_alpha + 2.0)));
}

double sensitivity_lossy_optimal(const InterferometerConfig& c, const LossConfig& loss) {
    loss.validate();
    auto linear = c;
    linear.k = 1;
    const double ideal_k1 = sensitivity_optimal(linear);
    const double sin_t = std::abs(std::sin(c.theta_alpha));
    const double T1 = loss.T1, T2 = loss.T2;
    const double s2 = std::pow(std::sinh(c.g1), 4);
    const double a2 = c.alpha_abs * c.alpha_abs;
    const double extra = tweak(Site::lossy_radicand, (1.0 - T1) * T2 * std::cosh(2.0 * c.g1) + 1.0 - T2) /
                         (4.0 * T1 * T2 * a2 * s2);
    // The loss terms do not depend on theta_alpha while the slope carries
    // sin(theta_alpha), so the whole expression scales by 1/sin(theta_alpha).
    const double d1_unit = ideal_k1 * sin_t;
    const double dl1 = std::sqrt(d1_unit * d1_unit + extra) / sin_t;
    if (c.k == 1) return dl1;
    const double n_opa = 2.0 * std::sinh(c.g1) * std::sinh(c.g1);
    return dl1 / (1.0 + tweak(Site::optimal_k2_gain, n_opa * (a2 + 2.0)));
}

double n_total(const InterferometerConfig& c) {
    const double a2 = c.alpha_abs * c.alpha_abs;
    return tweak(Site::n_total, a2 * std::cosh(2.0 * c.g1) + 2.0 * std::sinh(c.g1) * std::sinh(c.g1));
}

Limits limits(double n) {
    if (!(n > 0.0)) throw Error(Errc::nonpositive, "photon number must be positive");
    return {1.0 / std::sqrt(n), 1.0 / n, tweak(Site::limits, 1.0 / (n * n))};
}

double qfi_ideal(const InterferometerConfig& c, int k) {
    require_supported_k(k);
    const double g = c.g1, a = c.alpha_abs;
    const double A1 = abar(1, g, a), A2 = abar(2, g, a);
    const double f1 = tweak(Site::qfi_f1, 4.0 * (A2 + A1 - A1 * A1));
    if (k == 1) return f1;
    const double A3 = abar(3, g, a), A4 = abar(4, g, a);
    return f1 + tweak(Site::qfi_f, 4.0 * (A4 + 6.0 * (A3 + A2) - A2 * (A2 + 2.0 * A1)));
}

double qcrb(double fisher, int trials) {
    if (!(fisher > 0.0)) throw Error(Errc::nonpositive, "Fisher information must be positive");
    if (trials < 1) throw Error(Errc::invalid_argument, "trials must be at least 1");
    return 1.0 / std::sqrt(trials * fisher);
}

double qfi_baseline_ideal(const CsCs& in, double g) {
    const double a2 = in.alpha_abs * in.alpha_abs, b2 = in.beta_abs * in.beta_abs;
    const double sh2g = std::sinh(2.0 * g);
    return tweak(Site::baseline_e13, (a2 + b2) * std::cosh(4.0 * g) + sh2g * sh2g +
                                         2.0 * in.alpha_abs * in.beta_abs * std::sinh(4.0 * g) + a2 + b2 -
                                         2.0 * (a2 - b2) * std::cosh(2.0 * g));
}

double qfi_baseline_ideal(const CsSvs& in, double g) {
    const double a2 = in.alpha_abs * in.alpha_abs, r = in.r;
    const double ch2g = std::cosh(2.0 * g), sh2g = std::sinh(2.0 * g);
    const double sh2r = std::sinh(2.0 * r), chr = std::cosh(r);
    return tweak(Site::baseline_e14, ch2g * ch2g * (0.5 * sh2r * sh2r + a2) +
                                         sh2g * sh2g * (a2 * std::exp(2.0 * r) + chr * chr) +
                                         a2 * (1.0 - 2.0 * ch2g) +
                                         0.25 * (std::cosh(4.0 * r) - 1.0) * (2.0 * ch2g + 1.0));
}

}  // namespace ksu::analytic
