#include "ksu/lossy_qfi.hpp"

#include <algorithm>
#include <cmath>

#include "ksu/error.hpp"
#include "ksu/fault.hpp"

namespace ksu::lossy {
namespace {

using fault::Site;
using fault::tweak;

using Row = std::array<double, 6>;

double dot(const Row& b, const MomentVector& H) {
    double s = 0.0;
    for (std::size_t i = 0; i < 6; ++i) s += b[i] * H.h[i];
    return s;
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

MomentVector MomentVector::from_number_moments(std::span<const double> n) {
    if (n.size() < 4) throw Error(Errc::invalid_argument, "need <n> through <n^4>");
    MomentVector H;
    H.h = {n[3] - n[1] * n[1], n[2], n[1], n[0], n[1] * n[0], n[0] * n[0]};
    return H;
}

void MomentVector::validate() const {
    if (!close_rel(h[4], h[2] * h[3], 1e-10) || !close_rel(h[5], h[3] * h[3], 1e-10))
        throw Error(Errc::invalid_argument, "moment vector products are inconsistent");
    if (h[0] < -1e-12 * std::max(1.0, h[2] * h[2]))
        throw Error(Errc::invalid_argument, "moment vector has negative Var(n^2)");
}

bool MomentVector::is_zero() const {
    for (double v : h)
        if (v != 0.0) return false;
    return true;
}

MomentVector moment_vector(double g, double alpha_abs) {
    const double A1 = analytic::abar(1, g, alpha_abs);
    const double A2 = analytic::abar(2, g, alpha_abs);
    const double A3 = analytic::abar(3, g, alpha_abs);
    InterferometerConfig c;
    c.g1 = c.g2 = g;
    c.alpha_abs = alpha_abs;
    MomentVector H;
    H.h = {analytic::qfi_ideal(c, 2) / 4.0, A3 + 3.0 * A2 + A1, A2 + A1, A1, A1 * (A2 + A1), A1 * A1};
    H.validate();
    return H;
}

double cq_bound(const MomentVector& H, const ChannelLoss& loss) {
    const double eta = loss.eta, m1 = loss.mu1, m2 = loss.mu2;
    require_transmissivity(eta, "eta");

    const double w1 = tweak(Site::cq_w1, 1.0 + 2.0 * m1 - m2);
    const double w2 = m1 - m2;
    const double w3 = tweak(Site::cq_w3, 1.0 + 2.0 * (3.0 * m1 - 2.0 * m2) + (2.0 * m1 - m2) * (4.0 * m1 - 3.0 * m2));
    const double w4 = 7.0 * m2 - 6.0 * m1 + 24.0 * m1 * m2 - 14.0 * m1 * m1 - 9.0 * m2 * m2;
    const double w5 = m2 * w1 - 2.0 * w2 * w2;
    const double w6 = tweak(Site::cq_w6, 9.0 + 40.0 * m1 - 22.0 * m2 + 44.0 * m1 * m1 - 48.0 * m1 * m2 + 13.0 * m2 * m2);
    const double w7 = 7.0 + 40.0 * m1 - 26.0 * m2 + 52.0 * m1 * m1 - 64.0 * m1 * m2 + 19.0 * m2 * m2;

    const double e = eta, e2 = eta * eta, e3 = e2 * eta;
    const double W1 = w1 * e2 - 2.0 * w2 * e - m2;
    const double W2 = tweak(Site::cq_big_w2, 2.0 * e * (3.0 * w1 * w1 * e3 - 3.0 * w3 * e2 - w4 * e + w5));
    const double W3 = tweak(Site::cq_big_w3, e * (11.0 * w1 * w1 * e3 - 2.0 * w6 * e2 + w7 * e - 4.0 * w1 * w2));
    const double W4 = e * (6.0 * e3 - 12.0 * e2 + 7.0 * e - 1.0) * w1 * w1;
    const double W5 = 2.0 * e * (1.0 - e) * w1 * W1;
    const double W6 = e2 * (1.0 - e) * (1.0 - e) * w1 * w1;

    const auto& h = H.h;
    return 4.0 * (W1 * W1 * h[0] - W2 * h[1] + W3 * h[2] - W4 * h[3] - W5 * h[4] - W6 * h[5]);
}

OptimalMu optimal_mu(const MomentVector& H, double eta) {
    require_transmissivity(eta, "eta");
    if (H.is_zero()) return {0.0, 0.0, true};

    const double A1 = eta - 1.0;
    const double A2 = 6.0 * eta * eta - 6.0 * eta + 1.0;
    const double A3 = 11.0 * eta * eta - 11.0 * eta + 2.0;
    const double A4 = 2.0 * eta - 1.0;

    const Row B1 = {tweak(Site::mu_opt_b1, eta * A1), -A2, A3, -A2, 2.0 * eta * A1, -eta * A1};
    const Row B2 = {A1 * A1, -3.0 * A1 * A4, A3 - A4, -A2, A1 * A4, -eta * A1};
    const Row B3 = {eta * eta, -3.0 * eta * A4, A3 + A4, -A2, eta * A4, -eta * A1};
    // eta * (A1^3 / eta, -6 A1^2, A3 - 2 A4, -A2, 2 A1^2, -eta A1)
    const Row B4 = {tweak(Site::mu_opt_b4, A1 * A1 * A1), -6.0 * eta * A1 * A1, eta * (A3 - 2.0 * A4),
                    -eta * A2, 2.0 * eta * A1 * A1, -eta * eta * A1};
    const Row B5 = {eta * A1, -A2, A3, -A2, eta * eta + A1 * A1, -eta * A1};

    const double A = 2.0 * dot(B1, H);
    const double B = dot(B2, H);
    const double C = dot(B3, H);
    const double D = dot(B4, H);
    const double E = eta * dot(B5, H);

    const double den = A * D - 2.0 * eta * B * B;
    if (std::abs(den) < 1e-14 * std::abs(A * D) || den == 0.0)
        throw Error(Errc::degenerate_system, "stationarity system for (mu1, mu2) is singular");
    return {(B * E - C * D) / den, (A * E - 2.0 * eta * B * C) / den, false};
}

double lossy_qfi(double g, double alpha_abs, double eta) {
    require_transmissivity(eta, "eta");
    const auto H = moment_vector(g, alpha_abs);
    const auto mu = optimal_mu(H, eta);
    if (mu.information_free) return 0.0;
    return cq_bound(H, {eta, mu.mu1, mu.mu2});
}

double baseline_fisher(const Baseline& input, double g) {
    struct Visitor {
        double g;
        double operator()(const CsVs& v) const {
            InterferometerConfig c;
            c.g1 = c.g2 = g;
            c.alpha_abs = v.alpha_abs;
            return analytic::qfi_ideal(c, 1);
        }
        double operator()(const analytic::CsCs& v) const { return analytic::qfi_baseline_ideal(v, g); }
        double operator()(const analytic::CsSvs& v) const { return analytic::qfi_baseline_ideal(v, g); }
    };
    return std::visit(Visitor{g}, input);
}

double baseline_mean_photons(const Baseline& input, double g) {
    const double ch = std::cosh(g), sh = std::sinh(g);
    struct Visitor {
        double g, ch, sh;
        double operator()(const CsVs& v) const { return analytic::abar(1, g, v.alpha_abs); }
        double operator()(const analytic::CsCs& v) const {
            const double amp = v.alpha_abs * sh + v.beta_abs * ch;
            return amp * amp + sh * sh;
        }
        double operator()(const analytic::CsSvs& v) const {
            const double shr = std::sinh(v.r);
            return (v.alpha_abs * v.alpha_abs + 1.0) * sh * sh + ch * ch * shr * shr;
        }
    };
    return tweak(Site::baseline_mean, std::visit(Visitor{g, ch, sh}, input));
}

double lossy_qfi_baseline(const Baseline& input, double g, double eta) {
    require_transmissivity(eta, "eta");
    const double F = baseline_fisher(input, g);
    const double n = baseline_mean_photons(input, g);
    const double den = (1.0 - eta) * F + 4.0 * eta * n;
    if (F == 0.0 || den == 0.0) return 0.0;
    return tweak(Site::baseline_e11, 4.0 * eta * F * n / den);
}

}  // namespace ksu::lossy
