#include "ksu/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "ksu/error.hpp"
#include "ksu/numeric.hpp"

namespace ksu::oracle {

using fock::cplx;
using fock::Cutoff;
using fock::Mode;
using fock::TwoModePureState;

namespace {

// Moments of a grid vector given as a callable v(n_a, n_b); entries outside
// [0, n] are treated as zero.
template <class V>
PairMoments grid_moments(int n, const std::vector<double>& sq, V&& v) {
    PairMoments m;
    cplx b, b2;
    for (int na = 0; na <= n; ++na) {
        for (int nb = 0; nb <= n; ++nb) {
            const cplx x = v(na, nb);
            if (x == cplx(0.0)) continue;
            const double p = std::norm(x);
            m.norm += p;
            m.ada += na * p;
            m.bdb += nb * p;
            if (na >= 1) m.a += std::conj(v(na - 1, nb)) * sq[na] * x;
            if (nb >= 1) b += std::conj(v(na, nb - 1)) * sq[nb] * x;
            if (na >= 1 && nb >= 1) m.ab += std::conj(v(na - 1, nb - 1)) * (sq[na] * sq[nb]) * x;
            if (na >= 2) m.a2 += std::conj(v(na - 2, nb)) * (sq[na] * sq[na - 1]) * x;
            if (nb >= 2) b2 += std::conj(v(na, nb - 2)) * (sq[nb] * sq[nb - 1]) * x;
            if (na >= 1 && nb < n) m.a_bdag += std::conj(v(na - 1, nb + 1)) * (sq[na] * sq[nb + 1]) * x;
        }
    }
    m.bdag = std::conj(b);
    m.bdag2 = std::conj(b2);
    return m;
}

std::vector<double> sqrt_table(int n) {
    std::vector<double> s(static_cast<std::size_t>(n) + 2);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sqrt(static_cast<double>(i));
    return s;
}

bool probe_converged(const TwoModePureState& psi) {
    const auto& c = psi.cutoff();
    if (psi.tail_probability() > c.tail_tol) return false;
    for (int order = 1; order <= 4; ++order)
        if (fock::moment_tail_fraction(psi, Mode::b, order) > c.moment_tol) return false;
    for (int order = 1; order <= 2; ++order)
        if (fock::moment_tail_fraction(psi, Mode::a, order) > c.moment_tol) return false;
    return true;
}

}  // namespace

PairMoments pair_moments(const TwoModePureState& psi) {
    const int n = psi.n_max();
    const auto sq = sqrt_table(n);
    return grid_moments(n, sq, [&](int na, int nb) { return psi(na, nb); });
}

PairMoments lossy_pair_moments(const TwoModePureState& psi, double T,
                               std::optional<std::pair<double, int>> phase_after_loss) {
    require_transmissivity(T, "T");
    const int n = psi.n_max();
    const std::size_t side = static_cast<std::size_t>(n) + 1;
    const auto sq = sqrt_table(n);
    const auto c = fock::loss_amplitudes(n, T);
    auto amp = [&](int m, int l) { return c[static_cast<std::size_t>(m) * side + static_cast<std::size_t>(l)]; };

    std::vector<cplx> phase(side, cplx(1.0));
    if (phase_after_loss) {
        const auto [phi, k] = *phase_after_loss;
        require_supported_k(k);
        for (int nb = 0; nb <= n; ++nb)
            phase[static_cast<std::size_t>(nb)] = fock::phase_factor(phi, k == 1 ? nb : static_cast<long long>(nb) * nb);
    }
    const std::vector<cplx> no_phase(side, cplx(1.0));

    // Summing the Kraus branches K_la (x) K_lb of both modes, a moment with
    // partner offset (da, db) and a weight w_a(n_a) w_b(n_b) on the surviving
    // photon numbers becomes
    //   sum_{ma, mb} conj(psi(ma - da, mb - db)) psi(ma, mb) Ka(ma) Kb(mb),
    //   K(m) = sum_l c(m - d, l) c(m, l) w(m - l) conj(ph(m - d - l)) ph(m - l),
    // with ph the phase applied after the loss (identity on mode a).
    using Weight = double (*)(const std::vector<double>&, int);
    auto kernel = [&](int d, Weight w, const std::vector<cplx>& ph) {
        std::vector<cplx> K(side, cplx(0.0));
        for (int m = std::max(0, d); m <= n && m - d <= n; ++m) {
            cplx sum = 0.0;
            for (int l = 0; l <= std::min(m, m - d); ++l) {
                const int nl = m - l;
                sum += amp(m - d, l) * amp(m, l) * w(sq, nl) *
                       std::conj(ph[static_cast<std::size_t>(nl - d)]) * ph[static_cast<std::size_t>(nl)];
            }
            K[static_cast<std::size_t>(m)] = sum;
        }
        return K;
    };
    const Weight one = [](const std::vector<double>&, int) { return 1.0; };
    const Weight number = [](const std::vector<double>&, int k) { return static_cast<double>(k); };
    const Weight lower = [](const std::vector<double>& q, int k) { return q[static_cast<std::size_t>(k)]; };
    const Weight lower2 = [](const std::vector<double>& q, int k) {
        return k >= 2 ? q[static_cast<std::size_t>(k)] * q[static_cast<std::size_t>(k - 1)] : 0.0;
    };
    const Weight raise = [](const std::vector<double>& q, int k) { return q[static_cast<std::size_t>(k + 1)]; };

    auto moment = [&](int da, const std::vector<cplx>& Ka, int db, const std::vector<cplx>& Kb) {
        cplx sum = 0.0;
        for (int ma = std::max(0, da); ma <= n && ma - da <= n; ++ma) {
            if (Ka[static_cast<std::size_t>(ma)] == cplx(0.0)) continue;
            cplx row = 0.0;
            for (int mb = std::max(0, db); mb <= n && mb - db <= n; ++mb)
                row += std::conj(psi(ma - da, mb - db)) * psi(ma, mb) * Kb[static_cast<std::size_t>(mb)];
            sum += Ka[static_cast<std::size_t>(ma)] * row;
        }
        return sum;
    };

    const auto a_one = kernel(0, one, no_phase), b_one = kernel(0, one, phase);
    PairMoments m;
    m.norm = moment(0, a_one, 0, b_one).real();
    m.ada = moment(0, kernel(0, number, no_phase), 0, b_one).real();
    m.bdb = moment(0, a_one, 0, kernel(0, number, phase)).real();
    const auto a_low = kernel(1, lower, no_phase), b_low = kernel(1, lower, phase);
    m.a = moment(1, a_low, 0, b_one);
    m.bdag = std::conj(moment(0, a_one, 1, b_low));
    m.ab = moment(1, a_low, 1, b_low);
    m.a2 = moment(2, kernel(2, lower2, no_phase), 0, b_one);
    m.bdag2 = std::conj(moment(0, a_one, 2, kernel(2, lower2, phase)));
    m.a_bdag = moment(1, a_low, -1, kernel(-1, raise, phase));
    return m;
}

fock::QuadratureMoments output_quadrature(const PairMoments& m, double g2, double theta2, double T2) {
    require_transmissivity(T2, "T2");
    const double c = std::cosh(g2), s = std::sinh(g2);
    const cplx e = std::polar(1.0, theta2);
    // A = S2^dag a S2 = c a - e s b^dag
    const cplx A = c * m.a - e * s * m.bdag;
    const double AdA = (c * c * m.ada + s * s * (m.bdb + m.norm) -
                        2.0 * c * s * (e * std::conj(m.ab)).real());
    const cplx A2 = c * c * m.a2 - 2.0 * c * s * e * m.a_bdag + e * e * s * s * m.bdag2;
    // Pure loss on the measured mode scales normally ordered moments by T^{(p+q)/2}.
    const cplx a_out = std::sqrt(T2) * A / m.norm;
    const cplx a2_out = T2 * A2 / m.norm;
    const double n_out = T2 * AdA / m.norm;
    return {std::sqrt(2.0) * a_out.real(), a2_out.real() + n_out + 0.5};
}

TwoModePureState probe_state(const InterferometerConfig& config, const Cutoff& cutoff) {
    cutoff.validate();
    for (int n = cutoff.n_max;;) {
        auto psi = fock::make_input(config.alpha_abs, config.theta_alpha, cutoff.with_n_max(n));
        psi = fock::apply_opa(psi, config.g1, config.theta1);
        if (probe_converged(psi)) return psi;
        if (psi.n_max() >= Cutoff::hard_cap)
            throw Error(Errc::cutoff_too_small, "probe state moments do not converge under the hard cap");
        n = std::min(2 * psi.n_max(), Cutoff::hard_cap);
    }
}

TwoModePureState output_state(const InterferometerConfig& config, const Cutoff& cutoff) {
    auto psi = probe_state(config, cutoff);
    psi = fock::apply_phase(psi, config.phi, config.k);
    return fock::apply_opa(psi, config.g2, config.theta2);
}

Pipeline::Pipeline(const InterferometerConfig& config, std::optional<LossConfig> loss, const Cutoff& cutoff)
    : config_(config), loss_(loss), probe_(probe_state(config, cutoff)) {
    require_supported_k(config.k);
    if (loss_) loss_->validate();
}

fock::QuadratureMoments Pipeline::output(double phi) const {
    if (!loss_ || loss_->T1 == 1.0) {
        auto psi = fock::apply_phase(probe_, phi, config_.k);
        return output_quadrature(pair_moments(psi), config_.g2, config_.theta2, loss_ ? loss_->T2 : 1.0);
    }
    PairMoments m;
    if (loss_->placement == InternalLossPlacement::after_phase)
        m = lossy_pair_moments(fock::apply_phase(probe_, phi, config_.k), loss_->T1);
    else
        m = lossy_pair_moments(probe_, loss_->T1, std::make_pair(phi, config_.k));
    return output_quadrature(m, config_.g2, config_.theta2, loss_->T2);
}

std::vector<double> signal_curve(const InterferometerConfig& config, std::span<const double> phis,
                                 std::optional<LossConfig> loss, const Cutoff& cutoff) {
    Pipeline p(config, loss, cutoff);
    std::vector<double> out;
    out.reserve(phis.size());
    for (double phi : phis) out.push_back(p.output(phi).mean);
    return out;
}

double sensitivity_numeric(const Pipeline& pipeline, double phi, double h, double quadrature_scale) {
    if (!(h >= 1e-6 && h <= 1e-2)) throw Error(Errc::invalid_argument, "finite-difference step must lie in [1e-6, 1e-2]");
    if (!(quadrature_scale > 0.0)) throw Error(Errc::invalid_argument, "quadrature scale must be positive");
    auto mean = [&](double p) { return quadrature_scale * pipeline.output(p).mean; };
    const double slope = richardson_derivative(mean, phi, h);
    if (std::abs(slope) < 1e-12) throw Error(Errc::zero_derivative, "signal is stationary at this phase");
    const auto q = pipeline.output(phi);
    const double var = quadrature_scale * quadrature_scale * q.variance();
    return std::sqrt(std::max(var, 0.0)) / std::abs(slope);
}

double sensitivity_numeric(const InterferometerConfig& config, std::optional<LossConfig> loss, double h,
                           const Cutoff& cutoff, double quadrature_scale) {
    return sensitivity_numeric(Pipeline(config, loss, cutoff), config.phi, h, quadrature_scale);
}

double pure_qfi_numeric(const InterferometerConfig& config, int k, const Cutoff& cutoff) {
    require_supported_k(k);
    const auto psi = probe_state(config, cutoff);
    const auto m = fock::number_moments(psi, Mode::b, 4);
    return k == 1 ? 4.0 * (m[1] - m[0] * m[0]) : 4.0 * (m[3] - m[1] * m[1]);
}

double mixed_qfi_small(const DensityFamily& rho_of_phi, double phi, double h) {
    const auto rho = rho_of_phi(phi);
    if (rho.n_max() > mixed_qfi_max_n)
        throw Error(Errc::cutoff_too_large, "mixed-state QFI is limited to n_max <= 12");
    auto entries = [&](double p) -> Eigen::MatrixXcd { return rho_of_phi(p).entries(); };
    const Eigen::MatrixXcd drho = richardson_derivative(entries, phi, h);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries());
    const Eigen::VectorXd p = es.eigenvalues();
    const Eigen::MatrixXcd d = es.eigenvectors().adjoint() * drho * es.eigenvectors();
    constexpr double eps = 1e-12;
    double f = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        for (Eigen::Index j = 0; j < p.size(); ++j) {
            const double s = p(i) + p(j);
            if (s > eps) f += 2.0 * std::norm(d(i, j)) / s;
        }
    return f;
}

DensityFamily lossy_kerr_family(const TwoModePureState& probe, int k, double eta,
                                InternalLossPlacement placement, int n_small) {
    require_supported_k(k);
    require_transmissivity(eta, "eta");
    if (n_small > mixed_qfi_max_n)
        throw Error(Errc::cutoff_too_large, "mixed-state QFI is limited to n_max <= 12");
    const auto rho0 = fock::TwoModeDensityMatrix::from_pure(probe.projected(n_small));
    if (placement == InternalLossPlacement::before_phase) {
        auto lossy = fock::apply_loss(rho0, eta, Mode::b);
        return [lossy, k](double phi) { return fock::apply_phase(lossy, phi, k); };
    }
    return [rho0, k, eta](double phi) { return fock::apply_loss(fock::apply_phase(rho0, phi, k), eta, Mode::b); };
}

}  // namespace ksu::oracle
