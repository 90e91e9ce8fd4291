#include "ksu/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ksu/config.hpp"
#include "ksu/error.hpp"
#include "special.hpp"

namespace ksu::fock {
namespace {

std::vector<double> sqrt_table(int n_max) {
    std::vector<double> s(static_cast<std::size_t>(n_max) + 2);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sqrt(static_cast<double>(i));
    return s;
}

// exp(-i lam Htilde) psi by a Chebyshev expansion, where Htilde = (i/lam) K and
// K is the truncated two-mode squeezing generator. The generator only couples
// |n_a, n_b> to |n_a +- 1, n_b +- 1>, so each product with K is a stencil
// sweep and no matrix is ever formed. lam bounds the spectral radius of iK by
// Gershgorin, which keeps every Chebyshev vector bounded in norm.
std::vector<cplx> propagate_opa(std::span<const cplx> psi, int n, double g, double theta) {
    const std::size_t side = static_cast<std::size_t>(n) + 1;
    const cplx xi = std::polar(g, theta);
    const double lam = g * (2.0 * n + 2.0);
    const auto sq = sqrt_table(n + 1);

    // y = (i/lam) K v
    auto apply_h = [&](const std::vector<cplx>& v, std::vector<cplx>& y) {
        const cplx down = cplx(0.0, 1.0) * std::conj(xi) / lam;
        const cplx up = cplx(0.0, -1.0) * xi / lam;
        for (std::size_t na = 0; na < side; ++na) {
            for (std::size_t nb = 0; nb < side; ++nb) {
                cplx acc = 0.0;
                if (na < side - 1 && nb < side - 1)
                    acc += down * (sq[na + 1] * sq[nb + 1]) * v[(na + 1) * side + nb + 1];
                if (na > 0 && nb > 0) acc += up * (sq[na] * sq[nb]) * v[(na - 1) * side + nb - 1];
                y[na * side + nb] = acc;
            }
        }
    };

    const auto coeff = detail::chebyshev_bessel_coefficients(lam);
    std::vector<cplx> prev(psi.begin(), psi.end());
    std::vector<cplx> out(prev.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff[0] * prev[i];
    if (coeff.size() == 1) return out;

    std::vector<cplx> cur(prev.size()), next(prev.size());
    apply_h(prev, cur);
    const cplx minus_i(0.0, -1.0);
    cplx phase = minus_i;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += 2.0 * coeff[1] * phase * cur[i];

    for (std::size_t m = 2; m < coeff.size(); ++m) {
        apply_h(cur, next);
        phase *= minus_i;
        const cplx c = 2.0 * coeff[m] * phase;
        for (std::size_t i = 0; i < out.size(); ++i) {
            next[i] = 2.0 * next[i] - prev[i];
            out[i] += c * next[i];
        }
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    return out;
}

std::vector<double> marginal(const TwoModePureState& psi, Mode mode) {
    const int n = psi.n_max();
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    for (int na = 0; na <= n; ++na)
        for (int nb = 0; nb <= n; ++nb) p[mode == Mode::a ? na : nb] += std::norm(psi(na, nb));
    return p;
}

std::vector<double> marginal(const TwoModeDensityMatrix& rho, Mode mode) {
    const int n = rho.n_max();
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    for (int na = 0; na <= n; ++na)
        for (int nb = 0; nb <= n; ++nb) {
            auto i = rho.index(na, nb);
            p[mode == Mode::a ? na : nb] += rho.entries()(i, i).real();
        }
    return p;
}

double band_mass(const TwoModePureState& psi) {
    const int n = psi.n_max();
    const int first = n + 1 - band_width(n);
    double tail = 0.0;
    for (int na = 0; na <= n; ++na)
        for (int nb = 0; nb <= n; ++nb)
            if (na >= first || nb >= first) tail += std::norm(psi(na, nb));
    return tail;
}

std::vector<double> moments_from_marginal(const std::vector<double>& p, int max_order) {
    if (max_order < 1 || max_order > 4)
        throw Error(Errc::invalid_argument, "max_order must be in 1..4");
    std::vector<double> out(static_cast<std::size_t>(max_order), 0.0);
    for (std::size_t n = 0; n < p.size(); ++n) {
        double pw = 1.0;
        for (int j = 0; j < max_order; ++j) {
            pw *= static_cast<double>(n);
            out[static_cast<std::size_t>(j)] += pw * p[n];
        }
    }
    return out;
}

QuadratureMoments from_ladder(cplx c, cplx c2, double cdc) {
    return {std::sqrt(2.0) * c.real(), c2.real() + cdc + 0.5};
}

}  // namespace

void Cutoff::validate() const {
    if (n_max < 1 || n_max > hard_cap)
        throw Error(Errc::invalid_argument, "n_max must lie in 1.." + std::to_string(hard_cap));
    if (!(tail_tol > 0.0) || !(moment_tol > 0.0))
        throw Error(Errc::invalid_argument, "cutoff tolerances must be positive");
}

int band_width(int n_max) { return std::min(n_max, std::max(2, (n_max + 1) / 32)); }

TwoModePureState::TwoModePureState(Cutoff cutoff, std::vector<cplx> amplitudes)
    : cutoff_(cutoff), amp_(std::move(amplitudes)) {
    cutoff_.validate();
    if (amp_.size() != static_cast<std::size_t>(side()) * side())
        throw Error(Errc::invalid_argument, "amplitude grid does not match the cutoff");
}

TwoModePureState TwoModePureState::basis(Cutoff cutoff, int n_a, int n_b) {
    const std::size_t side = static_cast<std::size_t>(cutoff.n_max) + 1;
    if (n_a < 0 || n_b < 0 || n_a > cutoff.n_max || n_b > cutoff.n_max)
        throw Error(Errc::invalid_argument, "basis state outside the grid");
    std::vector<cplx> amp(side * side);
    amp[static_cast<std::size_t>(n_a) * side + static_cast<std::size_t>(n_b)] = 1.0;
    return {cutoff, std::move(amp)};
}

double TwoModePureState::norm_squared() const {
    double s = 0.0;
    for (const auto& c : amp_) s += std::norm(c);
    return s;
}

double TwoModePureState::tail_probability() const { return band_mass(*this); }

TwoModePureState TwoModePureState::padded(int n) const {
    if (n < n_max()) throw Error(Errc::invalid_argument, "padding cannot shrink the grid");
    const std::size_t s = static_cast<std::size_t>(n) + 1;
    std::vector<cplx> amp(s * s);
    for (int na = 0; na <= n_max(); ++na)
        for (int nb = 0; nb <= n_max(); ++nb)
            amp[static_cast<std::size_t>(na) * s + static_cast<std::size_t>(nb)] = (*this)(na, nb);
    return {cutoff_.with_n_max(n), std::move(amp)};
}

TwoModePureState TwoModePureState::projected(int n) const {
    if (n > n_max()) return padded(n);
    const std::size_t s = static_cast<std::size_t>(n) + 1;
    std::vector<cplx> amp(s * s);
    double norm = 0.0;
    for (int na = 0; na <= n; ++na)
        for (int nb = 0; nb <= n; ++nb) {
            cplx c = (*this)(na, nb);
            amp[static_cast<std::size_t>(na) * s + static_cast<std::size_t>(nb)] = c;
            norm += std::norm(c);
        }
    if (norm <= 0.0) throw Error(Errc::invalid_argument, "projection removes the whole state");
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& c : amp) c *= scale;
    return {cutoff_.with_n_max(n), std::move(amp)};
}

TwoModeDensityMatrix::TwoModeDensityMatrix(Cutoff cutoff, Eigen::MatrixXcd entries)
    : cutoff_(cutoff), rho_(std::move(entries)) {
    cutoff_.validate();
    if (cutoff_.n_max > max_n)
        throw Error(Errc::cutoff_too_large,
                    "dense density matrices are limited to n_max <= " + std::to_string(max_n));
    const Eigen::Index d = static_cast<Eigen::Index>(side()) * side();
    if (rho_.rows() != d || rho_.cols() != d)
        throw Error(Errc::invalid_argument, "density matrix does not match the cutoff");
    if (hermiticity_error() > 1e-12 * std::max(1.0, rho_.cwiseAbs().maxCoeff()))
        throw Error(Errc::invalid_argument, "density matrix is not Hermitian");
    if (std::abs(trace() - cplx(1.0)) > 1e-10)
        throw Error(Errc::invalid_argument, "density matrix trace differs from 1");
}

TwoModeDensityMatrix TwoModeDensityMatrix::from_pure(const TwoModePureState& psi) {
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(),
                                         static_cast<Eigen::Index>(psi.amplitudes().size()));
    return {psi.cutoff(), v * v.adjoint()};
}

double TwoModeDensityMatrix::hermiticity_error() const {
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double TwoModeDensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

TwoModePureState make_input(double alpha_abs, double theta_alpha, const Cutoff& cutoff) {
    cutoff.validate();
    if (alpha_abs < 0.0) throw Error(Errc::invalid_argument, "|alpha| must be non-negative");
    const cplx alpha = std::polar(alpha_abs, theta_alpha);
    for (int n = cutoff.n_max;; n *= 2) {
        n = std::min(n, Cutoff::hard_cap);
        const std::size_t side = static_cast<std::size_t>(n) + 1;
        std::vector<cplx> amp(side * side);
        cplx c = std::exp(-0.5 * alpha_abs * alpha_abs);
        for (int j = 0; j <= n; ++j) {
            if (j > 0) c *= alpha / std::sqrt(static_cast<double>(j));
            amp[static_cast<std::size_t>(j) * side] = c;
        }
        TwoModePureState psi(cutoff.with_n_max(n), std::move(amp));
        // The exact state has unit norm, so whatever the grid misses counts
        // as tail along with the top band.
        const double missing = std::max(0.0, 1.0 - psi.norm_squared());
        if (psi.tail_probability() + missing <= cutoff.tail_tol) return psi;
        if (n == Cutoff::hard_cap)
            throw Error(Errc::cutoff_too_small, "coherent input needs more than the hard cap");
    }
}

TwoModePureState apply_opa(const TwoModePureState& state, double g, double theta) {
    if (g < 0.0) throw Error(Errc::invalid_argument, "gain must be non-negative");
    if (g == 0.0) return state;
    const double norm_in = state.norm_squared();
    TwoModePureState in = state;
    for (;;) {
        TwoModePureState out(in.cutoff(), propagate_opa(in.amplitudes(), in.n_max(), g, theta));
        if (std::abs(out.norm_squared() - norm_in) > 1e-10)
            throw Error(Errc::nonconvergence, "two-mode squeezing lost norm");
        if (out.tail_probability() <= in.cutoff().tail_tol) return out;
        if (in.n_max() >= Cutoff::hard_cap)
            throw Error(Errc::cutoff_too_small, "two-mode squeezed state does not fit under the hard cap");
        in = in.padded(std::min(2 * in.n_max(), Cutoff::hard_cap));
    }
}

cplx phase_factor(double phi, long long m) {
    constexpr double two_pi_hi = 6.283185307179586;
    constexpr double two_pi_lo = 2.4492935982947064e-16;
    const double x = static_cast<double>(m);
    const double p = phi * x;
    const double p_err = std::fma(phi, x, -p);
    const double turns = std::nearbyint(p / two_pi_hi);
    const double r = std::fma(-turns, two_pi_hi, p) - turns * two_pi_lo + p_err;
    return std::polar(1.0, r);
}

TwoModePureState apply_phase(const TwoModePureState& state, double phi, int k) {
    require_supported_k(k);
    const int n = state.n_max();
    std::vector<cplx> amp(state.amplitudes().begin(), state.amplitudes().end());
    for (int nb = 0; nb <= n; ++nb) {
        const cplx f = phase_factor(phi, k == 1 ? nb : static_cast<long long>(nb) * nb);
        for (int na = 0; na <= n; ++na) amp[state.index(na, nb)] *= f;
    }
    return {state.cutoff(), std::move(amp)};
}

TwoModeDensityMatrix apply_phase(const TwoModeDensityMatrix& rho, double phi, int k) {
    require_supported_k(k);
    const int n = rho.n_max();
    Eigen::VectorXcd f(static_cast<Eigen::Index>(rho.side()) * rho.side());
    for (int na = 0; na <= n; ++na)
        for (int nb = 0; nb <= n; ++nb) {
            f(rho.index(na, nb)) = phase_factor(phi, k == 1 ? nb : static_cast<long long>(nb) * nb);
        }
    Eigen::MatrixXcd out = f.asDiagonal() * rho.entries() * f.conjugate().asDiagonal();
    return {rho.cutoff(), std::move(out)};
}

double check_kerr_conjugation(const Cutoff& cutoff, double phi) {
    cutoff.validate();
    const int n = cutoff.n_max;
    const Eigen::Index d = n + 1;
    Eigen::MatrixXcd bdag = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index m = 0; m + 1 < d; ++m) bdag(m + 1, m) = std::sqrt(static_cast<double>(m + 1));
    Eigen::VectorXcd kerr(d), linear(d);
    for (Eigen::Index m = 0; m < d; ++m) {
        kerr(m) = phase_factor(phi, static_cast<long long>(m) * m);
        linear(m) = phase_factor(phi, -2 * static_cast<long long>(m));
    }
    Eigen::MatrixXcd lhs = kerr.conjugate().asDiagonal() * bdag * kerr.asDiagonal();
    Eigen::MatrixXcd rhs = phase_factor(phi, -1) * (bdag * linear.asDiagonal());
    return (lhs - rhs).topLeftCorner(n, n).cwiseAbs().maxCoeff();
}

std::vector<double> loss_amplitudes(int n_max, double T) {
    require_transmissivity(T, "T");
    const std::size_t side = static_cast<std::size_t>(n_max) + 1;
    std::vector<double> c(side * side, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        for (int l = 0; l <= n; ++l) {
            double v;
            if (T == 1.0) {
                v = l == 0 ? 1.0 : 0.0;
            } else {
                const double log_c = std::lgamma(n + 1.0) - std::lgamma(l + 1.0) - std::lgamma(n - l + 1.0);
                v = std::exp(0.5 * (log_c + l * std::log1p(-T) + (n - l) * std::log(T)));
            }
            c[static_cast<std::size_t>(n) * side + static_cast<std::size_t>(l)] = v;
        }
    }
    return c;
}

TwoModeDensityMatrix apply_loss(const TwoModeDensityMatrix& rho, double T, Mode mode) {
    require_transmissivity(T, "T");
    if (T == 1.0) return rho;
    const int n = rho.n_max();
    const std::size_t side = static_cast<std::size_t>(n) + 1;
    const auto c = loss_amplitudes(n, T);
    auto amp = [&](int m, int l) { return c[static_cast<std::size_t>(m) * side + static_cast<std::size_t>(l)]; };

    for (int m = 0; m <= n; ++m) {
        double s = 0.0;
        for (int l = 0; l <= m; ++l) s += amp(m, l) * amp(m, l);
        if (std::abs(s - 1.0) > 1e-12) throw Error(Errc::nonconvergence, "loss Kraus set is incomplete");
    }

    const auto& in = rho.entries();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(in.rows(), in.cols());
    auto shift = [&](int na, int nb, int l) {
        return mode == Mode::a ? rho.index(na + l, nb) : rho.index(na, nb + l);
    };
    for (int ia = 0; ia <= n; ++ia)
        for (int ib = 0; ib <= n; ++ib)
            for (int ja = 0; ja <= n; ++ja)
                for (int jb = 0; jb <= n; ++jb) {
                    const int im = mode == Mode::a ? ia : ib;
                    const int jm = mode == Mode::a ? ja : jb;
                    cplx acc = 0.0;
                    for (int l = 0; im + l <= n && jm + l <= n; ++l)
                        acc += amp(im + l, l) * amp(jm + l, l) * in(shift(ia, ib, l), shift(ja, jb, l));
                    out(rho.index(ia, ib), rho.index(ja, jb)) = acc;
                }
    if (std::abs(out.trace() - rho.trace()) > 1e-10)
        throw Error(Errc::nonconvergence, "loss channel did not preserve the trace");
    return {rho.cutoff(), std::move(out)};
}

QuadratureMoments quadrature_moments(const TwoModePureState& psi, Mode mode) {
    const int n = psi.n_max();
    cplx c1 = 0.0, c2 = 0.0;
    double cdc = 0.0;
    for (int na = 0; na <= n; ++na)
        for (int nb = 0; nb <= n; ++nb) {
            const int m = mode == Mode::a ? na : nb;
            const cplx v = psi(na, nb);
            cdc += m * std::norm(v);
            if (m >= 1) {
                const cplx w = mode == Mode::a ? psi(na - 1, nb) : psi(na, nb - 1);
                c1 += std::conj(w) * std::sqrt(static_cast<double>(m)) * v;
            }
            if (m >= 2) {
                const cplx w = mode == Mode::a ? psi(na - 2, nb) : psi(na, nb - 2);
                c2 += std::conj(w) * std::sqrt(static_cast<double>(m) * (m - 1)) * v;
            }
        }
    return from_ladder(c1, c2, cdc);
}

QuadratureMoments quadrature_moments(const TwoModeDensityMatrix& rho, Mode mode) {
    const int n = rho.n_max();
    const auto& r = rho.entries();
    cplx c1 = 0.0, c2 = 0.0;
    double cdc = 0.0;
    for (int na = 0; na <= n; ++na)
        for (int nb = 0; nb <= n; ++nb) {
            const int m = mode == Mode::a ? na : nb;
            const auto j = rho.index(na, nb);
            cdc += m * r(j, j).real();
            // Tr(rho c) = sum_j sqrt(m_j) <j|rho|j - e>
            if (m >= 1) {
                const auto i = mode == Mode::a ? rho.index(na - 1, nb) : rho.index(na, nb - 1);
                c1 += std::sqrt(static_cast<double>(m)) * r(j, i);
            }
            if (m >= 2) {
                const auto i = mode == Mode::a ? rho.index(na - 2, nb) : rho.index(na, nb - 2);
                c2 += std::sqrt(static_cast<double>(m) * (m - 1)) * r(j, i);
            }
        }
    return from_ladder(c1, c2, cdc);
}

std::vector<double> number_moments(const TwoModePureState& psi, Mode mode, int max_order) {
    return moments_from_marginal(marginal(psi, mode), max_order);
}

std::vector<double> number_moments(const TwoModeDensityMatrix& rho, Mode mode, int max_order) {
    return moments_from_marginal(marginal(rho, mode), max_order);
}

double moment_tail_fraction(const TwoModePureState& psi, Mode mode, int order) {
    const auto p = marginal(psi, mode);
    const int n = psi.n_max();
    const int first = n + 1 - band_width(n);
    double total = 0.0, tail = 0.0;
    for (int m = 0; m <= n; ++m) {
        const double w = std::pow(static_cast<double>(m), order) * p[static_cast<std::size_t>(m)];
        total += w;
        if (m >= first) tail += w;
    }
    return total > 0.0 ? tail / total : 0.0;
}

double fidelity(const TwoModePureState& a, const TwoModePureState& b) {
    const int n = std::max(a.n_max(), b.n_max());
    const auto pa = a.padded(n);
    const auto pb = b.padded(n);
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < pa.amplitudes().size(); ++i)
        overlap += std::conj(pa.amplitudes()[i]) * pb.amplitudes()[i];
    return std::norm(overlap);
}

}  // namespace ksu::fock
