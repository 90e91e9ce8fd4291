#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

// Truncated two-mode Fock space: states, the interferometer's unitaries and
// the pure-loss channel. Basis |n_a, n_b> with 0 <= n <= n_max in each mode.
namespace ksu::fock {

using cplx = std::complex<double>;

enum class Mode { a, b };

struct Cutoff {
    static constexpr int hard_cap = 256;
    static constexpr int start = 16;

    int n_max = start;
    double tail_tol = 1e-12;
    // Largest allowed share of a reported moment carried by the top band of
    // the grid (see band_width).
    double moment_tol = 1e-9;

    void validate() const;
    Cutoff with_n_max(int n) const {
        Cutoff c = *this;
        c.n_max = n;
        return c;
    }
};

// Width of the top band of Fock indices whose occupation is reported as the
// tail probability of a state: the top 1/32 of the grid, at least two indices.
// The band stands in for the unrepresented occupation above n_max; the
// truncated generator distorts the last few indices, so the band is a
// conservative proxy rather than an extrapolation.
int band_width(int n_max);

class TwoModePureState {
public:
    TwoModePureState(Cutoff cutoff, std::vector<cplx> amplitudes);

    static TwoModePureState basis(Cutoff cutoff, int n_a, int n_b);

    const Cutoff& cutoff() const { return cutoff_; }
    int n_max() const { return cutoff_.n_max; }
    int side() const { return cutoff_.n_max + 1; }
    std::size_t index(int n_a, int n_b) const {
        return static_cast<std::size_t>(n_a) * side() + static_cast<std::size_t>(n_b);
    }
    cplx operator()(int n_a, int n_b) const { return amp_[index(n_a, n_b)]; }
    std::span<const cplx> amplitudes() const { return amp_; }

    double norm_squared() const;
    // Probability carried by the top band_width(n_max) indices of either mode.
    double tail_probability() const;
    // Same grid content on a larger grid (zero padded).
    TwoModePureState padded(int n_max) const;
    // Projection onto n <= n_max in both modes, renormalized.
    TwoModePureState projected(int n_max) const;

private:
    Cutoff cutoff_;
    std::vector<cplx> amp_;
};

class TwoModeDensityMatrix {
public:
    // Dense storage; refuses grids larger than this per mode.
    static constexpr int max_n = 32;

    TwoModeDensityMatrix(Cutoff cutoff, Eigen::MatrixXcd entries);
    static TwoModeDensityMatrix from_pure(const TwoModePureState& psi);

    const Cutoff& cutoff() const { return cutoff_; }
    int n_max() const { return cutoff_.n_max; }
    int side() const { return cutoff_.n_max + 1; }
    Eigen::Index index(int n_a, int n_b) const { return static_cast<Eigen::Index>(n_a) * side() + n_b; }
    const Eigen::MatrixXcd& entries() const { return rho_; }

    cplx trace() const { return rho_.trace(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;

private:
    Cutoff cutoff_;
    Eigen::MatrixXcd rho_;
};

struct QuadratureMoments {
    double mean = 0.0;     // <X>
    double mean_sq = 0.0;  // <X^2>
    double variance() const { return mean_sq - mean * mean; }
};

// |alpha e^{i theta}>_a (x) |0>_b; the grid grows from cutoff.n_max until the
// tail probability is within cutoff.tail_tol.
TwoModePureState make_input(double alpha_abs, double theta_alpha, const Cutoff& cutoff);

// exp(xi^* a b - xi a^dag b^dag) with xi = g e^{i theta}. The grid doubles
// (up to Cutoff::hard_cap) until the result's tail probability is acceptable.
TwoModePureState apply_opa(const TwoModePureState& state, double g, double theta);

// exp(i phi m) for integer m. The product phi m is reduced modulo 2 pi in
// extended precision, so m in the tens of thousands (n^2 at large cutoffs)
// keeps full accuracy.
cplx phase_factor(double phi, long long m);

// Multiplies c_{n_a,n_b} by exp(i phi n_b^k).
TwoModePureState apply_phase(const TwoModePureState& state, double phi, int k);
TwoModeDensityMatrix apply_phase(const TwoModeDensityMatrix& rho, double phi, int k);

// Max entry-wise difference between S^dag(phi,2) b^dag S(phi,2) and
// e^{-i phi} b^dag e^{-2 i phi b^dag b} on indices 0..n_max-1.
double check_kerr_conjugation(const Cutoff& cutoff, double phi);

// Pure-loss channel of transmissivity T on one mode.
TwoModeDensityMatrix apply_loss(const TwoModeDensityMatrix& rho, double T, Mode mode);

// sqrt(C(n, l) (1-T)^l T^(n-l)) for 0 <= l <= n <= n_max, row-major in n.
std::vector<double> loss_amplitudes(int n_max, double T);

// X = (c + c^dag)/sqrt(2) on the given mode.
QuadratureMoments quadrature_moments(const TwoModePureState& psi, Mode mode);
QuadratureMoments quadrature_moments(const TwoModeDensityMatrix& rho, Mode mode);

// <n^j> for j = 1..max_order (max_order <= 4).
std::vector<double> number_moments(const TwoModePureState& psi, Mode mode, int max_order);
std::vector<double> number_moments(const TwoModeDensityMatrix& rho, Mode mode, int max_order);

// Share of <n^order> contributed by the top band of the grid.
double moment_tail_fraction(const TwoModePureState& psi, Mode mode, int order);

// |<a|b>|^2 after padding both to a common grid.
double fidelity(const TwoModePureState& a, const TwoModePureState& b);

}  // namespace ksu::fock
