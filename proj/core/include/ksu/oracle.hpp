#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ksu/config.hpp"
#include "ksu/fock.hpp"

// Brute-force evaluation of the interferometer on the truncated Fock grid.
//
// The first OPA and the phase element are applied to the state. The second OPA
// and the external loss are applied to the measured mode-a ladder operator
// instead: S2^dag a S2 = a cosh g2 - e^{i theta2} b^dag sinh g2 is exact, while
// the Schroedinger-picture output of a Kerr-phased state has Fock tails far
// beyond any practical grid. Internal loss is applied to the state by summing
// over every Kraus branch of both modes.
namespace ksu::oracle {

// Normally ordered two-mode moments <a>, <b^dag>, <a^dag a>, <b^dag b>, <a b>,
// <a^2>, <b^dag 2>, <a b^dag> of an (unnormalized) vector, plus its norm.
struct PairMoments {
    fock::cplx a, bdag, ab, a2, bdag2, a_bdag;
    double ada = 0.0, bdb = 0.0, norm = 0.0;
};

PairMoments pair_moments(const fock::TwoModePureState& psi);

// Moments of the pure-loss image (transmissivity T on both modes) of psi,
// optionally applying exp(i phi n_b^k) to each Kraus branch after the loss.
PairMoments lossy_pair_moments(const fock::TwoModePureState& psi, double T,
                               std::optional<std::pair<double, int>> phase_after_loss = std::nullopt);

// <X>, <X^2> of output mode a after the second OPA (gain g2, phase theta2) and
// an external loss T2 on mode a.
fock::QuadratureMoments output_quadrature(const PairMoments& m, double g2, double theta2, double T2);

// |alpha, 0> after the first OPA, on a grid large enough that both the tail
// probability and the tail share of <n_b^4> and <n_a^2> meet the cutoff.
fock::TwoModePureState probe_state(const InterferometerConfig& config, const fock::Cutoff& cutoff = {});

// Full Schroedinger-picture lossless output state. Only practical when the
// output has light Fock tails (k = 1, or phi = 0).
fock::TwoModePureState output_state(const InterferometerConfig& config, const fock::Cutoff& cutoff = {});

// The probe state is built once and reused for every phase value.
class Pipeline {
public:
    Pipeline(const InterferometerConfig& config, std::optional<LossConfig> loss,
             const fock::Cutoff& cutoff = {});

    fock::QuadratureMoments output(double phi) const;
    const fock::TwoModePureState& probe() const { return probe_; }
    const InterferometerConfig& config() const { return config_; }

private:
    InterferometerConfig config_;
    std::optional<LossConfig> loss_;
    fock::TwoModePureState probe_;
};

// <X> on output mode a for each phase.
std::vector<double> signal_curve(const InterferometerConfig& config, std::span<const double> phis,
                                 std::optional<LossConfig> loss = std::nullopt,
                                 const fock::Cutoff& cutoff = {});

// Error-propagation sensitivity at config.phi. `quadrature_scale` rescales the
// measured quadrature; the result does not depend on it.
double sensitivity_numeric(const InterferometerConfig& config, std::optional<LossConfig> loss = std::nullopt,
                           double h = 1e-4, const fock::Cutoff& cutoff = {}, double quadrature_scale = 1.0);
double sensitivity_numeric(const Pipeline& pipeline, double phi, double h = 1e-4, double quadrature_scale = 1.0);

// 4 Var(n_b^k) of the probe state.
double pure_qfi_numeric(const InterferometerConfig& config, int k, const fock::Cutoff& cutoff = {});

using DensityFamily = std::function<fock::TwoModeDensityMatrix(double)>;

// Symmetric-logarithmic-derivative QFI of rho(phi) from its spectral
// decomposition; d rho / d phi by Richardson central differences.
double mixed_qfi_small(const DensityFamily& rho_of_phi, double phi, double h = 1e-4);

inline constexpr int mixed_qfi_max_n = 12;

// rho(phi) for the probe state projected onto n <= n_small, with a pure-loss
// channel of transmissivity eta on mode b placed before or after the phase.
DensityFamily lossy_kerr_family(const fock::TwoModePureState& probe, int k, double eta,
                                InternalLossPlacement placement, int n_small);

}  // namespace ksu::oracle
