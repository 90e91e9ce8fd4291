#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ksu/analytic.hpp"
#include "ksu/error.hpp"
#include "ksu/lossy_qfi.hpp"
#include "ksu/oracle.hpp"
#include "reference.hpp"

namespace ksu {
namespace {

using std::numbers::pi;
using test::rel_dev;
namespace ref = test::ref;

template <class F>
Errc error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no ksu::Error thrown";
    return Errc::invalid_argument;
}

// Bound with the loss placed before the phase element, written out line by
// line in the moments rather than through the W coefficients.
double before_phase_bound(const lossy::MomentVector& H, double e) {
    const auto& h = H.h;
    return 4.0 * (std::pow(e, 4) * h[0] + 6.0 * std::pow(e, 3) * (1.0 - e) * h[1] +
                  e * e * (11.0 * e * e - 18.0 * e + 7.0) * h[2] -
                  e * (6.0 * std::pow(e, 3) - 12.0 * e * e + 7.0 * e - 1.0) * h[3] -
                  2.0 * std::pow(e, 3) * (1.0 - e) * h[4] - e * e * std::pow(1.0 - e, 2) * h[5]);
}

TEST(MomentVector, Examples) {
    for (double v : lossy::moment_vector(0.0, 1.3).h) EXPECT_EQ(v, 0.0);
    const auto H = lossy::moment_vector(1.0, 1.0);
    const std::array<double, 6> printed = {1134.369, 132.386, 16.1142, 2.76220, 44.5106, 7.62972};
    for (std::size_t i = 0; i < 6; ++i) EXPECT_LE(rel_dev(H.h[i], printed[i]), 5e-6) << "h" << i + 1;
    EXPECT_LE(rel_dev(H.h[0], ref::f2 / 4.0), 1e-14);
    EXPECT_NEAR(lossy::moment_vector(1.0, 0.0).h[3], std::pow(std::sinh(1.0), 2), 1e-15);
    EXPECT_NEAR(lossy::moment_vector(1.0, 0.0).h[3], 1.381098, 1e-6);
}

TEST(MomentVector, MatchesOracleNumberMoments) {
    for (double g : {0.4, 1.0})
        for (double alpha : {0.5, 1.0, 2.0}) {
            const auto psi = oracle::probe_state(InterferometerConfig::balanced(g, alpha, pi / 2, 2));
            const auto O = lossy::MomentVector::from_number_moments(fock::number_moments(psi, fock::Mode::b, 4));
            const auto H = lossy::moment_vector(g, alpha);
            for (std::size_t i = 0; i < 6; ++i) EXPECT_LE(rel_dev(O.h[i], H.h[i]), 1e-8) << "h" << i + 1;
        }
}

TEST(MomentVector, ValidateRejectsInconsistentProducts) {
    auto H = lossy::moment_vector(1.0, 1.0);
    H.h[4] *= 1.001;
    EXPECT_EQ(error_code([&] { H.validate(); }), Errc::invalid_argument);
    H = lossy::moment_vector(1.0, 1.0);
    H.h[0] = -1.0;
    EXPECT_EQ(error_code([&] { H.validate(); }), Errc::invalid_argument);
}

TEST(CqBound, AfterPhaseLimitIsIdealQfi) {
    for (double g : {0.3, 1.0})
        for (double eta : {0.3, 0.6, 1.0}) {
            const auto H = lossy::moment_vector(g, 1.0);
            EXPECT_LE(rel_dev(lossy::cq_bound(H, {eta, -1.0, -1.0}), 4.0 * H.h[0]), 1e-12) << "eta=" << eta;
        }
}

TEST(CqBound, BeforePhaseMatchesExplicitExpansion) {
    const auto H = lossy::moment_vector(1.0, 1.0);
    for (double eta : {0.1, 0.6, 0.95})
        EXPECT_LE(rel_dev(lossy::cq_bound(H, {eta, 0.0, 0.0}), before_phase_bound(H, eta)), 1e-12) << "eta=" << eta;
    EXPECT_LE(rel_dev(lossy::cq_bound(H, {1.0, 0.0, 0.0}), 4.0 * H.h[0]), 1e-14);
}

TEST(CqBound, InvalidEtaThrows) {
    const auto H = lossy::moment_vector(1.0, 1.0);
    EXPECT_EQ(error_code([&] { lossy::cq_bound(H, {0.0, 0.0, 0.0}); }), Errc::invalid_transmissivity);
    EXPECT_EQ(error_code([&] { lossy::cq_bound(H, {1.1, 0.0, 0.0}); }), Errc::invalid_transmissivity);
}

TEST(OptimalMu, LosslessRecoversIdealQfi) {
    const auto H = lossy::moment_vector(1.0, 1.0);
    const auto mu = lossy::optimal_mu(H, 1.0);
    EXPECT_LE(rel_dev(lossy::cq_bound(H, {1.0, mu.mu1, mu.mu2}), ref::f2), 1e-8);
}

TEST(OptimalMu, MatchesIndependentMinimizer) {
    const auto H = lossy::moment_vector(1.0, 1.0);
    const auto mu = lossy::optimal_mu(H, 0.6);
    EXPECT_NEAR(mu.mu1, ref::mu1, 1e-9);
    EXPECT_NEAR(mu.mu2, ref::mu2, 1e-9);
    EXPECT_LE(rel_dev(lossy::cq_bound(H, {0.6, mu.mu1, mu.mu2}), ref::c_q), 1e-11);
}

TEST(OptimalMu, StationaryAndGridDominant) {
    const auto H = lossy::moment_vector(1.0, 1.0);
    const auto mu = lossy::optimal_mu(H, 0.6);
    const double cq = lossy::cq_bound(H, {0.6, mu.mu1, mu.mu2});
    const double h = 1e-4;
    const double d1 = (lossy::cq_bound(H, {0.6, mu.mu1 + h, mu.mu2}) - lossy::cq_bound(H, {0.6, mu.mu1 - h, mu.mu2})) / (2 * h);
    const double d2 = (lossy::cq_bound(H, {0.6, mu.mu1, mu.mu2 + h}) - lossy::cq_bound(H, {0.6, mu.mu1, mu.mu2 - h})) / (2 * h);
    EXPECT_LT(std::max(std::abs(d1), std::abs(d2)), 1e-6 * cq);
    for (int i = 0; i < 41; ++i)
        for (int j = 0; j < 41; ++j)
            ASSERT_LE(cq, lossy::cq_bound(H, {0.6, -2.0 + 0.075 * i, -2.0 + 0.075 * j}) * (1.0 + 1e-12));
    EXPECT_LE(cq, lossy::cq_bound(H, {0.6, 0.0, 0.0}));
    EXPECT_LE(cq, lossy::cq_bound(H, {0.6, -1.0, -1.0}));
}

TEST(OptimalMu, InformationFreeAtZeroGain) {
    const auto mu = lossy::optimal_mu(lossy::moment_vector(0.0, 1.0), 0.6);
    EXPECT_TRUE(mu.information_free);
    EXPECT_EQ(mu.mu1, 0.0);
    EXPECT_EQ(mu.mu2, 0.0);
    EXPECT_EQ(lossy::lossy_qfi(0.0, 1.0, 0.6), 0.0);
}

TEST(OptimalMu, SingularSystemThrows) {
    lossy::MomentVector H;
    H.h = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    EXPECT_EQ(error_code([&] { lossy::optimal_mu(H, 0.6); }), Errc::degenerate_system);
}

TEST(LossyQfi, Examples) {
    EXPECT_LE(rel_dev(lossy::lossy_qfi(1.0, 1.0, 1.0), ref::f2), 1e-8);
    const double v = lossy::lossy_qfi(1.0, 1.0, 0.6);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, ref::f2);
    double previous = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double f = lossy::lossy_qfi(1.0, 1.0, 0.1 * i);
        EXPECT_GE(f, previous) << "eta=" << 0.1 * i;
        previous = f;
    }
}

TEST(LossyBaseline, Examples) {
    EXPECT_LE(rel_dev(lossy::lossy_qfi_baseline(lossy::CsVs{1.0}, 1.0, 1.0), ref::f1), 1e-14);
    const double cs_vs = lossy::lossy_qfi_baseline(lossy::CsVs{1.0}, 1.0, 0.6);
    EXPECT_LE(rel_dev(cs_vs, ref::f_lossy_cs_vs), 1e-13);
    EXPECT_LE(rel_dev(lossy::lossy_qfi_baseline(analytic::CsCs{1.0, 0.0}, 1.0, 0.6), cs_vs), 1e-6);
    EXPECT_LE(rel_dev(lossy::lossy_qfi_baseline(analytic::CsSvs{1.0, 0.0}, 1.0, 0.6), cs_vs), 1e-6);
    EXPECT_EQ(error_code([] { lossy::lossy_qfi_baseline(lossy::CsVs{1.0}, 1.0, 0.0); }), Errc::invalid_transmissivity);
}

TEST(LossyBaseline, MeanPhotonNumbers) {
    const double sh2 = std::pow(std::sinh(0.8), 2), ch2 = std::pow(std::cosh(0.8), 2);
    EXPECT_NEAR(lossy::baseline_mean_photons(lossy::CsVs{1.2}, 0.8), analytic::abar(1, 0.8, 1.2), 1e-14);
    EXPECT_NEAR(lossy::baseline_mean_photons(analytic::CsCs{1.2, 0.0}, 0.8), analytic::abar(1, 0.8, 1.2), 1e-13);
    EXPECT_NEAR(lossy::baseline_mean_photons(analytic::CsSvs{1.2, 0.0}, 0.8), analytic::abar(1, 0.8, 1.2), 1e-13);
    EXPECT_NEAR(lossy::baseline_mean_photons(analytic::CsSvs{0.0, 0.5}, 0.8),
                sh2 + ch2 * std::pow(std::sinh(0.5), 2), 1e-14);
}

TEST(LossyBaseline, KerrBoundBelowLinearAlongFigureAxes) {
    for (double g = 0.5; g <= 1.5 + 1e-9; g += 0.1)
        EXPECT_LT(analytic::qcrb(lossy::lossy_qfi(g, 1.0, 0.6)),
                  analytic::qcrb(lossy::lossy_qfi_baseline(lossy::CsVs{1.0}, g, 0.6)))
            << "g=" << g;
    for (int i = 1; i <= 10; ++i)
        EXPECT_LT(analytic::qcrb(lossy::lossy_qfi(1.0, 1.0, 0.1 * i)),
                  analytic::qcrb(lossy::lossy_qfi_baseline(lossy::CsVs{1.0}, 1.0, 0.1 * i)))
            << "eta=" << 0.1 * i;
}

}  // namespace
}  // namespace ksu
