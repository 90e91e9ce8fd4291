#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ksu/analytic.hpp"
#include "ksu/error.hpp"
#include "ksu/oracle.hpp"
#include "reference.hpp"

namespace ksu {
namespace {

using std::numbers::pi;
using test::rel_dev;
namespace ref = test::ref;

InterferometerConfig cfg(double g, double alpha, int k, double phi = 0.0, double theta_alpha = pi / 2) {
    return InterferometerConfig::balanced(g, alpha, theta_alpha, k, phi);
}

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

TEST(Laguerre, Examples) {
    EXPECT_EQ(analytic::laguerre(0, 3.7), 1.0);
    EXPECT_DOUBLE_EQ(analytic::laguerre(1, -1.0), 2.0);
    EXPECT_DOUBLE_EQ(analytic::laguerre(2, -1.0), 3.5);
}

TEST(Laguerre, MatchesPowerSeries) {
    for (int m = 0; m <= 8; ++m)
        for (double x : {-9.0, -1.0, -0.25, 0.0, 0.6, 2.5})
            EXPECT_NEAR(analytic::laguerre(m, x), test::laguerre_series(m, x),
                        1e-13 * std::max(1.0, std::abs(test::laguerre_series(m, x))))
                << "m=" << m << " x=" << x;
}

TEST(Abar, Examples) {
    EXPECT_EQ(analytic::abar(1, 0.0, 2.0), 0.0);
    EXPECT_LE(rel_dev(analytic::abar(1, 1.0, 1.0), ref::abar1), 1e-14);
    EXPECT_LE(rel_dev(analytic::abar(2, 1.0, 1.0), ref::abar2), 1e-14);
    EXPECT_LE(rel_dev(analytic::abar(3, 1.0, 1.0), ref::abar3), 1e-14);
    EXPECT_LE(rel_dev(analytic::abar(4, 1.0, 1.0), ref::abar4), 1e-14);
    EXPECT_NEAR(analytic::abar(1, 1.0, 1.0), 2.762196, 1e-6);
}

TEST(Abar, LaguerreMomentsMatchOracle) {
    for (double g : {0.3, 0.9, 1.5})
        for (double alpha : {0.0, 0.5, 2.0}) {
            if (g == 1.5 && alpha == 2.0) continue;  // beyond the oracle's hard cap
            const auto n = fock::number_moments(oracle::probe_state(cfg(g, alpha, 2)), fock::Mode::b, 4);
            const double A1 = analytic::abar(1, g, alpha), A2 = analytic::abar(2, g, alpha);
            const double A3 = analytic::abar(3, g, alpha), A4 = analytic::abar(4, g, alpha);
            const double closed[4] = {A1, A2 + A1, A3 + 3 * A2 + A1, A4 + 6 * A3 + 7 * A2 + A1};
            for (int j = 0; j < 4; ++j)
                EXPECT_LE(rel_dev(n[j], closed[j]), 1e-8) << "g=" << g << " alpha=" << alpha << " order " << j + 1;
        }
}

TEST(QuadratureTerms, OptimalPointValues) {
    const auto t = analytic::quadrature_terms(cfg(1.0, 1.0, 2));
    EXPECT_NEAR(std::abs(t.chi - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(t.Ibar - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(t.UV_sq, 1.0, 1e-12);
    EXPECT_NEAR(t.Obar, 0.0, 1e-12);
}

TEST(QuadratureTerms, ZeroGain) {
    const auto t = analytic::quadrature_terms(cfg(0.0, 1.0, 2, 0.7));
    EXPECT_EQ(std::abs(t.u), 0.0);
    EXPECT_NEAR(std::abs(t.chi - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t.Ibar - 1.0), 0.0, 1e-15);
}

TEST(QuadratureTerms, UnbalancedThrows) {
    auto c = cfg(1.0, 1.0, 2);
    c.g2 = 0.9;
    EXPECT_EQ(error_code([&] { analytic::quadrature_terms(c); }), Errc::unbalanced);
    c = cfg(1.0, 1.0, 2);
    c.theta2 = 3.0;
    EXPECT_EQ(error_code([&] { analytic::quadrature_terms(c); }), Errc::unbalanced);
}

TEST(SensitivityAnalytic, Examples) {
    EXPECT_LE(rel_dev(analytic::sensitivity_analytic(cfg(1.0, 1.0, 2)), ref::delta_phi2), 1e-12);
    EXPECT_LE(rel_dev(analytic::sensitivity_analytic(cfg(1.0, 1.0, 1)), ref::delta_phi1), 1e-12);
    EXPECT_NEAR(analytic::sensitivity_analytic(cfg(1.0, 1.0, 2)), 0.038985, 1e-6);
    EXPECT_NEAR(analytic::sensitivity_analytic(cfg(1.0, 1.0, 1)), 0.362030, 1e-6);
    EXPECT_GT(analytic::sensitivity_analytic(cfg(1.0, 1.0, 2, 0.1)), analytic::sensitivity_analytic(cfg(1.0, 1.0, 2)));
}

TEST(SensitivityAnalytic, MatchesOracleAwayFromOptimum) {
    for (int k : {1, 2})
        for (double phi : {-0.25, 0.05, 0.18})
            for (double theta_alpha : {pi / 2, pi / 3, 2.5}) {
                const auto c = cfg(1.0, 1.0, k, phi, theta_alpha);
                EXPECT_LE(rel_dev(analytic::sensitivity_analytic(c), oracle::sensitivity_numeric(c)), 1e-5)
                    << "k=" << k << " phi=" << phi << " theta_alpha=" << theta_alpha;
            }
}

TEST(SensitivityAnalytic, SignalMatchesOracleUpToNormalization) {
    for (double phi : {-0.3, 0.1, 0.2}) {
        const auto c = cfg(0.7, 1.4, 2, phi, 1.1);
        const std::vector<double> phis = {phi};
        EXPECT_NEAR(analytic::signal(c), std::sqrt(2.0) * oracle::signal_curve(c, phis)[0], 1e-9);
    }
}

TEST(SensitivityOptimal, Examples) {
    EXPECT_LE(rel_dev(analytic::sensitivity_optimal(cfg(1.0, 1.0, 1)), ref::delta_phi1), 1e-14);
    EXPECT_LE(rel_dev(analytic::sensitivity_optimal(cfg(1.0, 1.0, 2)), ref::delta_phi2), 1e-14);
    EXPECT_LE(rel_dev(analytic::sensitivity_optimal(cfg(1.0, 1.0, 1, 0.0, pi / 6)), ref::delta_phi1_pi6), 1e-14);
    EXPECT_NEAR(analytic::sensitivity_optimal(cfg(1.0, 1.0, 1, 0.0, pi / 6)), 0.724061, 1e-6);
}

TEST(SensitivityOptimal, DegenerateInputsThrow) {
    EXPECT_EQ(error_code([] { analytic::sensitivity_optimal(cfg(1.0, 1.0, 2, 0.0, 0.0)); }), Errc::zero_derivative);
    EXPECT_EQ(error_code([] { analytic::sensitivity_optimal(cfg(1.0, 0.0, 2)); }), Errc::zero_derivative);
    EXPECT_EQ(error_code([] { analytic::sensitivity_optimal(cfg(0.0, 1.0, 2)); }), Errc::zero_derivative);
}

TEST(SensitivityLossyOptimal, Examples) {
    EXPECT_EQ(analytic::sensitivity_lossy_optimal(cfg(1.0, 1.0, 2), LossConfig{1.0, 1.0}),
              analytic::sensitivity_optimal(cfg(1.0, 1.0, 2)));
    EXPECT_LE(rel_dev(analytic::sensitivity_lossy_optimal(cfg(1.0, 1.0, 1), LossConfig{0.6, 0.6}), ref::lossy_k1),
              1e-14);
    EXPECT_LE(rel_dev(analytic::sensitivity_lossy_optimal(cfg(1.0, 1.0, 2), LossConfig{0.6, 0.6}), ref::lossy_k2),
              1e-14);
    const double internal = analytic::sensitivity_lossy_optimal(cfg(1.0, 1.0, 1), LossConfig{0.6, 1.0});
    const double external = analytic::sensitivity_lossy_optimal(cfg(1.0, 1.0, 1), LossConfig{1.0, 0.6});
    EXPECT_LE(rel_dev(internal, ref::internal_only_k1), 1e-14);
    EXPECT_LE(rel_dev(external, ref::external_only_k1), 1e-14);
    EXPECT_NEAR(internal, 0.67808, 1e-5);
    EXPECT_NEAR(external, 0.46738, 1e-5);
    EXPECT_GT(internal, external);
}

TEST(SensitivityLossyOptimal, InvalidTransmissivityThrows) {
    EXPECT_EQ(error_code([] { analytic::sensitivity_lossy_optimal(cfg(1.0, 1.0, 1), LossConfig{0.0, 1.0}); }),
              Errc::invalid_transmissivity);
    EXPECT_EQ(error_code([] { analytic::sensitivity_lossy_optimal(cfg(1.0, 1.0, 1), LossConfig{1.0, 1.2}); }),
              Errc::invalid_transmissivity);
}

TEST(NTotal, ExamplesAndOracle) {
    EXPECT_EQ(analytic::n_total(cfg(0.0, 0.0, 2)), 0.0);
    EXPECT_LE(rel_dev(analytic::n_total(cfg(1.0, 1.0, 2)), ref::n_total), 1e-15);
    EXPECT_NEAR(analytic::n_total(cfg(0.0, 2.0, 2)), 4.0, 1e-15);
    const auto psi = oracle::probe_state(cfg(0.8, 1.7, 2));
    const double grid_sum =
        fock::number_moments(psi, fock::Mode::a, 1)[0] + fock::number_moments(psi, fock::Mode::b, 1)[0];
    EXPECT_LE(rel_dev(analytic::n_total(cfg(0.8, 1.7, 2)), grid_sum), 1e-10);
}

TEST(Limits, Examples) {
    const auto one = analytic::limits(1.0);
    EXPECT_EQ(one.sql, 1.0);
    EXPECT_EQ(one.hl, 1.0);
    EXPECT_EQ(one.shl, 1.0);
    const auto mid = analytic::limits(6.524391);
    EXPECT_NEAR(mid.sql, 1.0 / std::sqrt(6.524391), 1e-15);
    EXPECT_NEAR(mid.hl, 0.153271, 1e-6);
    EXPECT_NEAR(mid.shl, 0.023492, 1e-6);
    const auto hundred = analytic::limits(100.0);
    EXPECT_DOUBLE_EQ(hundred.sql, 0.1);
    EXPECT_DOUBLE_EQ(hundred.hl, 0.01);
    EXPECT_DOUBLE_EQ(hundred.shl, 1e-4);
    EXPECT_EQ(error_code([] { analytic::limits(0.0); }), Errc::nonpositive);
}

TEST(QfiIdeal, Examples) {
    EXPECT_EQ(analytic::qfi_ideal(cfg(0.0, 1.0, 1), 1), 0.0);
    EXPECT_LE(rel_dev(analytic::qfi_ideal(cfg(1.0, 1.0, 1), 1), ref::f1), 1e-14);
    EXPECT_LE(rel_dev(analytic::qfi_ideal(cfg(1.0, 1.0, 2), 2), ref::f2), 1e-14);
}

TEST(QfiIdeal, ThermalMarginal) {
    for (double g : {0.2, 0.7, 1.5}) {
        const double s = std::pow(std::sinh(g), 2);
        EXPECT_LE(rel_dev(analytic::qfi_ideal(cfg(g, 0.0, 1), 1), 4.0 * (s * s + s)), 1e-12);
    }
}

TEST(Qcrb, Examples) {
    EXPECT_EQ(analytic::qcrb(1.0), 1.0);
    EXPECT_LE(rel_dev(analytic::qcrb(ref::f1), ref::qcrb_f1), 1e-15);
    EXPECT_LE(rel_dev(analytic::qcrb(4537.475, 4), ref::qcrb_4537_475_x4), 1e-15);
    EXPECT_EQ(error_code([] { analytic::qcrb(0.0); }), Errc::nonpositive);
    EXPECT_EQ(error_code([] { analytic::qcrb(1.0, 0); }), Errc::invalid_argument);
}

TEST(QfiBaseline, Reductions) {
    const double f1 = analytic::qfi_ideal(cfg(1.0, 1.0, 1), 1);
    const double cs_cs = analytic::qfi_baseline_ideal(analytic::CsCs{1.0, 0.0}, 1.0);
    const double cs_svs = analytic::qfi_baseline_ideal(analytic::CsSvs{1.0, 0.0}, 1.0);
    EXPECT_LE(rel_dev(cs_cs, f1), 1e-5);
    EXPECT_LE(rel_dev(cs_svs, f1), 1e-5);
    EXPECT_LE(rel_dev(cs_cs, 33.937955), 1e-6);
    EXPECT_LE(rel_dev(cs_svs, 33.937950), 1e-6);
    EXPECT_EQ(analytic::qfi_baseline_ideal(analytic::CsCs{0.0, 0.0}, 0.0), 0.0);
}

TEST(Invariants, OrderingAndMonotonicity) {
    for (double g : {0.2, 0.6, 1.0, 1.5})
        for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
            EXPECT_LT(analytic::sensitivity_optimal(cfg(g, alpha, 2)), analytic::sensitivity_optimal(cfg(g, alpha, 1)));
            EXPECT_LT(analytic::sensitivity_optimal(cfg(g + 0.1, alpha, 2)), analytic::sensitivity_optimal(cfg(g, alpha, 2)));
            EXPECT_LT(analytic::sensitivity_optimal(cfg(g, alpha + 0.1, 2)), analytic::sensitivity_optimal(cfg(g, alpha, 2)));
            EXPECT_GE(analytic::qfi_ideal(cfg(g, alpha, 2), 2), analytic::qfi_ideal(cfg(g, alpha, 1), 1));
            EXPECT_LE(rel_dev(analytic::sensitivity_analytic(cfg(g, alpha, 2)), analytic::sensitivity_optimal(cfg(g, alpha, 2))),
                      1e-10);
        }
}

}  // namespace
}  // namespace ksu
