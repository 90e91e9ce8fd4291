#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "ksu/analytic.hpp"
#include "ksu/error.hpp"
#include "ksu/fock.hpp"
#include "ksu/lossy_qfi.hpp"
#include "ksu/numeric.hpp"
#include "ksu/oracle.hpp"
#include "parallel.hpp"

namespace ksu::cli {
namespace {

constexpr double half_pi = std::numbers::pi / 2;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Tracks the worst point of a check and remembers where it happened.
struct Worst {
    double value;
    bool larger_is_worse;
    std::string where;

    static Worst max() { return {-std::numeric_limits<double>::infinity(), true, {}}; }
    static Worst min() { return {std::numeric_limits<double>::infinity(), false, {}}; }

    void add(double v, std::string at) {
        if (std::isnan(v) || (larger_is_worse ? v > value : v < value)) {
            value = v;
            where = std::move(at);
        }
    }
};

std::string at(std::initializer_list<std::pair<const char*, double>> kv) {
    std::string s;
    for (const auto& [k, v] : kv) s += (s.empty() ? "" : " ") + std::string(k) + "=" + format_number(v);
    return s;
}

InterferometerConfig cfg(double g, double a, int k, double phi = 0.0) {
    return InterferometerConfig::balanced(g, a, half_pi, k, phi);
}

struct GridSpec {
    std::vector<double> g, alpha;               // closed-form sweeps
    std::vector<double> oracle_g, oracle_alpha;  // brute-force sweeps
    std::vector<double> eta;
    std::vector<std::pair<double, double>> lossy_oracle;  // (T1, T2) at g=1, |alpha|=1
};

GridSpec grid_spec(Grid grid) {
    if (grid == Grid::small)
        return {{0.2, 0.5, 1.0, 1.5}, {0.5, 1.0, 2.0, 3.0}, {0.5, 1.0}, {0.5, 1.0, 2.0}, {0.3, 0.6, 1.0}, {{0.6, 0.6}}};
    return {{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.5},
            {0.5, 1.0, 1.5, 2.0, 2.5, 3.0},
            {0.3, 0.5, 0.8, 1.0, 1.2},
            {0.5, 1.0, 1.5, 2.0},
            {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0},
            {{0.6, 0.6}, {0.6, 1.0}, {1.0, 0.6}, {0.8, 0.9}}};
}

std::vector<double> phi_points() {
    std::vector<double> p;
    for (int i = 0; i < 25; ++i) p.push_back((-0.3 * (24 - i) + 0.3 * i) / 24.0);
    return p;
}

// Pinned regression values at g=1, |alpha|=1, theta_alpha=pi/2, computed
// independently at high precision.
struct Reference {
    const char* name;
    double expected;
    std::function<double()> compute;
};

std::vector<Reference> references() {
    auto lossy = [](int k) {
        LossConfig l;
        l.T1 = l.T2 = 0.6;
        return analytic::sensitivity_lossy_optimal(cfg(1, 1, k), l);
    };
    return {
        {"delta_phi_k1", 0.362030830483155, [] { return analytic::sensitivity_optimal(cfg(1, 1, 1)); }},
        {"delta_phi_k2", 0.038984271361214, [] { return analytic::sensitivity_optimal(cfg(1, 1, 2)); }},
        {"f_k1", 33.9379578718575, [] { return analytic::qfi_ideal(cfg(1, 1, 1), 1); }},
        {"f_k2", 4537.47641267618, [] { return analytic::qfi_ideal(cfg(1, 1, 2), 2); }},
        {"n_total", 6.52439138216726, [] { return analytic::n_total(cfg(1, 1, 1)); }},
        {"delta_phi_lossy_k1", 0.778091899628473, [&] { return lossy(1); }},
        {"delta_phi_lossy_k2", 0.0837866369518777, [&] { return lossy(2); }},
        {"f_lossy_cs_vs", 11.1353609295966, [] { return lossy::lossy_qfi_baseline(lossy::CsVs{1.0}, 1.0, 0.6); }},
        {"c_q_k2", 201.749869158852, [] { return lossy::lossy_qfi(1.0, 1.0, 0.6); }},
    };
}

struct Check {
    std::string name;
    Relation relation;
    double threshold;
    bool disputed;
    std::function<Worst(const GridSpec&)> run;
};

// Numerical gradient of C_Q in (mu1, mu2).
std::pair<double, double> cq_gradient(const lossy::MomentVector& H, double eta, double m1, double m2) {
    const double h = 1e-3;
    const double d1 = richardson_derivative([&](double x) { return lossy::cq_bound(H, {eta, x, m2}); }, m1, h);
    const double d2 = richardson_derivative([&](double x) { return lossy::cq_bound(H, {eta, m1, x}); }, m2, h);
    return {d1, d2};
}

std::vector<Check> checks() {
    using R = Relation;
    std::vector<Check> c;

    // ---- Fock-space oracle ----
    c.push_back({"opa_norm", R::at_most, 1e-10, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.oracle_g)
                         for (double a : s.oracle_alpha) {
                             const auto psi = oracle::probe_state(cfg(g, a, 2));
                             w.add(std::abs(psi.norm_squared() - 1.0), at({{"g", g}, {"alpha", a}}));
                         }
                     return w;
                 }});
    c.push_back({"kerr_identity", R::at_most, 1e-12, false, [](const GridSpec&) {
                     auto w = Worst::max();
                     fock::Cutoff cut;
                     cut.n_max = 40;
                     for (double phi : {0.0, 0.7, std::numbers::pi})
                         w.add(fock::check_kerr_conjugation(cut, phi), at({{"phi", phi}}));
                     return w;
                 }});
    auto small_rho = [] {
        const auto probe = oracle::probe_state(cfg(0.5, 1.0, 2));
        return fock::TwoModeDensityMatrix::from_pure(probe.projected(8));
    };
    c.push_back({"kraus_trace", R::at_most, 1e-10, false, [small_rho](const GridSpec&) {
                     auto w = Worst::max();
                     const auto rho = small_rho();
                     for (double T : {0.3, 0.6, 0.9}) {
                         const auto out = fock::apply_loss(fock::apply_loss(rho, T, fock::Mode::b), T, fock::Mode::a);
                         w.add(std::abs(out.trace() - 1.0), at({{"T", T}}));
                     }
                     return w;
                 }});
    c.push_back({"kraus_positivity", R::at_most, 1e-10, false, [small_rho](const GridSpec&) {
                     auto w = Worst::max();
                     const auto rho = small_rho();
                     for (double T : {0.3, 0.6, 0.9}) {
                         const auto out = fock::apply_loss(fock::apply_loss(rho, T, fock::Mode::b), T, fock::Mode::a);
                         w.add(-out.min_eigenvalue(), at({{"T", T}}));
                     }
                     return w;
                 }});
    c.push_back({"density_hermiticity", R::at_most, 1e-12, false, [small_rho](const GridSpec&) {
                     auto w = Worst::max();
                     const auto rho = small_rho();
                     for (double T : {0.3, 0.6, 0.9}) {
                         const auto out = fock::apply_phase(fock::apply_loss(rho, T, fock::Mode::b), 0.7, 2);
                         w.add(out.hermiticity_error(), at({{"T", T}}));
                     }
                     return w;
                 }});
    c.push_back({"cutoff_convergence", R::at_most, fock::Cutoff{}.moment_tol, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.oracle_g)
                         for (double a : s.oracle_alpha) {
                             const auto coarse = oracle::probe_state(cfg(g, a, 2));
                             const int fine_n = 2 * coarse.n_max();
                             if (fine_n > fock::Cutoff::hard_cap) continue;
                             const auto fine = oracle::probe_state(cfg(g, a, 2), fock::Cutoff{}.with_n_max(fine_n));
                             for (auto [mode, order] : {std::pair{fock::Mode::b, 4}, std::pair{fock::Mode::a, 2}}) {
                                 const auto m0 = fock::number_moments(coarse, mode, order);
                                 const auto m1 = fock::number_moments(fine, mode, order);
                                 for (std::size_t j = 0; j < m0.size(); ++j)
                                     w.add(rel(m0[j], m1[j]), at({{"g", g}, {"alpha", a}}));
                             }
                         }
                     return w;
                 }});
    c.push_back({"oracle_photon_number", R::at_most, 1e-8, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.oracle_g)
                         for (double a : s.oracle_alpha) {
                             const auto psi = oracle::probe_state(cfg(g, a, 1));
                             const double n = fock::number_moments(psi, fock::Mode::a, 1)[0] +
                                              fock::number_moments(psi, fock::Mode::b, 1)[0];
                             w.add(rel(analytic::n_total(cfg(g, a, 1)), n), at({{"g", g}, {"alpha", a}}));
                         }
                     return w;
                 }});
    c.push_back({"oracle_qfi", R::at_most, 1e-6, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.oracle_g)
                         for (double a : s.oracle_alpha)
                             for (int k : {1, 2})
                                 w.add(rel(analytic::qfi_ideal(cfg(g, a, k), k), oracle::pure_qfi_numeric(cfg(g, a, k), k)),
                                       at({{"g", g}, {"alpha", a}, {"k", k}}));
                     return w;
                 }});
    c.push_back({"scale_invariance", R::at_most, 1e-12, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.oracle_g)
                         for (int k : {1, 2}) {
                             const oracle::Pipeline p(cfg(g, 1.0, k), std::nullopt);
                             for (double phi : {-0.25, 0.0, 0.1}) {
                                 const double ref = oracle::sensitivity_numeric(p, phi, 1e-3, 1.0);
                                 for (double scale : {3.7, 0.013})
                                     w.add(rel(oracle::sensitivity_numeric(p, phi, 1e-3, scale), ref),
                                           at({{"g", g}, {"k", k}, {"phi", phi}, {"c", scale}}));
                             }
                         }
                     return w;
                 }});
    c.push_back({"oracle_sensitivity", R::at_most, 1e-4, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.oracle_g)
                         for (double a : s.oracle_alpha)
                             for (int k : {1, 2}) {
                                 const oracle::Pipeline p(cfg(g, a, k), std::nullopt);
                                 for (double phi : phi_points()) {
                                     const double an = analytic::sensitivity_analytic(cfg(g, a, k, phi));
                                     w.add(rel(an, oracle::sensitivity_numeric(p, phi)),
                                           at({{"g", g}, {"alpha", a}, {"k", k}, {"phi", phi}}));
                                 }
                             }
                     // Terms proportional to |alpha|^2 + conj(alpha)^2 vanish at
                     // theta_alpha = pi/2, so one off-axis coherent phase is included.
                     for (double g : s.oracle_g)
                         for (int k : {1, 2}) {
                             auto c = InterferometerConfig::balanced(g, 1.0, std::numbers::pi / 3, k);
                             const oracle::Pipeline p(c, std::nullopt);
                             for (double phi : {-0.2, 0.0, 0.15}) {
                                 c.phi = phi;
                                 w.add(rel(analytic::sensitivity_analytic(c), oracle::sensitivity_numeric(p, phi)),
                                       at({{"g", g}, {"theta_alpha", c.theta_alpha}, {"k", k}, {"phi", phi}}));
                             }
                         }
                     return w;
                 }});
    c.push_back({"oracle_lossy_sensitivity", R::at_most, 2e-3, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (auto [T1, T2] : s.lossy_oracle)
                         for (int k : {1, 2}) {
                             LossConfig l;
                             l.T1 = T1;
                             l.T2 = T2;
                             const double an = analytic::sensitivity_lossy_optimal(cfg(1, 1, k), l);
                             w.add(rel(an, oracle::sensitivity_numeric(cfg(1, 1, k), l)),
                                   at({{"T1", T1}, {"T2", T2}, {"k", k}}));
                         }
                     return w;
                 }});
    c.push_back({"oracle_lossy_signal", R::at_most, 1e-8, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (auto [T1, T2] : s.lossy_oracle)
                         for (int k : {1, 2}) {
                             LossConfig l;
                             l.T1 = T1;
                             l.T2 = T2;
                             const oracle::Pipeline p(cfg(1, 1, k), l);
                             const double phi = 0.1;
                             // X = (a + a^dag)/sqrt(2) on the grid, a + a^dag in closed form
                             const double expect = std::sqrt(T1 * T2) * analytic::signal(cfg(1, 1, k, phi));
                             w.add(rel(std::sqrt(2.0) * p.output(phi).mean, expect),
                                   at({{"T1", T1}, {"T2", T2}, {"k", k}}));
                         }
                     return w;
                 }});

    // ---- closed forms ----
    c.push_back({"reference_values", R::at_most, 1e-9, false, [](const GridSpec&) {
                     auto w = Worst::max();
                     for (const auto& r : references()) w.add(rel(r.compute(), r.expected), r.name);
                     return w;
                 }});
    c.push_back({"optimal_point_reduction", R::at_most, 1e-10, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.g)
                         for (double a : s.alpha)
                             for (int k : {1, 2})
                                 w.add(rel(analytic::sensitivity_analytic(cfg(g, a, k)),
                                           analytic::sensitivity_optimal(cfg(g, a, k))),
                                       at({{"g", g}, {"alpha", a}, {"k", k}}));
                     return w;
                 }});
    c.push_back({"lossless_limit", R::at_most, 1e-15, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.g)
                         for (double a : s.alpha)
                             for (int k : {1, 2})
                                 w.add(rel(analytic::sensitivity_lossy_optimal(cfg(g, a, k), LossConfig{}),
                                           analytic::sensitivity_optimal(cfg(g, a, k))),
                                       at({{"g", g}, {"alpha", a}, {"k", k}}));
                     return w;
                 }});
    c.push_back({"kerr_beats_linear", R::above, 0.0, false, [](const GridSpec& s) {
                     auto w = Worst::min();
                     for (double g : s.g)
                         for (double a : s.alpha)
                             for (double T : {1.0, 0.6}) {
                                 LossConfig l;
                                 l.T1 = l.T2 = T;
                                 const double d1 = analytic::sensitivity_lossy_optimal(cfg(g, a, 1), l);
                                 const double d2 = analytic::sensitivity_lossy_optimal(cfg(g, a, 2), l);
                                 w.add((d1 - d2) / d1, at({{"g", g}, {"alpha", a}, {"T", T}}));
                             }
                     return w;
                 }});
    c.push_back({"internal_exceeds_external", R::above, 0.0, false, [](const GridSpec&) {
                     auto w = Worst::min();
                     for (int i = 0; i < 20; ++i) {
                         const double g = 0.1 + 0.1 * (i % 10);
                         const double T = i < 10 ? 0.6 : 0.3;
                         LossConfig in, ex;
                         in.T1 = T;
                         ex.T2 = T;
                         for (int k : {1, 2}) {
                             const double di = analytic::sensitivity_lossy_optimal(cfg(g, 1, k), in);
                             const double de = analytic::sensitivity_lossy_optimal(cfg(g, 1, k), ex);
                             w.add((di - de) / de, at({{"g", g}, {"T", T}, {"k", k}}));
                         }
                     }
                     return w;
                 }});
    auto hierarchy_points = [] {
        std::vector<double> a;
        for (int i = 0; i <= 10; ++i) a.push_back(0.5 + 0.25 * i);
        return a;
    };
    c.push_back({"hierarchy_k2", R::above, 0.0, false, [hierarchy_points](const GridSpec&) {
                     auto w = Worst::min();
                     for (double a : hierarchy_points()) {
                         const auto lim = analytic::limits(analytic::n_total(cfg(1, a, 2)));
                         const double d2 = analytic::sensitivity_optimal(cfg(1, a, 2));
                         w.add(std::min(d2 - lim.shl, lim.hl - d2) / d2, at({{"alpha", a}}));
                     }
                     return w;
                 }});
    c.push_back({"hierarchy_k1_above_hl", R::above, 0.0, false, [hierarchy_points](const GridSpec&) {
                     auto w = Worst::min();
                     for (double a : hierarchy_points()) {
                         const auto lim = analytic::limits(analytic::n_total(cfg(1, a, 1)));
                         const double d1 = analytic::sensitivity_optimal(cfg(1, a, 1));
                         w.add((d1 - lim.hl) / d1, at({{"alpha", a}}));
                     }
                     return w;
                 }});
    c.push_back({"hierarchy_k1_below_sql", R::above, 0.0, true, [hierarchy_points](const GridSpec&) {
                     auto w = Worst::min();
                     for (double a : hierarchy_points()) {
                         const auto lim = analytic::limits(analytic::n_total(cfg(1, a, 1)));
                         const double d1 = analytic::sensitivity_optimal(cfg(1, a, 1));
                         w.add((lim.sql - d1) / d1, at({{"alpha", a}}));
                     }
                     return w;
                 }});
    c.push_back({"qfi_additivity", R::at_least, 0.0, false, [](const GridSpec& s) {
                     auto w = Worst::min();
                     for (double g : s.g)
                         for (double a : s.alpha) {
                             const double f1 = analytic::qfi_ideal(cfg(g, a, 1), 1);
                             w.add((analytic::qfi_ideal(cfg(g, a, 2), 2) - f1) / f1, at({{"g", g}, {"alpha", a}}));
                         }
                     return w;
                 }});
    c.push_back({"kerr_monotonic", R::above, 0.0, false, [](const GridSpec& s) {
                     auto w = Worst::min();
                     for (std::size_t i = 0; i < s.g.size(); ++i)
                         for (std::size_t j = 0; j < s.alpha.size(); ++j) {
                             const double d = analytic::sensitivity_optimal(cfg(s.g[i], s.alpha[j], 2));
                             if (i + 1 < s.g.size())
                                 w.add((d - analytic::sensitivity_optimal(cfg(s.g[i + 1], s.alpha[j], 2))) / d,
                                       at({{"g", s.g[i]}, {"alpha", s.alpha[j]}}));
                             if (j + 1 < s.alpha.size())
                                 w.add((d - analytic::sensitivity_optimal(cfg(s.g[i], s.alpha[j + 1], 2))) / d,
                                       at({{"g", s.g[i]}, {"alpha", s.alpha[j]}}));
                         }
                     return w;
                 }});
    c.push_back({"thermal_marginal", R::at_most, 1e-10, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.g) {
                         const double sh2 = std::sinh(g) * std::sinh(g);
                         w.add(rel(analytic::qfi_ideal(cfg(g, 0.0, 1), 1), 4.0 * (sh2 * sh2 + sh2)), at({{"g", g}}));
                     }
                     return w;
                 }});
    c.push_back({"limit_scaling", R::at_most, 1e-14, false, [](const GridSpec&) {
                     auto w = Worst::max();
                     for (double n : {0.5, 2.0, 6.5, 40.0}) {
                         const auto lim = analytic::limits(n);
                         w.add(std::max({std::abs(lim.sql * std::sqrt(n) - 1.0), std::abs(lim.hl * n - 1.0),
                                         std::abs(lim.shl * n * n - 1.0)}),
                               at({{"n", n}}));
                     }
                     return w;
                 }});
    c.push_back({"baseline_reductions", R::at_most, 1e-5, false, [](const GridSpec&) {
                     auto w = Worst::max();
                     for (double g : {0.5, 1.0, 1.5}) {
                         const double f1 = analytic::qfi_ideal(cfg(g, 1.0, 1), 1);
                         w.add(rel(analytic::qfi_baseline_ideal(analytic::CsCs{1.0, 0.0}, g), f1), at({{"g", g}}));
                         w.add(rel(analytic::qfi_baseline_ideal(analytic::CsSvs{1.0, 0.0}, g), f1), at({{"g", g}}));
                     }
                     return w;
                 }});

    // ---- purification bound ----
    c.push_back({"moment_vector_oracle", R::at_most, 1e-7, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.oracle_g)
                         for (double a : s.oracle_alpha) {
                             const auto H = lossy::moment_vector(g, a);
                             const auto psi = oracle::probe_state(cfg(g, a, 2));
                             const auto O = lossy::MomentVector::from_number_moments(
                                 fock::number_moments(psi, fock::Mode::b, 4));
                             for (std::size_t i = 0; i < 6; ++i)
                                 w.add(rel(H.h[i], O.h[i]), at({{"g", g}, {"alpha", a}, {"h", double(i + 1)}}));
                         }
                     return w;
                 }});
    c.push_back({"bound_after_phase_limit", R::at_most, 1e-10, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.g)
                         for (double eta : s.eta) {
                             const auto H = lossy::moment_vector(g, 1.0);
                             w.add(rel(lossy::cq_bound(H, {eta, -1.0, -1.0}), 4.0 * H.h[0]), at({{"g", g}, {"eta", eta}}));
                         }
                     return w;
                 }});
    c.push_back({"bound_lossless", R::at_most, 1e-8, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.g)
                         for (double a : s.alpha)
                             w.add(rel(lossy::lossy_qfi(g, a, 1.0), analytic::qfi_ideal(cfg(g, a, 2), 2)),
                                   at({{"g", g}, {"alpha", a}}));
                     return w;
                 }});
    c.push_back({"mu_stationarity", R::at_most, 1e-6, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.g)
                         for (double eta : s.eta) {
                             if (eta == 1.0) continue;
                             const auto H = lossy::moment_vector(g, 1.0);
                             const auto mu = lossy::optimal_mu(H, eta);
                             const double cq = lossy::cq_bound(H, {eta, mu.mu1, mu.mu2});
                             const auto [d1, d2] = cq_gradient(H, eta, mu.mu1, mu.mu2);
                             w.add(std::hypot(d1, d2) / cq, at({{"g", g}, {"eta", eta}}));
                         }
                     return w;
                 }});
    c.push_back({"mu_minimality", R::at_most, 1e-12, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.g)
                         for (double eta : s.eta) {
                             if (eta == 1.0) continue;
                             const auto H = lossy::moment_vector(g, 1.0);
                             const auto mu = lossy::optimal_mu(H, eta);
                             const double cq = lossy::cq_bound(H, {eta, mu.mu1, mu.mu2});
                             double best = std::min(lossy::cq_bound(H, {eta, 0.0, 0.0}), lossy::cq_bound(H, {eta, -1.0, -1.0}));
                             for (int i = 0; i <= 40; ++i)
                                 for (int j = 0; j <= 40; ++j)
                                     best = std::min(best, lossy::cq_bound(H, {eta, -2.0 + 0.075 * i, -2.0 + 0.075 * j}));
                             w.add((cq - best) / cq, at({{"g", g}, {"eta", eta}}));
                         }
                     return w;
                 }});
    c.push_back({"bound_monotonic_in_eta", R::at_least, 0.0, false, [](const GridSpec& s) {
                     auto w = Worst::min();
                     for (double g : s.g) {
                         double prev = 0.0;
                         for (int i = 1; i <= 10; ++i) {
                             const double eta = 0.1 * i;
                             const double v = lossy::lossy_qfi(g, 1.0, eta);
                             if (i > 1) w.add((v - prev) / v, at({{"g", g}, {"eta", eta}}));
                             prev = v;
                         }
                     }
                     return w;
                 }});
    c.push_back({"bound_below_lossless", R::above, 0.0, false, [](const GridSpec& s) {
                     auto w = Worst::min();
                     for (double g : s.g)
                         for (double eta : s.eta) {
                             if (eta == 1.0) continue;
                             const double v = lossy::lossy_qfi(g, 1.0, eta);
                             const double f2 = analytic::qfi_ideal(cfg(g, 1.0, 2), 2);
                             w.add(std::min(v, f2 - v) / f2, at({{"g", g}, {"eta", eta}}));
                         }
                     return w;
                 }});
    c.push_back({"bound_exceeds_true_qfi", R::at_most, 1e-6, true, [](const GridSpec&) {
                     auto w = Worst::max();
                     const auto probe = oracle::probe_state(cfg(0.8, 1.0, 2));
                     for (double eta : {0.3, 0.6, 0.9}) {
                         const double bound = lossy::lossy_qfi(0.8, 1.0, eta);
                         for (auto placement : {InternalLossPlacement::after_phase, InternalLossPlacement::before_phase}) {
                             const auto family =
                                 oracle::lossy_kerr_family(probe, 2, eta, placement, oracle::mixed_qfi_max_n);
                             w.add(oracle::mixed_qfi_small(family, 0.0) - bound,
                                   at({{"eta", eta}, {"after_phase", placement == InternalLossPlacement::after_phase}}));
                         }
                     }
                     return w;
                 }});
    c.push_back({"baseline_two_port_reduction", R::at_most, 1e-6, false, [](const GridSpec& s) {
                     auto w = Worst::max();
                     for (double g : s.g)
                         for (double eta : s.eta) {
                             const double vs = lossy::lossy_qfi_baseline(lossy::CsVs{1.0}, g, eta);
                             w.add(rel(lossy::lossy_qfi_baseline(analytic::CsCs{1.0, 0.0}, g, eta), vs),
                                   at({{"g", g}, {"eta", eta}}));
                             w.add(rel(lossy::lossy_qfi_baseline(analytic::CsSvs{1.0, 0.0}, g, eta), vs),
                                   at({{"g", g}, {"eta", eta}}));
                         }
                     return w;
                 }});
    c.push_back({"qcrb_kerr_below_linear", R::above, 0.0, false, [](const GridSpec& s) {
                     // The pairs behind the lossy QCRB figures: an eta sweep at g=1,
                     // a gain sweep at eta=0.6, and the lossless gain sweep.
                     std::vector<std::pair<double, double>> pairs;
                     for (double eta : s.eta) pairs.emplace_back(1.0, eta);
                     for (int i = 0; i <= 10; ++i) pairs.emplace_back(0.5 + 0.1 * i, 0.6);
                     for (double g : s.g) pairs.emplace_back(g, 1.0);
                     auto w = Worst::min();
                     for (auto [g, eta] : pairs) {
                         const double q1 = analytic::qcrb(lossy::lossy_qfi_baseline(lossy::CsVs{1.0}, g, eta));
                         const double q2 = analytic::qcrb(lossy::lossy_qfi(g, 1.0, eta));
                         w.add((q1 - q2) / q1, at({{"g", g}, {"eta", eta}}));
                     }
                     return w;
                 }});
    return c;
}

bool satisfied(double v, Relation r, double t) {
    if (std::isnan(v)) return false;
    switch (r) {
        case Relation::at_most: return v <= t;
        case Relation::above: return v > t;
        case Relation::at_least: return v >= t;
    }
    return false;
}

const char* symbol(Relation r) {
    switch (r) {
        case Relation::at_most: return "<=";
        case Relation::above: return ">";
        case Relation::at_least: return ">=";
    }
    return "?";
}

}  // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& c : checks()) names.push_back(c.name);
    return names;
}

bool VerifyReport::breach(bool strict) const {
    return std::any_of(checks.begin(), checks.end(),
                       [&](const CheckOutcome& c) { return !c.passed && (strict || !c.disputed); });
}

Table VerifyReport::table() const {
    Table t;
    t.columns = {"check", "value", "relation", "threshold", "status", "worst_at"};
    for (const auto& c : checks) {
        const char* status = c.passed ? "pass" : (c.disputed ? "disputed" : "FAIL");
        Row r{c.name};
        if (std::isfinite(c.value))
            r.push_back(c.value);
        else
            r.push_back(std::string(std::isnan(c.value) ? "nan" : (c.value > 0 ? "inf" : "-inf")));
        r.push_back(std::string(symbol(c.relation)));
        r.push_back(c.threshold);
        r.push_back(std::string(status));
        std::string detail = c.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        r.push_back(detail);
        t.rows.push_back(std::move(r));
    }
    return t;
}

VerifyReport run_verify(Grid grid, const std::map<std::string, double>& tolerances) {
    const auto list = checks();
    for (const auto& [name, _] : tolerances)
        if (std::none_of(list.begin(), list.end(), [&](const Check& c) { return c.name == name; }))
            throw Error(Errc::invalid_argument, "no check named '" + name + "'");

    const auto spec = grid_spec(grid);
    std::vector<CheckOutcome> outcomes;
    std::vector<std::exception_ptr> errors;
    parallel_for_each<CheckOutcome>(
        list.size(),
        [&](std::size_t i) {
            const auto& c = list[i];
            CheckOutcome o;
            o.name = c.name;
            o.relation = c.relation;
            o.disputed = c.disputed;
            const auto it = tolerances.find(c.name);
            o.threshold = it == tolerances.end() ? c.threshold : it->second;
            try {
                const Worst w = c.run(spec);
                o.value = w.value;
                o.detail = w.where;
            } catch (const Error& e) {
                if (e.is_numerical()) throw;
                o.value = std::numeric_limits<double>::quiet_NaN();
                o.detail = std::string("error: ") + e.what();
            }
            o.passed = satisfied(o.value, o.relation, o.threshold);
            return o;
        },
        outcomes, errors);
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return {std::move(outcomes)};
}

}  // namespace ksu::cli
