#include "figures.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "ksu/analytic.hpp"
#include "ksu/error.hpp"
#include "ksu/lossy_qfi.hpp"
#include "parallel.hpp"

namespace ksu::cli {
namespace {

using analytic::qcrb;
constexpr double half_pi = std::numbers::pi / 2;

struct Axis {
    std::string name;
    double start, stop;
    int points;

    double at(int i) const {
        return (start * (points - 1 - i) + stop * i) / static_cast<double>(points - 1);
    }
    std::string describe() const {
        return name + " in [" + format_number(start) + ", " + format_number(stop) + "], " +
               std::to_string(points) + " points";
    }
};

InterferometerConfig base(double g, double alpha, int k, double phi = 0.0) {
    return InterferometerConfig::balanced(g, alpha, half_pi, k, phi);
}

double dphi(double g, double alpha, int k, double phi = 0.0) {
    return analytic::sensitivity_analytic(base(g, alpha, k, phi));
}

double dphi_lossy(double g, double alpha, int k, double T1, double T2) {
    LossConfig l;
    l.T1 = T1;
    l.T2 = T2;
    return analytic::sensitivity_lossy_optimal(base(g, alpha, k), l);
}

double f_ideal(double g, double alpha, int k) { return analytic::qfi_ideal(base(g, alpha, k), k); }

// Rows for every point of a sweep; points whose evaluation throws are
// dropped and reported in the table.
void sweep(Table& t, std::size_t n, const std::function<std::string(std::size_t)>& label,
           const std::function<Row(std::size_t)>& eval) {
    std::vector<Row> rows;
    std::vector<std::exception_ptr> errors;
    parallel_for_each<Row>(n, eval, rows, errors);
    for (std::size_t i = 0; i < n; ++i) {
        if (!errors[i]) {
            t.rows.push_back(std::move(rows[i]));
            continue;
        }
        try {
            std::rethrow_exception(errors[i]);
        } catch (const Error& e) {
            if (e.is_numerical()) throw;
            t.omitted.push_back(label(i) + ": " + e.what());
        }
    }
}

void sweep_axis(Table& t, const Axis& x, const std::function<Row(double)>& eval) {
    t.comments.push_back("x: " + x.describe());
    sweep(
        t, static_cast<std::size_t>(x.points),
        [&](std::size_t i) { return x.name + "=" + format_number(x.at(static_cast<int>(i))); },
        [&](std::size_t i) { return eval(x.at(static_cast<int>(i))); });
}

void sweep_grid(Table& t, const Axis& x, const Axis& y, const std::function<Row(double, double)>& eval) {
    t.comments.push_back("x: " + x.describe());
    t.comments.push_back("y: " + y.describe());
    const auto ny = static_cast<std::size_t>(y.points);
    sweep(
        t, static_cast<std::size_t>(x.points) * ny,
        [&](std::size_t i) {
            return x.name + "=" + format_number(x.at(static_cast<int>(i / ny))) + " " + y.name + "=" +
                   format_number(y.at(static_cast<int>(i % ny)));
        },
        [&](std::size_t i) { return eval(x.at(static_cast<int>(i / ny)), y.at(static_cast<int>(i % ny))); });
}

const Axis phi_axis{"phi", -0.6, 0.6, 601};
const Axis g_axis{"g", 0.05, 2.0, 196};
const Axis alpha_axis{"alpha", 0.05, 3.0, 296};
const Axis n_axis{"n_input", 0.1, 10.0, 100};
const Axis eta_axis{"eta", 0.05, 1.0, 96};

// CS_CS and CS_SVS inputs carrying n photons, split equally between the ports.
analytic::CsCs split_cs_cs(double n) { return {std::sqrt(n / 2), std::sqrt(n / 2)}; }
analytic::CsSvs split_cs_svs(double n) { return {std::sqrt(n / 2), std::asinh(std::sqrt(n / 2))}; }

const char* const n_note =
    "n_input is the mean photon number of the input state; n_total is |alpha|^2 cosh 2g + 2 sinh^2 g "
    "for the coherent plus vacuum input";
const char* const split_note =
    "two-port baselines split n_input equally: |alpha|^2 = |beta|^2 (cs_cs), |alpha|^2 = sinh^2 r (cs_svs)";

void fig_2a(Table& t, int) {
    t.comments.push_back("fixed: g=1 alpha=1 theta_alpha=pi/2");
    t.columns = {"phi", "delta_phi_k1", "delta_phi_k2"};
    sweep_axis(t, phi_axis, [](double phi) -> Row { return {phi, dphi(1, 1, 1, phi), dphi(1, 1, 2, phi)}; });
}

void fig_2b(Table& t, int) {
    t.comments.push_back("fixed: g=1 alpha=1 theta_alpha=pi/2");
    t.comments.push_back("signal is <X> of output mode a with X = a + a^dag");
    t.columns = {"phi", "signal_k1", "signal_k2"};
    sweep_axis(t, phi_axis, [](double phi) -> Row {
        return {phi, analytic::signal(base(1, 1, 1, phi)), analytic::signal(base(1, 1, 2, phi))};
    });
}

void fig_3(Table& t, int k) {
    t.comments.push_back("fixed: theta_alpha=pi/2 phi=0 k=" + std::to_string(k));
    t.columns = {"g", "alpha", "n_total", "delta_phi"};
    sweep_grid(t, {"g", 0.05, 2.0, 40}, {"alpha", 0.05, 3.0, 60}, [k](double g, double a) -> Row {
        return {g, a, analytic::n_total(base(g, a, k)), dphi(g, a, k)};
    });
}

void fig_4(Table& t, int) {
    t.comments.push_back("panel a: sweep g at alpha=1; panel b: sweep alpha at g=1; theta_alpha=pi/2 phi=0");
    t.comments.push_back("limits use n_total: sql = 1/sqrt(n), hl = 1/n, shl = 1/n^2");
    t.columns = {"panel", "g", "alpha", "n_total", "delta_phi_k1", "delta_phi_k2", "sql", "hl", "shl"};
    auto row = [](const char* panel, double g, double a) -> Row {
        const double n = analytic::n_total(base(g, a, 1));
        const auto lim = analytic::limits(n);
        return {std::string(panel), g, a, n, dphi(g, a, 1), dphi(g, a, 2), lim.sql, lim.hl, lim.shl};
    };
    sweep_axis(t, g_axis, [&](double g) { return row("a", g, 1.0); });
    sweep_axis(t, alpha_axis, [&](double a) { return row("b", 1.0, a); });
}

void fig_5qcrb(Table& t, int trials) {
    t.comments.push_back("fixed: g=1 theta_alpha=pi/2 phi=0 alpha=sqrt(n_input) trials=" + std::to_string(trials));
    t.comments.push_back(n_note);
    t.comments.push_back("not emitted: the externally cited homodyne curves for two-port inputs");
    t.columns = {"n_input", "alpha", "n_total", "delta_phi_k1", "delta_phi_k2", "qcrb_k1", "qcrb_k2"};
    sweep_axis(t, n_axis, [trials](double n) -> Row {
        const double a = std::sqrt(n);
        return {n,           a,           analytic::n_total(base(1, a, 1)), dphi(1, a, 1), dphi(1, a, 2),
                qcrb(f_ideal(1, a, 1), trials), qcrb(f_ideal(1, a, 2), trials)};
    });
}

void fig_6(Table& t, int trials, bool bound) {
    t.comments.push_back("fixed: alpha=1 theta_alpha=pi/2 trials=" + std::to_string(trials));
    if (bound)
        t.columns = {"g", "qcrb_k1", "qcrb_k2"};
    else
        t.columns = {"g", "f_k1", "f_k2"};
    sweep_axis(t, g_axis, [=](double g) -> Row {
        const double f1 = f_ideal(g, 1, 1), f2 = f_ideal(g, 1, 2);
        if (bound) return {g, qcrb(f1, trials), qcrb(f2, trials)};
        return {g, f1, f2};
    });
}

void fig_7(Table& t, int trials) {
    t.comments.push_back("fixed: g=1 theta_alpha=pi/2 phi=0 trials=" + std::to_string(trials));
    t.comments.push_back(n_note);
    t.comments.push_back(split_note);
    t.columns = {"n_input", "n_total", "qcrb_k1", "qcrb_k2", "delta_phi_k1", "delta_phi_k2", "qcrb_cs_cs",
                 "qcrb_cs_svs"};
    sweep_axis(t, n_axis, [trials](double n) -> Row {
        const double a = std::sqrt(n);
        return {n,
                analytic::n_total(base(1, a, 1)),
                qcrb(f_ideal(1, a, 1), trials),
                qcrb(f_ideal(1, a, 2), trials),
                dphi(1, a, 1),
                dphi(1, a, 2),
                qcrb(analytic::qfi_baseline_ideal(split_cs_cs(n), 1.0), trials),
                qcrb(analytic::qfi_baseline_ideal(split_cs_svs(n), 1.0), trials)};
    });
}

void fig_9(Table& t, int k) {
    t.comments.push_back("fixed: g=1 alpha=1 theta_alpha=pi/2 phi=0 k=" + std::to_string(k));
    t.columns = {"T1", "T2", "delta_phi"};
    const Axis T{"T", 0.05, 1.0, 20};
    sweep_grid(t, {"T1", T.start, T.stop, T.points}, {"T2", T.start, T.stop, T.points},
               [k](double T1, double T2) -> Row { return {T1, T2, dphi_lossy(1, 1, k, T1, T2)}; });
}

void fig_10(Table& t, int) {
    t.comments.push_back("fixed: g=1 alpha=1 theta_alpha=pi/2; lossy columns at T1=T2=0.6");
    t.comments.push_back("signal is <X> of output mode a with X = a + a^dag");
    t.comments.push_back("with loss the mean quadrature scales by sqrt(T1 T2)");
    t.columns = {"phi", "signal_k1", "signal_k1_lossy", "signal_k2", "signal_k2_lossy"};
    const double scale = std::sqrt(0.6 * 0.6);
    sweep_axis(t, phi_axis, [scale](double phi) -> Row {
        const double s1 = analytic::signal(base(1, 1, 1, phi)), s2 = analytic::signal(base(1, 1, 2, phi));
        return {phi, s1, scale * s1, s2, scale * s2};
    });
}

void fig_11(Table& t, bool vs_g) {
    t.comments.push_back(vs_g ? "fixed: alpha=1 theta_alpha=pi/2 phi=0" : "fixed: g=1 theta_alpha=pi/2 phi=0");
    t.comments.push_back("internal: T1=0.6 T2=1; external: T1=1 T2=0.6; lossless: T1=T2=1");
    t.columns = {vs_g ? "g" : "alpha", "k1_internal", "k1_external", "k1_lossless",
                 "k2_internal", "k2_external", "k2_lossless"};
    auto row = [](double x, double g, double a) -> Row {
        Row r{x};
        for (int k : {1, 2}) {
            r.push_back(dphi_lossy(g, a, k, 0.6, 1.0));
            r.push_back(dphi_lossy(g, a, k, 1.0, 0.6));
            r.push_back(dphi(g, a, k));
        }
        return r;
    };
    if (vs_g)
        sweep_axis(t, g_axis, [&](double g) { return row(g, g, 1.0); });
    else
        sweep_axis(t, alpha_axis, [&](double a) { return row(a, 1.0, a); });
}

Row lossy_qcrb_row(double x, double g, double a, double eta, int trials) {
    const double f1 = f_ideal(g, a, 1), f2 = f_ideal(g, a, 2);
    const double fl1 = lossy::lossy_qfi_baseline(lossy::CsVs{a}, g, eta);
    const double cq = lossy::lossy_qfi(g, a, eta);
    return {x, qcrb(f1, trials), qcrb(fl1, trials), qcrb(f2, trials), qcrb(cq, trials), fl1, cq};
}

void fig_14(Table& t, int trials, bool vs_eta) {
    t.comments.push_back(std::string(vs_eta ? "fixed: g=1 alpha=1" : "fixed: alpha=1 eta=0.6") +
                         " theta_alpha=pi/2 trials=" + std::to_string(trials));
    t.comments.push_back("k=1 lossy: coherent plus vacuum baseline; k=2 lossy: minimized purification bound");
    t.columns = {vs_eta ? "eta" : "g", "qcrb_k1", "qcrb_k1_lossy", "qcrb_k2", "qcrb_k2_lossy", "f_k1_lossy",
                 "c_q_k2"};
    if (vs_eta)
        sweep_axis(t, eta_axis, [trials](double eta) { return lossy_qcrb_row(eta, 1.0, 1.0, eta, trials); });
    else
        sweep_axis(t, g_axis, [trials](double g) { return lossy_qcrb_row(g, g, 1.0, 0.6, trials); });
}

void fig_15(Table& t, int trials) {
    t.comments.push_back("fixed: g=1 eta=0.6 theta_alpha=pi/2 trials=" + std::to_string(trials));
    t.comments.push_back(n_note);
    t.comments.push_back(split_note);
    t.columns = {"n_input",    "qcrb_k1",         "qcrb_k1_lossy", "qcrb_k2",
                 "qcrb_k2_lossy", "qcrb_cs_cs",   "qcrb_cs_cs_lossy", "qcrb_cs_svs",
                 "qcrb_cs_svs_lossy"};
    sweep_axis(t, n_axis, [trials](double n) -> Row {
        const double a = std::sqrt(n), eta = 0.6;
        Row r = lossy_qcrb_row(n, 1.0, a, eta, trials);
        r.resize(5);
        for (lossy::Baseline b : {lossy::Baseline{split_cs_cs(n)}, lossy::Baseline{split_cs_svs(n)}}) {
            r.push_back(qcrb(lossy::baseline_fisher(b, 1.0), trials));
            r.push_back(qcrb(lossy::lossy_qfi_baseline(b, 1.0, eta), trials));
        }
        return r;
    });
}

using Builder = std::function<void(Table&, int)>;

const std::map<std::string, Builder>& builders() {
    static const std::map<std::string, Builder> m = {
        {"2a", fig_2a},
        {"2b", fig_2b},
        {"3a", [](Table& t, int) { fig_3(t, 1); }},
        {"3b", [](Table& t, int) { fig_3(t, 2); }},
        {"4", fig_4},
        {"5qcrb", fig_5qcrb},
        {"6a", [](Table& t, int n) { fig_6(t, n, false); }},
        {"6b", [](Table& t, int n) { fig_6(t, n, true); }},
        {"7", fig_7},
        {"9a", [](Table& t, int) { fig_9(t, 1); }},
        {"9b", [](Table& t, int) { fig_9(t, 2); }},
        {"10", fig_10},
        {"11a", [](Table& t, int) { fig_11(t, true); }},
        {"11b", [](Table& t, int) { fig_11(t, false); }},
        {"14a", [](Table& t, int n) { fig_14(t, n, true); }},
        {"14b", [](Table& t, int n) { fig_14(t, n, false); }},
        {"15", fig_15},
    };
    return m;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"2a", "2b", "3a",  "3b",  "4",   "5qcrb", "6a", "6b", "7",
                                                 "9a", "9b", "10",  "11a", "11b", "14a",   "14b", "15"};
    return ids;
}

Table make_figure(const std::string& id, int trials) {
    const auto it = builders().find(id);
    if (it == builders().end()) throw Error(Errc::unknown_figure, "unknown figure '" + id + "'");
    if (trials < 1) throw Error(Errc::invalid_argument, "trials must be at least 1");
    Table t;
    t.comments.push_back("figure: " + id);
    it->second(t, trials);
    return t;
}

}  // namespace ksu::cli
