#include "ksu/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>

#include "csv.hpp"
#include "figures.hpp"
#include "ksu/analytic.hpp"
#include "ksu/error.hpp"
#include "ksu/fault.hpp"
#include "ksu/lossy_qfi.hpp"
#include "ksu/oracle.hpp"
#include "options.hpp"
#include "verify.hpp"

namespace ksu::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Table& t, const Options& o, std::ostream& out) {
    if (o.out.empty()) {
        t.write(out);
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + o.out + "' for writing");
    t.write(f);
    if (!f) throw UsageError("failed writing '" + o.out + "'");
}

void add_limits(Row& r, double n) {
    const auto lim = analytic::limits(n);
    r.insert(r.end(), {n, lim.sql, lim.hl, lim.shl});
}

Table cmd_sensitivity(const Options& o) {
    const auto c = make_config(o);
    const bool lossy = has_loss(o);
    std::optional<LossConfig> loss;
    if (lossy) loss = make_loss(o);

    std::optional<double> closed;
    std::string why;
    if (!c.is_balanced())
        why = "closed forms need a balanced interferometer (g2 = g, theta2 - theta1 = pi)";
    else if (lossy && c.phi != 0.0)
        why = "closed-form lossy sensitivity exists only at phi = 0";
    else
        closed = lossy ? analytic::sensitivity_lossy_optimal(c, *loss) : analytic::sensitivity_analytic(c);
    if (!closed && !o.oracle) throw UsageError(why + "; add --oracle for the numerical value");

    Table t;
    t.comments.push_back("command: sensitivity");
    t.comments.push_back("fixed: " + describe(c) + (loss ? " " + describe(*loss) : ""));
    if (!closed) t.comments.push_back("no closed form: " + why);
    t.columns = {"phi"};
    Row r{c.phi};
    if (closed) {
        t.columns.push_back("delta_phi_analytic");
        r.push_back(*closed);
    }
    if (o.oracle) {
        const oracle::Pipeline p(c, loss, make_cutoff(o));
        const double numeric = oracle::sensitivity_numeric(p, c.phi, o.fd_step);
        t.comments.push_back("oracle: fd_step=" + format_number(o.fd_step));
        t.columns.push_back("delta_phi_oracle");
        r.push_back(numeric);
        if (closed) {
            t.columns.push_back("rel_dev");
            r.push_back(std::abs(numeric - *closed) / *closed);
        }
        t.columns.push_back("oracle_n_max");
        r.push_back(static_cast<double>(p.probe().n_max()));
    }
    t.columns.insert(t.columns.end(), {"n_total", "sql", "hl", "shl"});
    add_limits(r, analytic::n_total(c));
    t.rows.push_back(std::move(r));
    return t;
}

Table cmd_qfi(const Options& o) {
    const auto c = make_config(o);
    const double eta = o.eta.value_or(1.0);
    require_transmissivity(eta, "eta");
    const bool lossy = eta != 1.0;
    if (o.k == 2 && !o.baseline.empty()) throw UsageError("--baseline applies to the linear phase (--k 1) only");
    if (o.oracle && (lossy || !(o.baseline.empty() || o.baseline == "cs-vs")))
        throw UsageError("--oracle QFI is available for the lossless coherent plus vacuum input only");

    Table t;
    t.comments.push_back("command: qfi");
    t.comments.push_back("fixed: g=" + format_number(c.g1) + " alpha=" + format_number(c.alpha_abs) +
                         " k=" + std::to_string(c.k) + " eta=" + format_number(eta) +
                         " trials=" + std::to_string(o.trials));
    t.columns = {"input", "f", "qcrb", "information_free"};

    std::string input = o.k == 2 ? "cs-vs" : (o.baseline.empty() ? "cs-vs" : o.baseline);
    double f = 0.0;
    std::optional<lossy::OptimalMu> mu;
    if (o.k == 2) {
        if (lossy) {
            const auto H = lossy::moment_vector(c.g1, c.alpha_abs);
            mu = lossy::optimal_mu(H, eta);
            f = mu->information_free ? 0.0 : lossy::cq_bound(H, {eta, mu->mu1, mu->mu2});
            t.comments.push_back("f is the purification bound minimized over (mu1, mu2)");
        } else {
            f = analytic::qfi_ideal(c, 2);
        }
    } else {
        const auto b = make_baseline(o);
        if (input == "cs-cs") input += " beta=" + format_number(o.beta);
        if (input == "cs-svs") input += " r=" + format_number(o.r);
        f = lossy ? lossy::lossy_qfi_baseline(b, c.g1, eta) : lossy::baseline_fisher(b, c.g1);
    }
    const bool info_free = !(f > 0.0);
    Row r{input, f};
    r.push_back(info_free ? Cell{std::string()} : Cell{analytic::qcrb(f, o.trials)});
    r.push_back(info_free ? 1.0 : 0.0);
    if (mu) {
        t.columns.insert(t.columns.end(), {"mu1", "mu2"});
        r.insert(r.end(), {mu->mu1, mu->mu2});
    }
    if (o.oracle) {
        const double numeric = oracle::pure_qfi_numeric(c, o.k, make_cutoff(o));
        t.columns.insert(t.columns.end(), {"f_oracle", "rel_dev"});
        r.push_back(numeric);
        r.push_back(info_free ? std::abs(numeric) : std::abs(numeric - f) / f);
    }
    t.rows.push_back(std::move(r));
    return t;
}

Table cmd_limits(const Options& o) {
    const auto c = make_config(o);
    Table t;
    t.comments.push_back("command: limits");
    t.comments.push_back("fixed: g=" + format_number(c.g1) + " alpha=" + format_number(c.alpha_abs));
    t.columns = {"n_total", "sql", "hl", "shl"};
    Row r;
    add_limits(r, analytic::n_total(c));
    t.rows.push_back(std::move(r));
    return t;
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
    std::map<std::string, double> m;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + item + "'");
        try {
            std::size_t used = 0;
            const std::string v = item.substr(eq + 1);
            m[item.substr(0, eq)] = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
        } catch (const std::logic_error&) {
            throw UsageError("--tol value in '" + item + "' is not a number");
        }
    }
    return m;
}

int cmd_verify(const Options& o, std::ostream& out) {
    Grid grid;
    if (o.grid == "small")
        grid = Grid::small;
    else if (o.grid == "full")
        grid = Grid::full;
    else
        throw UsageError("--grid must be small or full");
    const auto report = run_verify(grid, parse_tolerances(o.tol));
    Table t = report.table();
    t.comments.push_back("command: verify");
    t.comments.push_back("grid: " + o.grid + (o.strict ? " (strict)" : ""));
    std::size_t failed = 0, disputed = 0;
    for (const auto& c : report.checks) {
        if (c.passed) continue;
        (c.disputed ? disputed : failed)++;
    }
    t.comments.push_back("failed: " + std::to_string(failed) + " disputed: " + std::to_string(disputed) + " of " +
                         std::to_string(report.checks.size()));
    emit(t, o, out);
    return report.breach(o.strict) ? ExitCode::breach : ExitCode::ok;
}

void declare(CLI::App& app, Options& o) {
    app.add_option("--g", o.g, "gain of both OPAs (first OPA if --g2 is given)");
    app.add_option("--g2", o.g2, "gain of the second OPA");
    app.add_option("--theta1", o.theta1, "phase of the first OPA (radians, `pi` tokens allowed)");
    app.add_option("--theta2", o.theta2, "phase of the second OPA");
    app.add_option("--alpha", o.alpha, "coherent amplitude |alpha|");
    app.add_option("--theta-alpha", o.theta_alpha, "coherent phase, e.g. 1.5707963 or pi/2");
    app.add_option("--k", o.k, "phase generator power: 1 linear, 2 Kerr")->check(CLI::IsMember({1, 2}));
    app.add_option("--phi", o.phi, "phase value (radians)");
    app.add_option("--T1", o.T1, "transmissivity between the OPAs");
    app.add_option("--T2", o.T2, "transmissivity after the second OPA");
    app.add_option("--eta", o.eta, "transmissivity of the loss channel for the QFI bound");
    app.add_option("--loss-order", o.loss_order, "internal loss relative to the phase: after-phase or before-phase");
    app.add_flag("--oracle", o.oracle, "cross-check with the truncated Fock-space oracle");
    app.add_option("--cutoff", o.cutoff, "starting Fock cutoff per mode for the oracle")->check(CLI::Range(1, 256));
    app.add_option("--fd-step", o.fd_step, "finite-difference step in phi for the oracle");
    app.add_option("--out", o.out, "write CSV to this file instead of stdout");
    app.add_option("--trials", o.trials, "number of repetitions in the Cramer-Rao bound")->check(CLI::PositiveNumber);
    app.add_option("--baseline", o.baseline, "linear-phase input: cs-vs, cs-cs or cs-svs");
    app.add_option("--beta", o.beta, "second coherent amplitude for cs-cs");
    app.add_option("--r", o.r, "squeezing parameter for cs-svs");
    app.add_option("--inject-fault", o.inject_fault)->group("");
    app.set_config("--config", "", "key=value file; flags on the command line take precedence");
}

int dispatch(CLI::App& app, Options& o, std::ostream& out) {
    if (!o.inject_fault.empty()) {
        const auto site = fault::from_name(o.inject_fault);
        if (!site) throw UsageError("unknown fault site '" + o.inject_fault + "'");
        fault::arm(*site);
    }
    if (app.got_subcommand("sensitivity")) {
        emit(cmd_sensitivity(o), o, out);
    } else if (app.got_subcommand("qfi")) {
        emit(cmd_qfi(o), o, out);
    } else if (app.got_subcommand("limits")) {
        emit(cmd_limits(o), o, out);
    } else if (app.got_subcommand("figure")) {
        emit(make_figure(o.figure, o.trials), o, out);
    } else if (app.got_subcommand("verify")) {
        return cmd_verify(o, out);
    }
    return ExitCode::ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Kerr SU(1,1) interferometer: sensitivities, Fisher information and verification", "ksu"};
    app.require_subcommand(1);
    app.fallthrough();
    declare(app, o);

    app.add_subcommand("sensitivity", "homodyne phase sensitivity at one phase value");
    app.add_subcommand("qfi", "quantum Fisher information and Cramer-Rao bound");
    app.add_subcommand("limits", "SQL, HL and SHL for the configuration's photon number");
    auto* fig = app.add_subcommand("figure", "CSV data behind one figure");
    fig->add_option("id", o.figure, "figure id")->required()->check(CLI::IsMember(figure_ids()));
    auto* ver = app.add_subcommand("verify", "closed forms against the oracle and their invariants");
    ver->add_option("--grid", o.grid, "small or full")->check(CLI::IsMember({"small", "full"}));
    ver->add_option("--tol", o.tol, "override a threshold: check=value (repeatable)");
    ver->add_flag("--strict", o.strict, "count disputed checks as failures");

    std::vector<std::string> argv_store{"ksu"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    const fault::Site previous = fault::armed();
    struct Restore {
        fault::Site site;
        ~Restore() { fault::arm(site); }
    } restore{previous};

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }
    try {
        return dispatch(app, o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.is_numerical() ? ExitCode::numerical : ExitCode::usage;
    }
}

}  // namespace ksu::cli
