#include "options.hpp"

#include <cctype>
#include <charconv>
#include <numbers>

#include "csv.hpp"
#include "ksu/error.hpp"

namespace ksu::cli {
namespace {

double parse_number(std::string_view s, const std::string& whole) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end || s.empty())
        throw Error(Errc::invalid_argument, "cannot read angle '" + whole + "'");
    return v;
}

std::string trim(std::string s) {
    std::string out;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
    return out;
}

}  // namespace

double parse_angle(const std::string& text) {
    const std::string s = trim(text);
    const auto at = s.find("pi");
    if (at == std::string::npos) return parse_number(s, text);

    double factor = 1.0;
    std::string_view head(s.data(), at);
    if (head == "-") {
        factor = -1.0;
    } else if (!head.empty()) {
        if (head.back() != '*') throw Error(Errc::invalid_argument, "cannot read angle '" + text + "'");
        head.remove_suffix(1);
        factor = parse_number(head, text);
    }
    std::string_view tail(s.data() + at + 2, s.size() - at - 2);
    if (!tail.empty()) {
        if (tail.front() != '/') throw Error(Errc::invalid_argument, "cannot read angle '" + text + "'");
        tail.remove_prefix(1);
        const double d = parse_number(tail, text);
        if (d == 0.0) throw Error(Errc::invalid_argument, "angle '" + text + "' divides by zero");
        factor /= d;
    }
    return factor * std::numbers::pi;
}

InterferometerConfig make_config(const Options& o) {
    if (o.g < 0.0 || (o.g2 && *o.g2 < 0.0)) throw Error(Errc::invalid_argument, "gains must be non-negative");
    if (o.alpha < 0.0) throw Error(Errc::invalid_argument, "--alpha must be non-negative");
    require_supported_k(o.k);
    InterferometerConfig c;
    c.g1 = o.g;
    c.g2 = o.g2.value_or(o.g);
    c.theta1 = parse_angle(o.theta1);
    c.theta2 = parse_angle(o.theta2);
    c.alpha_abs = o.alpha;
    c.theta_alpha = parse_angle(o.theta_alpha);
    c.k = o.k;
    c.phi = parse_angle(o.phi);
    return c;
}

LossConfig make_loss(const Options& o) {
    LossConfig l;
    l.T1 = o.T1;
    l.T2 = o.T2;
    if (o.loss_order == "after-phase")
        l.placement = InternalLossPlacement::after_phase;
    else if (o.loss_order == "before-phase")
        l.placement = InternalLossPlacement::before_phase;
    else
        throw Error(Errc::invalid_argument, "--loss-order must be after-phase or before-phase");
    l.validate();
    return l;
}

bool has_loss(const Options& o) { return o.T1 != 1.0 || o.T2 != 1.0; }

fock::Cutoff make_cutoff(const Options& o) {
    fock::Cutoff c;
    if (o.cutoff) c.n_max = *o.cutoff;
    c.validate();
    return c;
}

lossy::Baseline make_baseline(const Options& o) {
    if (o.baseline.empty() || o.baseline == "cs-vs") return lossy::CsVs{o.alpha};
    if (o.baseline == "cs-cs") return analytic::CsCs{o.alpha, o.beta};
    if (o.baseline == "cs-svs") return analytic::CsSvs{o.alpha, o.r};
    throw Error(Errc::invalid_argument, "--baseline must be cs-vs, cs-cs or cs-svs");
}

std::string describe(const InterferometerConfig& c) {
    return "g1=" + format_number(c.g1) + " g2=" + format_number(c.g2) + " theta1=" + format_number(c.theta1) +
           " theta2=" + format_number(c.theta2) + " alpha=" + format_number(c.alpha_abs) +
           " theta_alpha=" + format_number(c.theta_alpha) + " k=" + std::to_string(c.k) +
           " phi=" + format_number(c.phi);
}

std::string describe(const LossConfig& l) {
    return "T1=" + format_number(l.T1) + " T2=" + format_number(l.T2) + " loss_order=" +
           (l.placement == InternalLossPlacement::after_phase ? "after-phase" : "before-phase");
}

}  // namespace ksu::cli
