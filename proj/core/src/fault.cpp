#include "ksu/fault.hpp"

#include <array>
#include <atomic>
#include <utility>

namespace ksu::fault {
namespace {

std::atomic<Site> g_armed{Site::none};

constexpr std::array<std::pair<Site, std::string_view>, 28> kNames{{
    {Site::laguerre, "laguerre"},
    {Site::abar1, "abar1"},
    {Site::abar2, "abar2"},
    {Site::abar3, "abar3"},
    {Site::abar4, "abar4"},
    {Site::qfi_f1, "qfi_f1"},
    {Site::qfi_f, "qfi_f"},
    {Site::n_total, "n_total"},
    {Site::limits, "limits"},
    {Site::optimal_k1, "optimal_k1"},
    {Site::optimal_k2_gain, "optimal_k2_gain"},
    {Site::lossy_radicand, "lossy_radicand"},
    {Site::quadrature_chi, "quadrature_chi"},
    {Site::quadrature_z1, "quadrature_z1"},
    {Site::quadrature_z2, "quadrature_z2"},
    {Site::quadrature_z3, "quadrature_z3"},
    {Site::quadrature_z4, "quadrature_z4"},
    {Site::cq_w1, "cq_w1"},
    {Site::cq_w3, "cq_w3"},
    {Site::cq_w6, "cq_w6"},
    {Site::cq_big_w2, "cq_big_w2"},
    {Site::cq_big_w3, "cq_big_w3"},
    {Site::mu_opt_b1, "mu_opt_b1"},
    {Site::mu_opt_b4, "mu_opt_b4"},
    {Site::baseline_e11, "baseline_e11"},
    {Site::baseline_e13, "baseline_e13"},
    {Site::baseline_e14, "baseline_e14"},
    {Site::baseline_mean, "baseline_mean"},
}};

constexpr std::array<Site, kNames.size()> make_sites() {
    std::array<Site, kNames.size()> out{};
    for (std::size_t i = 0; i < kNames.size(); ++i) out[i] = kNames[i].first;
    return out;
}

constexpr auto kSites = make_sites();

}  // namespace

void arm(Site site) { g_armed.store(site, std::memory_order_relaxed); }

Site armed() { return g_armed.load(std::memory_order_relaxed); }

double tweak(Site site, double value) {
    return armed() == site && site != Site::none ? value * 1.01 : value;
}

std::string_view name(Site site) {
    for (const auto& [s, n] : kNames)
        if (s == site) return n;
    return "none";
}

std::optional<Site> from_name(std::string_view n) {
    if (n == "none") return Site::none;
    for (const auto& [s, sn] : kNames)
        if (sn == n) return s;
    return std::nullopt;
}

std::span<const Site> all_sites() { return kSites; }

}  // namespace ksu::fault
