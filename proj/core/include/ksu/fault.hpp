#pragma once

#include <optional>
#include <span>
#include <string_view>

// Test hook for the verification harness: a single closed-form coefficient can
// be corrupted at run time so that tests can prove `verify` notices. Nothing
// is corrupted unless a site is armed explicitly.
namespace ksu::fault {

enum class Site {
    none,
    laguerre,
    abar1,
    abar2,
    abar3,
    abar4,
    qfi_f1,
    qfi_f,
    n_total,
    limits,
    optimal_k1,
    optimal_k2_gain,
    lossy_radicand,
    quadrature_chi,
    quadrature_z1,
    quadrature_z2,
    quadrature_z3,
    quadrature_z4,
    cq_w1,
    cq_w3,
    cq_w6,
    cq_big_w2,
    cq_big_w3,
    mu_opt_b1,
    mu_opt_b4,
    baseline_e11,
    baseline_e13,
    baseline_e14,
    baseline_mean,
};

// Arms one site for the whole process (Site::none disarms).
void arm(Site site);
Site armed();

// Returns value unchanged unless `site` is armed, in which case it is
// scaled by 1.01.
double tweak(Site site, double value);

std::string_view name(Site site);
std::optional<Site> from_name(std::string_view name);
std::span<const Site> all_sites();

// Arms a site for the lifetime of the guard.
class ScopedFault {
public:
    explicit ScopedFault(Site site) : previous_(armed()) { arm(site); }
    ~ScopedFault() { arm(previous_); }
    ScopedFault(const ScopedFault&) = delete;
    ScopedFault& operator=(const ScopedFault&) = delete;

private:
    Site previous_;
};

}  // namespace ksu::fault
