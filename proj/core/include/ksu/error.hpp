#pragma once

#include <stdexcept>
#include <string>

namespace ksu {

enum class Errc {
    invalid_argument,
    unsupported_k,
    invalid_transmissivity,
    unbalanced,
    nonpositive,
    zero_derivative,
    pole,
    degenerate_system,
    cutoff_too_small,
    cutoff_too_large,
    nonconvergence,
    unknown_figure,
};

const char* to_string(Errc code);

// All library failures are reported through this one exception type; the
// code lets callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

    // Failures caused by the numerics rather than by the caller's input.
    bool is_numerical() const noexcept {
        return code_ == Errc::cutoff_too_small || code_ == Errc::nonconvergence;
    }

private:
    Errc code_;
};

}  // namespace ksu
