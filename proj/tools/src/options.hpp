#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ksu/config.hpp"
#include "ksu/fock.hpp"
#include "ksu/lossy_qfi.hpp"

namespace ksu::cli {

// Raw flag values shared by every subcommand. Angles are kept as text until
// parse_angle runs so that tokens like `pi/2` survive the config file.
struct Options {
    double g = 1.0;
    std::optional<double> g2;
    std::string theta1 = "0";
    std::string theta2 = "pi";
    double alpha = 1.0;
    std::string theta_alpha = "pi/2";
    int k = 2;
    std::string phi = "0";
    double T1 = 1.0;
    double T2 = 1.0;
    std::optional<double> eta;
    std::string loss_order = "after-phase";
    bool oracle = false;
    std::optional<int> cutoff;
    double fd_step = 1e-4;
    std::string out;
    int trials = 1;
    std::string baseline;
    double beta = 0.0;
    double r = 0.0;
    std::string grid = "small";
    std::vector<std::string> tol;
    bool strict = false;
    std::string figure;
    std::string inject_fault;
};

// Radians: a number, or `pi` optionally multiplied and divided by numbers
// (`pi/2`, `3*pi/4`, `-pi`).
double parse_angle(const std::string& text);

InterferometerConfig make_config(const Options& o);
LossConfig make_loss(const Options& o);
bool has_loss(const Options& o);
fock::Cutoff make_cutoff(const Options& o);
lossy::Baseline make_baseline(const Options& o);

// "g1=1 g2=1 ..." for CSV headers.
std::string describe(const InterferometerConfig& c);
std::string describe(const LossConfig& l);

}  // namespace ksu::cli
