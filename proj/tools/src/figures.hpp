#pragma once

#include <string>
#include <vector>

#include "csv.hpp"

namespace ksu::cli {

const std::vector<std::string>& figure_ids();

// Curve data for one figure at its caption's fixed parameters. Throws
// Errc::unknown_figure for an unrecognized id.
Table make_figure(const std::string& id, int trials);

}  // namespace ksu::cli
