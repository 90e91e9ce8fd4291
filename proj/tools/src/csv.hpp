#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace ksu::cli {

using Cell = std::variant<double, std::string>;
using Row = std::vector<Cell>;

// %.9g, with negative zero printed as 0.
std::string format_number(double v);

struct Table {
    std::vector<std::string> comments;  // written as "# ..." lines
    std::vector<std::string> columns;
    std::vector<Row> rows;
    // Points dropped because their evaluation raised; one reason per point.
    std::vector<std::string> omitted;

    void write(std::ostream& os) const;
};

}  // namespace ksu::cli
