#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace ksu::cli {

std::string format_number(double v) {
    if (!std::isfinite(v)) throw std::logic_error("non-finite value reached the CSV writer");
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void Table::write(std::ostream& os) const {
    for (const auto& c : comments) os << "# " << c << '\n';
    for (const auto& o : omitted) os << "# omitted: " << o << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            if (const auto* d = std::get_if<double>(&row[i]))
                os << format_number(*d);
            else
                os << std::get<std::string>(row[i]);
        }
        os << '\n';
    }
}

}  // namespace ksu::cli
