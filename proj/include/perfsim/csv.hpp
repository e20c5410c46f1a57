#ifndef PERFSIM_CSV_HPP
#define PERFSIM_CSV_HPP

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "perfsim/geometry.hpp"

namespace perfsim {

// Minimal CSV: comma separated, no quoting, "\n" or "\r\n" line ends.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Throws std::invalid_argument on an empty input or a row whose width
// differs from the header.
CsvTable read_csv(std::istream& in);

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

double parse_double(std::string_view text);
std::uint32_t parse_vertex(std::string_view text);

void write_points_csv(std::ostream& out, const PointSet& points);
PointSet read_points_csv(std::istream& in);

}  // namespace perfsim

#endif  // PERFSIM_CSV_HPP
