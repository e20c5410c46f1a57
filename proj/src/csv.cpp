#include "perfsim/csv.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace perfsim {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw std::invalid_argument("CSV row has " + std::to_string(fields.size()) +
                                  " fields, header has " +
                                  std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw std::invalid_argument("CSV input is empty");
  return table;
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::uint32_t parse_vertex(std::string_view text) {
  std::uint32_t value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a vertex id: '" + std::string(text) + "'");
  }
  return value;
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  out << "x,y\n";
  for (const Point& p : points) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

PointSet read_points_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  if (table.header != std::vector<std::string>{"x", "y"}) {
    throw std::invalid_argument("points CSV header must be exactly x,y");
  }
  PointSet points;
  for (const auto& row : table.rows) points.push_back({parse_double(row[0]), parse_double(row[1])});
  return points;
}

}  // namespace perfsim
