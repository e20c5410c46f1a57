#include "perfsim/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace perfsim {

Rect::Rect(double x0, double y0, double x1, double y1)
    : x0_(x0), y0_(y0), x1_(x1), y1_(y1) {
  if (!(std::isfinite(x0) && std::isfinite(y0) && std::isfinite(x1) &&
        std::isfinite(y1))) {
    throw std::invalid_argument("Rect: bounds must be finite");
  }
  if (!(x0 < x1 && y0 < y1)) {
    throw std::invalid_argument("Rect: requires x0 < x1 and y0 < y1");
  }
  if (!std::isfinite(area()) || !(area() > 0.0)) {
    throw std::invalid_argument("Rect: area must be positive and finite");
  }
}

double dist(const Point& p, const Point& q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

namespace {

inline bool close(const Point& a, const Point& b, double r2) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= r2;
}

}  // namespace

std::size_t count_close_pairs_capped(std::span<const Point> points, double r,
                                     std::size_t cap) {
  const double r2 = r * r;
  std::size_t count = 0;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (close(points[i], points[j], r2) && ++count >= cap) return count;
    }
  }
  return count;
}

std::size_t count_close_pairs(std::span<const Point> points, double r) {
  return count_close_pairs_capped(points, r, static_cast<std::size_t>(-1));
}

std::size_t count_cross_pairs_capped(std::span<const Point> first,
                                     std::span<const Point> second, double r,
                                     std::size_t cap) {
  const double r2 = r * r;
  std::size_t count = 0;
  for (const Point& a : first) {
    for (const Point& b : second) {
      if (close(a, b, r2) && ++count >= cap) return count;
    }
  }
  return count;
}

std::size_t count_cross_pairs(std::span<const Point> first,
                              std::span<const Point> second, double r) {
  return count_cross_pairs_capped(first, second, r,
                                  static_cast<std::size_t>(-1));
}

Split split_region(const Rect& region) {
  if (region.width() >= region.height()) {
    const double mid = region.x0() + 0.5 * region.width();
    return {Rect(region.x0(), region.y0(), mid, region.y1()),
            Rect(mid, region.y0(), region.x1(), region.y1()),
            Cut{Axis::x, mid}};
  }
  const double mid = region.y0() + 0.5 * region.height();
  return {Rect(region.x0(), region.y0(), region.x1(), mid),
          Rect(region.x0(), mid, region.x1(), region.y1()),
          Cut{Axis::y, mid}};
}

PointSet strip_near_cut(std::span<const Point> points, const Cut& cut,
                        double r) {
  PointSet strip;
  for (const Point& p : points) {
    const double coord = cut.axis == Axis::x ? p.x : p.y;
    if (std::abs(coord - cut.position) <= r) strip.push_back(p);
  }
  return strip;
}

bool in_lower(const Split& split, const Point& p) {
  const double coord = split.cut.axis == Axis::x ? p.x : p.y;
  return coord <= split.cut.position;
}

}  // namespace perfsim
