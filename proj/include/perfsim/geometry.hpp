#ifndef PERFSIM_GEOMETRY_HPP
#define PERFSIM_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace perfsim {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

using PointSet = std::vector<Point>;

// Axis-aligned rectangle [x0, x1] x [y0, y1] with positive, finite area.
class Rect {
 public:
  Rect(double x0, double y0, double x1, double y1);

  static Rect unit() { return Rect(0.0, 0.0, 1.0, 1.0); }

  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double x1() const { return x1_; }
  double y1() const { return y1_; }
  double width() const { return x1_ - x0_; }
  double height() const { return y1_ - y0_; }
  double area() const { return width() * height(); }

  // Closed containment.
  bool contains(const Point& p) const {
    return p.x >= x0_ && p.x <= x1_ && p.y >= y0_ && p.y <= y1_;
  }

  friend bool operator==(const Rect&, const Rect&) = default;

 private:
  double x0_, y0_, x1_, y1_;
};

enum class Axis { x, y };

// The line {axis coordinate == position} separating the two halves of a split.
struct Cut {
  Axis axis = Axis::x;
  double position = 0.0;
};

struct Split {
  Rect lower;  // left or bottom half; owns points lying on the cut
  Rect upper;
  Cut cut;
};

double dist(const Point& p, const Point& q);

// Unordered pairs i < j with dist <= r. Coincident points count as a pair.
std::size_t count_close_pairs(std::span<const Point> points, double r);

// Same as count_close_pairs but stops once the count reaches `cap`.
std::size_t count_close_pairs_capped(std::span<const Point> points, double r,
                                     std::size_t cap);

// Pairs (a, b) with a in `first`, b in `second` and dist(a, b) <= r.
std::size_t count_cross_pairs(std::span<const Point> first,
                              std::span<const Point> second, double r);

std::size_t count_cross_pairs_capped(std::span<const Point> first,
                                     std::span<const Point> second, double r,
                                     std::size_t cap);

// Halves the longer side at its midpoint; ties split the x-axis.
Split split_region(const Rect& region);

// Points whose distance to the cut line is at most r.
PointSet strip_near_cut(std::span<const Point> points, const Cut& cut,
                        double r);

// Which half of `split` owns p (lower for points on the cut).
bool in_lower(const Split& split, const Point& p);

}  // namespace perfsim

#endif  // PERFSIM_GEOMETRY_HPP
