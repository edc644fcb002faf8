#pragma once

#include <cmath>

namespace dtnsim {

struct Point {
  double x = 0;  // meters
  double y = 0;  // meters
  bool operator==(const Point&) const = default;
};

inline double dist2(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(Point a, Point b) { return std::sqrt(dist2(a, b)); }

}  // namespace dtnsim
