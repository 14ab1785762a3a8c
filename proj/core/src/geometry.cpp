#include "vizstate/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace vizstate {
namespace {

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orientation_sign(Point2 o, Point2 a, Point2 b) {
  const double c = cross(o, a, b);
  if (c > 0) return 1;
  if (c < 0) return -1;
  return 0;
}

bool on_segment(Point2 p, Point2 a, Point2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point2 a1, Point2 a2, Point2 b1, Point2 b2) {
  const int d1 = orientation_sign(b1, b2, a1);
  const int d2 = orientation_sign(b1, b2, a2);
  const int d3 = orientation_sign(a1, a2, b1);
  const int d4 = orientation_sign(a1, a2, b2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(a1, b1, b2)) return true;
  if (d2 == 0 && on_segment(a2, b1, b2)) return true;
  if (d3 == 0 && on_segment(b1, a1, a2)) return true;
  if (d4 == 0 && on_segment(b2, a1, a2)) return true;
  return false;
}

bool polylines_intersect(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  if (a.empty() || b.empty()) return false;
  if (a.size() == 1 && b.size() == 1)
    return a[0].x == b[0].x && a[0].y == b[0].y;
  for (std::size_t i = 0; i + 1 < a.size() || i == 0; ++i) {
    const Point2 a1 = a[i];
    const Point2 a2 = a[std::min(i + 1, a.size() - 1)];
    for (std::size_t j = 0; j + 1 < b.size() || j == 0; ++j) {
      const Point2 b1 = b[j];
      const Point2 b2 = b[std::min(j + 1, b.size() - 1)];
      if (segments_intersect(a1, a2, b1, b2)) return true;
    }
  }
  return false;
}

double trapezoid_auc(const std::vector<Point2>& line) {
  double area = 0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i)
    area += 0.5 * (line[i + 1].x - line[i].x) * (line[i].y + line[i + 1].y);
  return area;
}

double roughness(const std::vector<double>& ys) {
  if (ys.size() < 3) return 0;
  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  const double range = *hi - *lo;
  if (range <= 0) return 0;
  double total = 0;
  for (std::size_t i = 2; i < ys.size(); ++i)
    total += std::abs(ys[i] - 2 * ys[i - 1] + ys[i - 2]);
  return total / (static_cast<double>(ys.size() - 2) * range);
}

}  // namespace vizstate
