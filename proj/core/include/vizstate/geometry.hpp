#pragma once

#include <cstddef>
#include <vector>

namespace vizstate {

struct Point2 {
  double x = 0;
  double y = 0;
};

/// True when segments [a1,a2] and [b1,b2] share at least one point.
/// Touching (including shared endpoints and collinear overlap) counts.
bool segments_intersect(Point2 a1, Point2 a2, Point2 b1, Point2 b2);

/// True when the two polylines share at least one point; any segment-pair
/// crossing or touch counts as intersection.
bool polylines_intersect(const std::vector<Point2>& a, const std::vector<Point2>& b);

/// Trapezoidal integral of the polyline over its own x domain.
double trapezoid_auc(const std::vector<Point2>& line);

/// Mean absolute second difference of y, normalized by the y range.
/// Constant and two-point lines have roughness 0.
double roughness(const std::vector<double>& ys);

}  // namespace vizstate
