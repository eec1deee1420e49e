#pragma once

#include "hiercache/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace hiercache {

using Point2 = std::pair<Rational, Rational>;

/// Indices of the lower convex hull of `points`, left to right. Points that
/// share an x keep only the lowest y; collinear interior points are dropped.
std::vector<std::size_t> lower_hull(const std::vector<Point2>& points);

/// Hull segment containing x: indices into `points` and the weight on `hi`.
struct HullBracket {
  std::size_t lo = 0;
  std::size_t hi = 0;
  Rational lambda = 0;
};

/// Throws HullError if x lies outside the span of the points.
HullBracket hull_bracket(const std::vector<Point2>& points, const Rational& x);

}  // namespace hiercache
