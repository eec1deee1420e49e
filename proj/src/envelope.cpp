#include "hiercache/envelope.hpp"

#include "hiercache/errors.hpp"

#include <algorithm>
#include <numeric>

namespace hiercache {

namespace {

// > 0 for a counter-clockwise turn o -> a -> b.
Rational turn(const Point2& o, const Point2& a, const Point2& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

}  // namespace

std::vector<std::size_t> lower_hull(const std::vector<Point2>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a] < points[b];
  });
  std::vector<std::size_t> hull;
  for (std::size_t idx : order) {
    if (!hull.empty() && points[hull.back()].first == points[idx].first) continue;
    while (hull.size() >= 2 &&
           turn(points[hull[hull.size() - 2]], points[hull.back()], points[idx]) <= 0) {
      hull.pop_back();
    }
    hull.push_back(idx);
  }
  return hull;
}

HullBracket hull_bracket(const std::vector<Point2>& points, const Rational& x) {
  const auto hull = lower_hull(points);
  if (hull.empty() || x < points[hull.front()].first || x > points[hull.back()].first) {
    throw HullError("value outside the span of the achievable points");
  }
  if (hull.size() == 1) return {hull[0], hull[0], 0};
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const Point2& lo = points[hull[i]];
    const Point2& hi = points[hull[i + 1]];
    if (x <= hi.first) {
      return {hull[i], hull[i + 1], (x - lo.first) / (hi.first - lo.first)};
    }
  }
  throw HullError("value outside the span of the achievable points");
}

}  // namespace hiercache
