#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "gmt/curve.hpp"
#include "gmt/metric.hpp"

namespace gmt {

struct CloudSet {
  std::vector<Point> points;
};

// The arc curve([a, b]) represented by `samples` equally spaced parameters.
struct CurveSegment {
  Curve curve;
  double a = 0.0;
  double b = 1.0;
  std::size_t samples = 2;

  void validate() const {
    if (!(b > a)) throw DomainError("curve segment interval is degenerate");
    if (samples < 2) throw DomainError("curve segment needs at least two samples");
    if (a < curve.lo() || b > curve.hi()) throw DomainError("curve segment exceeds the curve's parameter range");
  }
  double param(std::size_t i) const {
    if (i + 1 == samples) return b;
    return a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  double spacing() const { return (b - a) / static_cast<double>(samples - 1); }
  std::vector<Point> sample_points() const {
    validate();
    std::vector<Point> pts;
    pts.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) pts.push_back(curve.at(param(i)));
    return pts;
  }
};

using SetRep = std::variant<CloudSet, BallDescriptor, CurveSegment>;

inline bool is_ball(const SetRep& s) { return std::holds_alternative<BallDescriptor>(s); }

struct Diameter {
  double value = 0.0;
  // Set when the value comes from samples whose parameter gap exceeds the
  // resolution floor; it is then only a lower bound worth refining.
  bool needs_refinement = false;
};

struct DiameterOptions {
  double resolution_floor = 1e-3;
};

inline double max_pairwise_distance(const MetricSpec& space, const std::vector<Point>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, distance_unchecked(space, pts[i], pts[j]));
  return best;
}

// Fallback for metrics without an analytic ball diameter: maximize pairwise
// distance over grid points of the ball, with `per_axis` points per
// coordinate axis of the unit-ball box.
inline double sampled_ball_diameter(const MetricSpec& space, const BallDescriptor& ball, std::size_t per_axis = 9) {
  if (!space.is_homogeneous()) throw DomainError("sampled ball diameter needs a homogeneous space");
  if (per_axis < 2) throw DomainError("sampled ball diameter needs at least two points per axis");
  const auto box = unit_ball_box(space);
  const Point zero = origin(space);
  std::vector<Point> inside;
  std::vector<std::size_t> idx(space.dim, 0);
  for (;;) {
    Point u = zero;
    for (std::size_t k = 0; k < space.dim; ++k) {
      u.x[k] = -box[k] + 2.0 * box[k] * static_cast<double>(idx[k]) / static_cast<double>(per_axis - 1);
    }
    if (distance_unchecked(space, zero, u) <= 1.0) inside.push_back(offset_point(space, ball.center, u, ball.radius));
    std::size_t k = 0;
    while (k < space.dim && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == space.dim) break;
  }
  return max_pairwise_distance(space, inside);
}

inline Diameter set_diameter(const MetricSpec& space, const SetRep& s, const DiameterOptions& opts = {}) {
  return std::visit(
      [&](const auto& v) -> Diameter {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CloudSet>) {
          if (v.points.empty()) throw DomainError("diameter of an empty set");
          for (const auto& p : v.points) check_point(space, p);
          return {max_pairwise_distance(space, v.points), false};
        } else if constexpr (std::is_same_v<T, BallDescriptor>) {
          check_point(space, v.center);
          if (!(v.radius >= 0.0)) throw DomainError("ball radius must be nonnegative");
          if (space.is_homogeneous()) return {2.0 * v.radius, false};
          std::vector<Point> members;
          for (std::size_t i = 0; i < space.table->size(); ++i) {
            const Point p = Point::of_label(i);
            const double d = distance_unchecked(space, v.center, p);
            if (v.closed ? d <= v.radius : d < v.radius) members.push_back(p);
          }
          if (members.empty()) throw DomainError("diameter of an empty set");
          return {max_pairwise_distance(space, members), false};
        } else {
          v.validate();
          if (v.curve.dim() != space.dim) throw DomainError("curve dimension does not match the space");
          const auto pts = v.sample_points();
          return {max_pairwise_distance(space, pts), v.spacing() > opts.resolution_floor};
        }
      },
      s);
}

}  // namespace gmt
