#pragma once

// Sampled C^1 curves in the Heisenberg group, their decomposition along the
// left-invariant frame (X, Y, T), and the intrinsic measure with density |v|,
// v being the T-coefficient of the tangent.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "gmt/curve.hpp"
#include "gmt/error.hpp"
#include "gmt/heisenberg/group.hpp"

namespace gmt::heisenberg {

using Vec3 = std::array<double, 3>;

struct FrameCoefficients {
  double h1 = 0.0;
  double h2 = 0.0;
  double v = 0.0;
};

inline FrameCoefficients frame_decompose(const HPoint& p, const Vec3& d) {
  return {d[0], d[1], d[2] - 0.5 * (p.x * d[1] - p.y * d[0])};
}

inline Vec3 frame_compose(const HPoint& p, const FrameCoefficients& f) {
  return {f.h1, f.h2, f.v + 0.5 * (p.x * f.h2 - p.y * f.h1)};
}

struct CurveSpec {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> nodes;
  std::vector<HPoint> positions;
  std::vector<Vec3> derivatives;
  std::vector<FrameCoefficients> frame;

  // Throws unless the frame reproduces the derivatives to 1e-10 and central
  // differences of the positions match the stored derivatives to
  // `c1_tolerance`.
  void validate(double c1_tolerance = 1e-3) const {
    const std::size_t n = nodes.size();
    if (n < 2) throw DomainError("curve needs at least two nodes");
    if (positions.size() != n || derivatives.size() != n || frame.size() != n) {
      throw DomainError("curve arrays differ in length");
    }
    if (!(b > a) || nodes.front() != a || nodes.back() != b) throw DomainError("curve nodes must span [a, b]");
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (!(nodes[i + 1] > nodes[i])) throw DomainError("curve nodes must be strictly increasing");
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 d = frame_compose(positions[i], frame[i]);
      for (int k = 0; k < 3; ++k)
        if (std::abs(d[k] - derivatives[i][k]) > 1e-10) throw DomainError("frame coefficients do not reproduce the tangent");
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h = nodes[i + 1] - nodes[i - 1];
      const Vec3 fd{(positions[i + 1].x - positions[i - 1].x) / h, (positions[i + 1].y - positions[i - 1].y) / h,
                    (positions[i + 1].t - positions[i - 1].t) / h};
      for (int k = 0; k < 3; ++k)
        if (std::abs(fd[k] - derivatives[i][k]) > c1_tolerance) {
          throw DomainError("finite differences of positions disagree with the stored derivatives");
        }
    }
  }

  Curve to_curve() const {
    std::vector<Point> pos;
    std::vector<Point> der;
    pos.reserve(nodes.size());
    der.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      pos.push_back(Point::of(positions[i]));
      der.push_back(Point::coords({derivatives[i][0], derivatives[i][1], derivatives[i][2]}));
    }
    return Curve::hermite(nodes, std::move(pos), std::move(der));
  }
};

inline CurveSpec make_curve_spec(const std::function<HPoint(double)>& position, const std::function<Vec3(double)>& derivative,
                                 double a, double b, std::size_t node_count) {
  if (!(b > a)) throw DomainError("curve interval is degenerate");
  if (node_count < 2) throw DomainError("curve needs at least two nodes");
  CurveSpec spec;
  spec.a = a;
  spec.b = b;
  for (std::size_t i = 0; i < node_count; ++i) {
    const double s = i + 1 == node_count ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(node_count - 1);
    spec.nodes.push_back(s);
    spec.positions.push_back(position(s));
    spec.derivatives.push_back(derivative(s));
    spec.frame.push_back(frame_decompose(spec.positions.back(), spec.derivatives.back()));
  }
  return spec;
}

// T-coefficient of the tangent of a coordinate curve in H^1.
inline double vertical_coefficient(const Curve& curve, double s) {
  const Point p = curve.at(s);
  const Point d = curve.tangent(s);
  return frame_decompose(p.h(), {d[0], d[1], d[2]}).v;
}

namespace detail {

inline constexpr std::array<double, 8> kGaussNodes{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                                   -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                                   0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGaussWeights{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                                     0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                                     0.2223810344533745, 0.1012285362903763};

// 8-point Gauss-Legendre rule on [lo, hi].
template <class F>
double gauss_legendre(const F& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t k = 0; k < kGaussNodes.size(); ++k) sum += kGaussWeights[k] * f(mid + half * kGaussNodes[k]);
  return half * sum;
}

}  // namespace detail

// int_a^s |v| over the node panels of the spec, Gauss-Legendre on each panel.
inline double cumulative_intrinsic_measure(const CurveSpec& spec, const Curve& curve, double s) {
  double total = 0.0;
  auto density = [&](double u) { return std::abs(vertical_coefficient(curve, u)); };
  for (std::size_t i = 0; i + 1 < spec.nodes.size() && spec.nodes[i] < s; ++i) {
    total += detail::gauss_legendre(density, spec.nodes[i], std::min(s, spec.nodes[i + 1]));
  }
  return total;
}

inline double intrinsic_measure(const CurveSpec& spec, double lo, double hi) {
  if (lo > hi || lo < spec.a || hi > spec.b) throw DomainError("sub-interval outside the curve's parameter range");
  const Curve curve = spec.to_curve();
  return cumulative_intrinsic_measure(spec, curve, hi) - cumulative_intrinsic_measure(spec, curve, lo);
}

struct ParamInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Maximal parameter intervals where |v| >= threshold. Runs are found on the
// nodes and their ends refined by bisection on the interpolated curve.
inline std::vector<ParamInterval> nonhorizontal_set(const CurveSpec& spec, double threshold) {
  if (!(threshold > 0.0)) throw DomainError("threshold must be positive");
  const Curve curve = spec.to_curve();
  auto above = [&](double s) { return std::abs(vertical_coefficient(curve, s)) >= threshold; };
  auto edge = [&](double in, double out) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (in + out);
      (above(mid) ? in : out) = mid;
    }
    return in;
  };
  std::vector<ParamInterval> runs;
  const auto& n = spec.nodes;
  std::size_t i = 0;
  while (i < n.size()) {
    if (!above(n[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n.size() && above(n[j + 1])) ++j;
    const double lo = i == 0 ? n[0] : edge(n[i], n[i - 1]);
    const double hi = j + 1 == n.size() ? n[j] : edge(n[j], n[j + 1]);
    runs.push_back({lo, hi});
    i = j + 1;
  }
  return runs;
}

}  // namespace gmt::heisenberg
