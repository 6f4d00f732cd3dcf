#pragma once

// First Heisenberg group in exponential coordinates (x, y, t).
//
// Group law:  (x, y, t) * (x', y', t') = (x + x', y + y', t + t' + (x y' - y x') / 2)
// Frame:      X = d/dx - (y/2) d/dt,  Y = d/dy + (x/2) d/dt,  T = d/dt
// Dilations:  delta_l(x, y, t) = (l x, l y, l^2 t)
//
// With this law a horizontal curve from the origin has t equal to the signed
// area swept by its planar projection, so the CC distance to (0, 0, tau) is the
// length of a circle of area |tau|, i.e. sqrt(4 pi |tau|).

#include <cmath>
#include <numbers>

#include "gmt/error.hpp"

namespace gmt::heisenberg {

struct HPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;

  friend bool operator==(const HPoint&, const HPoint&) = default;
};

inline HPoint multiply(const HPoint& p, const HPoint& q) {
  return {p.x + q.x, p.y + q.y, p.t + q.t + 0.5 * (p.x * q.y - p.y * q.x)};
}

inline HPoint invert(const HPoint& p) { return {-p.x, -p.y, -p.t}; }

inline HPoint dilate(const HPoint& p, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("dilation factor must be positive");
  return {lambda * p.x, lambda * p.y, lambda * lambda * p.t};
}

// p^{-1} q, the displacement that both distances are evaluated on.
inline HPoint displacement(const HPoint& p, const HPoint& q) { return multiply(invert(p), q); }

enum class GroupOp { multiply, invert, dilate };

inline HPoint group_op(const HPoint& p, const HPoint& q, GroupOp op, double lambda = 1.0) {
  switch (op) {
    case GroupOp::multiply:
      return multiply(p, q);
    case GroupOp::invert:
      return invert(p);
    case GroupOp::dilate:
      if (!(lambda > 0.0)) throw DomainError("dilation factor must be positive");
      return dilate(p, lambda);
  }
  return p;
}

// Korányi gauge ((x^2 + y^2)^2 + 16 t^2)^{1/4}. The factor 16 matches the 1/2
// twist of the group law; the axis point (0, 0, 1/4) has gauge 1.
inline constexpr double kKoranyiGaugeConstant = 16.0;

inline double koranyi_norm(const HPoint& p) {
  const double r2 = p.x * p.x + p.y * p.y;
  return std::sqrt(std::sqrt(r2 * r2 + kKoranyiGaugeConstant * p.t * p.t));
}

inline double koranyi_distance(const HPoint& p, const HPoint& q) {
  return koranyi_norm(displacement(p, q));
}

namespace detail {

// x - sin(x) without cancellation near zero.
inline double x_minus_sin(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  }
  return x - std::sin(x);
}

// sin(x)/x
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace detail

// Endpoint of the unit-speed horizontal curve of length `length` leaving the
// origin with direction angle `direction` and constant turning rate
// curvature / length (total turning `curvature`). These arcs of circles are the
// CC geodesics from the origin while |curvature| <= 2 pi.
inline HPoint geodesic_endpoint(double curvature, double direction, double length = 1.0) {
  const double half = 0.5 * curvature;
  const double chord = length * detail::sinc(half);
  const double heading = direction + half;
  const double area =
      curvature == 0.0 ? 0.0 : length * length * detail::x_minus_sin(curvature) / (2.0 * curvature * curvature);
  return {chord * std::cos(heading), chord * std::sin(heading), area};
}

struct CCSolve {
  double value = 0.0;
  double bracket = 0.0;  // spread of the distance over the final curvature bracket
  int iterations = 0;
};

// CC norm of (x, y, t). The geodesic reaching (z, t), z != 0, t != 0 has total
// turning 2 eta with eta in (0, pi) solving
//     |t| / |z|^2 = (2 eta - sin 2 eta) / (8 sin^2 eta),
// and length |z| eta / sin eta. For eta > pi/2 the equation is solved in
// kappa = pi - eta and the length is taken from
//     rho^2 = 8 |t| (pi - kappa)^2 / (2 pi - 2 kappa + sin 2 kappa),
// which stays well conditioned as the endpoint approaches the vertical axis.
inline CCSolve cc_norm_solve(const HPoint& p, double tolerance = 1e-8) {
  constexpr double pi = std::numbers::pi;
  const double r = std::hypot(p.x, p.y);
  const double a = std::abs(p.t);
  if (a == 0.0) return {r, 0.0, 0};
  if (r == 0.0) return {std::sqrt(4.0 * pi * a), 0.0, 0};

  const double ratio = a / (r * r);
  constexpr int kMaxIterations = 200;
  double lo = 0.0;
  double hi = 0.5 * pi;
  CCSolve out;
  if (ratio <= pi / 8.0) {
    auto excess = [&](double eta) {
      const double s = std::sin(eta);
      return detail::x_minus_sin(2.0 * eta) / (8.0 * s * s) - ratio;
    };
    auto length = [&](double eta) { return r / detail::sinc(eta); };
    for (; out.iterations < kMaxIterations; ++out.iterations) {
      const double spread = length(hi) - length(lo);
      if (spread <= 1e-2 * tolerance * length(lo) || hi - lo <= 1e-17) break;
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    out.value = length(0.5 * (lo + hi));
    out.bracket = length(hi) - length(lo);
  } else {
    // decreasing in kappa
    auto excess = [&](double kappa) {
      const double s = std::sin(kappa);
      return (2.0 * pi - 2.0 * kappa + std::sin(2.0 * kappa)) / (8.0 * s * s) - ratio;
    };
    auto length = [&](double kappa) {
      const double w = pi - kappa;
      return std::sqrt(8.0 * a * w * w / (2.0 * pi - 2.0 * kappa + std::sin(2.0 * kappa)));
    };
    for (; out.iterations < kMaxIterations; ++out.iterations) {
      const double spread = std::abs(length(hi) - length(lo));
      if (spread <= 1e-2 * tolerance * length(lo) || hi - lo <= 1e-17) break;
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    out.value = length(0.5 * (lo + hi));
    out.bracket = std::abs(length(hi) - length(lo));
  }
  if (out.bracket > tolerance * out.value) {
    throw SolverError("CC geodesic solve did not reach tolerance", out.bracket / out.value);
  }
  return out;
}

inline double cc_norm(const HPoint& p, double tolerance = 1e-8) { return cc_norm_solve(p, tolerance).value; }

inline double cc_distance(const HPoint& p, const HPoint& q, double tolerance = 1e-8) {
  return cc_norm(displacement(p, q), tolerance);
}

}  // namespace gmt::heisenberg
