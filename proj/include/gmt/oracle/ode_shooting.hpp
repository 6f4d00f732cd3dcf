#pragma once

// Independent check of CC distances: integrate the horizontal control system
//   x' = L cos(theta), y' = L sin(theta), theta' = K, t' = (x y' - y x') / 2
// on [0, 1] with RK4 and shoot on (theta0, K, L) to hit a target point.
// The shortest converged trajectory over a fan of starts is reported. Shares
// no code with the closed-form geodesic solver.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gmt/heisenberg/group.hpp"

namespace gmt::oracle {

struct ShootingResult {
  double length = std::numeric_limits<double>::infinity();
  double turning = 0.0;
  double direction = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

namespace detail {

using State = std::array<double, 4>;  // x, y, theta, t

inline State rhs(const State& s, double turning, double length) {
  const double dx = length * std::cos(s[2]);
  const double dy = length * std::sin(s[2]);
  return {dx, dy, turning, 0.5 * (s[0] * dy - s[1] * dx)};
}

inline std::array<double, 3> integrate(double direction, double turning, double length, int steps) {
  State s{0.0, 0.0, direction, 0.0};
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const State k1 = rhs(s, turning, length);
    State tmp;
    for (int j = 0; j < 4; ++j) tmp[j] = s[j] + 0.5 * h * k1[j];
    const State k2 = rhs(tmp, turning, length);
    for (int j = 0; j < 4; ++j) tmp[j] = s[j] + 0.5 * h * k2[j];
    const State k3 = rhs(tmp, turning, length);
    for (int j = 0; j < 4; ++j) tmp[j] = s[j] + h * k3[j];
    const State k4 = rhs(tmp, turning, length);
    for (int j = 0; j < 4; ++j) s[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return {s[0], s[1], s[3]};
}

// Solves (A + lambda I) x = b for 3x3 A by Gaussian elimination with pivoting.
inline bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b, std::array<double, 3>& x) {
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-300) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (int r = c + 1; r < 3; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 3; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int c = 2; c >= 0; --c) {
    double s = b[c];
    for (int k = c + 1; k < 3; ++k) s -= a[c][k] * x[k];
    x[c] = s / a[c][c];
  }
  return true;
}

}  // namespace detail

// Levenberg-Marquardt from one start; unknowns (direction, turning, length).
inline ShootingResult shoot(const heisenberg::HPoint& target, double direction, double turning, double length,
                            int steps = 400, int max_iterations = 200) {
  std::array<double, 3> u{direction, turning, length};
  auto residual = [&](const std::array<double, 3>& v) {
    const auto e = detail::integrate(v[0], v[1], v[2], steps);
    return std::array<double, 3>{e[0] - target.x, e[1] - target.y, e[2] - target.t};
  };
  auto norm = [](const std::array<double, 3>& r) { return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]); };
  std::array<double, 3> r = residual(u);
  double lambda = 1e-3;
  for (int it = 0; it < max_iterations && norm(r) > 1e-13; ++it) {
    std::array<std::array<double, 3>, 3> jac{};
    for (int k = 0; k < 3; ++k) {
      auto v = u;
      const double h = 1e-7 * std::max(1.0, std::abs(u[k]));
      v[k] += h;
      const auto rp = residual(v);
      v[k] = u[k] - h;
      const auto rm = residual(v);
      for (int i = 0; i < 3; ++i) jac[i][k] = (rp[i] - rm[i]) / (2 * h);
    }
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jtr{};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b)
        for (int i = 0; i < 3; ++i) jtj[a][b] += jac[i][a] * jac[i][b];
      for (int i = 0; i < 3; ++i) jtr[a] -= jac[i][a] * r[i];
    }
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      auto damped = jtj;
      for (int a = 0; a < 3; ++a) damped[a][a] += lambda * (1.0 + jtj[a][a]);
      std::array<double, 3> step{};
      if (!detail::solve3(damped, jtr, step)) {
        lambda *= 10;
        continue;
      }
      auto v = u;
      for (int a = 0; a < 3; ++a) v[a] += step[a];
      const auto rv = residual(v);
      if (norm(rv) < norm(r)) {
        u = v;
        r = rv;
        lambda = std::max(lambda / 10, 1e-12);
        accepted = true;
      } else {
        lambda *= 10;
      }
    }
    if (!accepted) break;
  }
  ShootingResult out;
  out.direction = u[0];
  out.turning = u[1];
  out.length = std::abs(u[2]);
  out.residual = norm(r);
  out.converged = out.residual < 1e-9;
  return out;
}

// Shortest converged shot to `target` over a fan of initial turnings.
inline ShootingResult shooting_distance(const heisenberg::HPoint& target, int steps = 400) {
  const double planar = std::hypot(target.x, target.y);
  const double scale = std::max(planar, std::sqrt(4.0 * std::numbers::pi * std::abs(target.t)));
  ShootingResult best;
  if (scale == 0.0) {
    best.length = 0.0;
    best.residual = 0.0;
    best.converged = true;
    return best;
  }
  const double heading = std::atan2(target.y, target.x);
  for (double turning : {-6.0, -4.5, -3.0, -1.5, -0.5, 0.5, 1.5, 3.0, 4.5, 6.0}) {
    const double start = planar > 0.0 ? heading - 0.5 * turning : 0.0;
    const auto shot = shoot(target, start, turning, scale, steps);
    if (shot.converged && shot.length < best.length) best = shot;
  }
  return best;
}

}  // namespace gmt::oracle
