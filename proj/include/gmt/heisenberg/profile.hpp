#pragma once

// Vertical-chord profiles of the unit balls of the Heisenberg metrics.
//
// Both unit balls are solids of revolution about the t-axis, so the ball is
// determined by its profile: for each planar radius s, the set of t with
// (s, 0, t) in the closed unit ball. alpha is the longest chord over all s,
// beta the chord on the axis (s = 0).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gmt/error.hpp"
#include "gmt/heisenberg/group.hpp"

namespace gmt::heisenberg {

enum class BallMetric { cc, koranyi };

inline std::string to_string(BallMetric m) { return m == BallMetric::cc ? "cc" : "koranyi"; }

struct ChordInterval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct ProfileSample {
  double radius = 0.0;
  std::vector<ChordInterval> chords;

  double length() const {
    double total = 0.0;
    for (const auto& c : chords) total += c.length();
    return total;
  }
};

struct ProfileResolution {
  std::size_t radial_steps = 64;
  std::size_t parameter_steps = 256;
};

inline constexpr ProfileResolution kMinProfileResolution{64, 256};

struct BoundaryPoint {
  double curvature;  // total turning of the unit-length geodesic
  double radius;     // planar distance of its endpoint
  double height;     // t of its endpoint
};

class BallProfile {
 public:
  BallProfile(BallMetric metric, ProfileResolution resolution, double tolerance)
      : metric_(metric), resolution_(resolution), tolerance_(tolerance) {
    if (metric_ == BallMetric::cc) trace_sphere();
    const double extent = planar_extent();
    samples_.reserve(resolution_.radial_steps + 2);
    for (std::size_t k = 0; k <= resolution_.radial_steps; ++k) {
      const double s = extent * static_cast<double>(k) / static_cast<double>(resolution_.radial_steps);
      samples_.push_back({s, chords_at(s)});
    }
  }

  BallMetric metric() const { return metric_; }
  const ProfileResolution& resolution() const { return resolution_; }
  const std::vector<ProfileSample>& samples() const { return samples_; }
  const std::vector<BoundaryPoint>& boundary() const { return boundary_; }
  // Largest planar radius reached by the unit ball.
  double planar_extent() const { return 1.0; }

  // Chords of the vertical line at planar radius s, endpoints refined to
  // better than 1e-6.
  std::vector<ChordInterval> chords_at(double s) const {
    if (s < 0.0) throw DomainError("planar radius must be nonnegative");
    if (s > planar_extent()) return {};
    if (metric_ == BallMetric::koranyi) {
      const double half = 0.25 * std::sqrt(std::max(0.0, 1.0 - s * s * s * s));
      return {{-half, half}};
    }
    return cc_chords(s);
  }

  double chord_length_at(double s) const {
    double total = 0.0;
    for (const auto& c : chords_at(s)) total += c.length();
    return total;
  }

  // Rows "planar_radius,chord_lo,chord_hi", one per chord; radii without
  // chords are omitted.
  std::string to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "planar_radius,chord_lo,chord_hi\n";
    for (const auto& sample : samples_)
      for (const auto& c : sample.chords) out << sample.radius << ',' << c.lo << ',' << c.hi << '\n';
    return out.str();
  }

 private:
  static double sphere_radius(double curvature) { return detail::sinc(0.5 * curvature); }
  static double sphere_height(double curvature) {
    if (curvature == 0.0) return 0.0;
    return detail::x_minus_sin(curvature) / (2.0 * curvature * curvature);
  }

  // Sweep the unit-length geodesics over total turning in [-2 pi, 2 pi]; their
  // endpoints form the profile curve of the unit sphere.
  void trace_sphere() {
    const double two_pi = 2.0 * std::numbers::pi;
    const std::size_t n = resolution_.parameter_steps;
    boundary_.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      const double c = -two_pi + 2.0 * two_pi * static_cast<double>(i) / static_cast<double>(n);
      const HPoint end = geodesic_endpoint(c, 0.0, 1.0);
      // the endpoints close up on the axis exactly
      const double r = (i == 0 || i == n) ? 0.0 : std::hypot(end.x, end.y);
      boundary_.push_back({c, r, end.t});
    }
  }

  std::vector<ChordInterval> cc_chords(double s) const {
    std::vector<double> crossings;
    for (std::size_t i = 0; i + 1 < boundary_.size(); ++i) {
      const auto& p = boundary_[i];
      const auto& q = boundary_[i + 1];
      const double fp = p.radius - s;
      const double fq = q.radius - s;
      if (fp * fq > 0.0) continue;
      double lo = p.curvature;
      double hi = q.curvature;
      double flo = fp;
      for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = sphere_radius(mid) - s;
        if ((fm <= 0.0) == (flo <= 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      crossings.push_back(sphere_height(0.5 * (lo + hi)));
    }
    std::sort(crossings.begin(), crossings.end());
    crossings.erase(std::unique(crossings.begin(), crossings.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                    crossings.end());
    if (crossings.empty()) return {};
    if (crossings.size() == 1) return {{crossings[0], crossings[0]}};

    std::vector<ChordInterval> chords;
    for (std::size_t i = 0; i + 1 < crossings.size(); ++i) {
      const double mid = 0.5 * (crossings[i] + crossings[i + 1]);
      if (cc_norm({s, 0.0, mid}, tolerance_) > 1.0) continue;
      if (!chords.empty() && chords.back().hi == crossings[i]) {
        chords.back().hi = crossings[i + 1];
      } else {
        chords.push_back({crossings[i], crossings[i + 1]});
      }
    }
    if (crossings.size() % 2 != 0 && chords.empty()) {
      throw EstimatorError("profile resolution too coarse to resolve the chords at planar radius " + std::to_string(s));
    }
    return chords;
  }

  BallMetric metric_;
  ProfileResolution resolution_;
  double tolerance_;
  std::vector<BoundaryPoint> boundary_;
  std::vector<ProfileSample> samples_;
};

inline BallProfile unit_ball_profile(BallMetric metric, ProfileResolution resolution = {}, double tolerance = 1e-8) {
  if (resolution.radial_steps < kMinProfileResolution.radial_steps ||
      resolution.parameter_steps < kMinProfileResolution.parameter_steps) {
    throw DomainError("profile resolution below (64, 256)");
  }
  return BallProfile(metric, resolution, tolerance);
}

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
  double argmax_radius = 0.0;
  double ratio() const { return alpha / beta; }
};

inline AlphaBeta alpha_beta(const BallProfile& profile) {
  const auto& samples = profile.samples();
  AlphaBeta out;
  out.beta = samples.front().length();
  std::size_t best = 0;
  for (std::size_t k = 0; k < samples.size(); ++k)
    if (samples[k].length() > samples[best].length()) best = k;
  out.alpha = samples[best].length();
  out.argmax_radius = samples[best].radius;

  // golden-section refinement between the neighbouring radial samples
  double lo = samples[best == 0 ? 0 : best - 1].radius;
  double hi = samples[std::min(best + 1, samples.size() - 1)].radius;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = profile.chord_length_at(x1);
  double f2 = profile.chord_length_at(x2);
  while (hi - lo > 1e-10) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = profile.chord_length_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = profile.chord_length_at(x2);
    }
  }
  const double s = 0.5 * (lo + hi);
  const double refined = profile.chord_length_at(s);
  if (refined > out.alpha) {
    out.alpha = refined;
    out.argmax_radius = s;
  }
  return out;
}

}  // namespace gmt::heisenberg
