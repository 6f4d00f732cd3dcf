#pragma once

// Upper estimates of zeta_delta(R) = inf { sum zeta(E_j) : diam E_j <= delta, R in U E_j }
// by explicit feasible ball covers of a sampled target.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "gmt/caratheodory/size_function.hpp"
#include "gmt/error.hpp"
#include "gmt/sets.hpp"

namespace gmt {

struct CoverEstimate {
  double value = 0.0;
  double delta = 0.0;
  std::vector<SetRep> cover;
  bool exact = false;
  std::optional<double> gap_bound;
  std::size_t evaluations = 0;
  // For infeasible exact instances: a target element no admissible candidate contains.
  std::optional<std::size_t> uncovered_witness;
};

struct CoverStrategy {
  enum class Kind { automatic, greedy_net, optimized_offset };
  Kind kind = Kind::automatic;
  // offset grid for the first ball of a curve sweep, points per axis
  std::size_t grid_per_axis = 9;
  std::size_t refine_steps = 40;
};

inline std::string to_string(CoverStrategy::Kind k) {
  switch (k) {
    case CoverStrategy::Kind::automatic:
      return "auto";
    case CoverStrategy::Kind::greedy_net:
      return "greedy";
    case CoverStrategy::Kind::optimized_offset:
      return "offset";
  }
  return "?";
}

namespace detail {

inline double ball_cost(const SizeFunction& z, double radius) { return z.of_diameter(2.0 * radius); }

// Greedy cover of a point set by closed balls of radius delta/2 centred at the
// points; each chosen ball is shrunk to the farthest point it is charged for.
inline CoverEstimate greedy_net_cover(const MetricSpec& space, const std::vector<Point>& pts, const SizeFunction& z,
                                      double delta) {
  CoverEstimate out;
  out.delta = delta;
  const double rho = 0.5 * delta;
  const std::size_t n = pts.size();
  std::vector<std::vector<std::size_t>> near(n);
  for (std::size_t i = 0; i < n; ++i) {
    near[i].push_back(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      ++out.evaluations;
      if (distance_unchecked(space, pts[i], pts[j]) <= rho) {
        near[i].push_back(j);
        near[j].push_back(i);
      }
    }
  }
  std::vector<char> covered(n, 0);
  std::vector<std::size_t> gain(n);
  for (std::size_t i = 0; i < n; ++i) gain[i] = near[i].size();
  std::size_t remaining = n;
  while (remaining > 0) {
    const auto best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
    double radius = 0.0;
    for (std::size_t j : near[best]) {
      if (covered[j]) continue;
      radius = std::max(radius, distance_unchecked(space, pts[best], pts[j]));
      covered[j] = 1;
      --remaining;
      for (std::size_t k : near[j]) --gain[k];
    }
    out.cover.emplace_back(BallDescriptor{pts[best], radius, true});
    out.value += ball_cost(z, radius);
  }
  return out;
}

// Sweeps a sampled curve with balls of radius delta/2. Each ball must contain
// the first uncovered sample and is placed to reach as far along the curve as
// possible: its centre is gamma(s + sigma) * dilate(h, delta/2) with h a
// horizontal offset in the unit ball, sigma slid forward until the first
// sample is about to leave the ball. Consecutive balls share a sample so the
// arcs between samples are covered as well whenever balls meet the curve in
// intervals.
class CurveSweep {
 public:
  CurveSweep(const MetricSpec& space, const CurveSegment& seg, const SizeFunction& z, double delta,
             const CoverStrategy& strategy)
      : space_(space), seg_(seg), z_(z), delta_(delta), rho_(0.5 * delta), strategy_(strategy) {
    pts_ = seg.sample_points();
    params_.reserve(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) params_.push_back(seg.param(i));
    offset_dims_ = space.is_heisenberg() ? 2 : space.dim;
  }

  CoverEstimate run() {
    CoverEstimate out;
    out.delta = delta_;
    double gap = 0.0;
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) gap = std::max(gap, dist(pts_[i], pts_[i + 1]));
    if (gap > rho_) {
      throw EstimatorError("delta " + std::to_string(delta_) + " is below twice the target sampling gap " +
                           std::to_string(gap));
    }
    std::optional<Point> warm;
    std::size_t i0 = 0;
    for (;;) {
      Point h = place(i0, warm);
      warm = h;
      const Point center = center_for(i0, h, slide(i0, h));
      std::size_t j = i0;
      double radius = 0.0;
      while (j < pts_.size()) {
        const double d = dist(center, pts_[j]);
        if (d > rho_) break;
        radius = std::max(radius, d);
        ++j;
      }
      if (j == i0) throw EstimatorError("ball placement lost the first uncovered sample");
      --j;
      if (j == i0 && i0 + 1 < pts_.size()) {
        throw EstimatorError("delta " + std::to_string(delta_) + " too small for the target sampling resolution");
      }
      const bool last = j + 1 >= pts_.size();
      const std::size_t j_end = last ? pts_.size() - 1 : j;
      // re-centre on the middle of the covered run when that gives a smaller ball
      const Point mid = seg_.curve.at(0.5 * (params_[i0] + params_[j_end]));
      double r = 0.0;
      for (std::size_t k = i0; k <= j_end && r <= rho_; ++k) r = std::max(r, dist(mid, pts_[k]));
      if (r < radius) {
        out.cover.emplace_back(BallDescriptor{mid, r, true});
        out.value += ball_cost(z_, r);
      } else {
        out.cover.emplace_back(BallDescriptor{center, radius, true});
        out.value += ball_cost(z_, radius);
      }
      if (last) break;
      i0 = j;
    }
    out.evaluations = evaluations_;
    return out;
  }

 private:
  double dist(const Point& a, const Point& b) {
    ++evaluations_;
    return distance_unchecked(space_, a, b);
  }
  bool inside(const Point& center, std::size_t i) { return dist(center, pts_[i]) <= rho_; }

  Point offset(const Point& h) const {
    Point u = origin(space_);
    for (std::size_t k = 0; k < offset_dims_; ++k) u.x[k] = h.x[k];
    return u;
  }
  bool admissible(const Point& h) const {
    double s = 0.0;
    for (std::size_t k = 0; k < offset_dims_; ++k) s += h.x[k] * h.x[k];
    return s <= 1.0;
  }

  Point center_for(std::size_t i0, const Point& h, double sigma) const {
    return offset_point(space_, seg_.curve.at(params_[i0] + sigma), offset(h), rho_);
  }

  // Largest forward slide keeping sample i0 in the ball.
  double slide(std::size_t i0, const Point& h) {
    const double cap = seg_.curve.hi() - params_[i0];
    auto keeps = [&](double sigma) { return inside(center_for(i0, h, sigma), i0); };
    double good = 0.0;
    double bad = -1.0;
    for (std::size_t step = 1;; step *= 2) {
      const std::size_t k = i0 + step;
      double sigma = k < params_.size() ? params_[k] - params_[i0] : (params_.back() - params_[i0]) + seg_.spacing() * double(k - params_.size() + 1);
      if (sigma >= cap) {
        if (keeps(cap)) return cap;
        bad = cap;
        break;
      }
      if (!keeps(sigma)) {
        bad = sigma;
        break;
      }
      good = sigma;
    }
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (good + bad);
      (keeps(mid) ? good : bad) = mid;
    }
    return good;
  }

  // Last index of the contiguous run of samples from i0 inside the ball,
  // assuming the ball meets the samples in one run.
  std::size_t run_end(const Point& center, std::size_t i0) {
    if (!inside(center, i0)) return i0;
    std::size_t good = i0;
    std::size_t step = 1;
    while (good + step < pts_.size() && inside(center, good + step)) {
      good += step;
      step *= 2;
    }
    std::size_t bad = std::min(good + step, pts_.size());
    while (bad - good > 1) {
      const std::size_t mid = good + (bad - good) / 2;
      (inside(center, mid) ? good : bad) = mid;
    }
    return good;
  }

  std::size_t score(std::size_t i0, const Point& h) { return run_end(center_for(i0, h, slide(i0, h)), i0); }

  Point place(std::size_t i0, const std::optional<Point>& warm) {
    Point best = origin(space_);
    std::size_t best_score = 0;
    double step = 0.0;
    const std::size_t g = std::max<std::size_t>(strategy_.grid_per_axis, 2);
    if (!warm) {
      std::vector<std::size_t> idx(offset_dims_, 0);
      bool first = true;
      for (;;) {
        Point h = origin(space_);
        for (std::size_t k = 0; k < offset_dims_; ++k) h.x[k] = -1.0 + 2.0 * double(idx[k]) / double(g - 1);
        if (admissible(h)) {
          const std::size_t sc = score(i0, h);
          if (first || sc > best_score) {
            best = h;
            best_score = sc;
            first = false;
          }
        }
        std::size_t k = 0;
        while (k < offset_dims_ && ++idx[k] == g) idx[k++] = 0;
        if (k == offset_dims_) break;
      }
      step = 1.0 / double(g - 1);
    } else {
      best = *warm;
      best_score = score(i0, best);
      step = 0.25 / double(g - 1);
    }
    // coordinate refinement with step halving
    for (std::size_t it = 0; it < strategy_.refine_steps && step > 1e-4; ++it) {
      bool moved = false;
      for (std::size_t k = 0; k < offset_dims_ && !moved; ++k) {
        for (double sign : {1.0, -1.0}) {
          Point h = best;
          h.x[k] += sign * step;
          if (!admissible(h)) continue;
          const std::size_t sc = score(i0, h);
          if (sc > best_score) {
            best = h;
            best_score = sc;
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    return best;
  }

  const MetricSpec& space_;
  const CurveSegment& seg_;
  const SizeFunction& z_;
  double delta_;
  double rho_;
  CoverStrategy strategy_;
  std::vector<Point> pts_;
  std::vector<double> params_;
  std::size_t offset_dims_ = 0;
  std::size_t evaluations_ = 0;
};

}  // namespace detail

inline CoverEstimate zeta_delta_upper(const MetricSpec& space, const SetRep& target, const SizeFunction& z, double delta,
                                      const CoverStrategy& strategy = {}) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!z.parametric()) throw DomainError("ball covers need a parametric size function; use the finite oracle for tables");
  if (std::holds_alternative<BallDescriptor>(target)) throw DomainError("cover targets must be point clouds or curve segments");

  if (const auto* cloud = std::get_if<CloudSet>(&target)) {
    for (const auto& p : cloud->points) check_point(space, p);
    if (strategy.kind == CoverStrategy::Kind::optimized_offset) {
      throw DomainError("the offset strategy needs a curve target");
    }
    if (cloud->points.empty()) return CoverEstimate{0.0, delta};
    return detail::greedy_net_cover(space, cloud->points, z, delta);
  }

  const auto& seg = std::get<CurveSegment>(target);
  seg.validate();
  if (seg.curve.dim() != space.dim || !space.is_homogeneous()) throw DomainError("curve does not live in this space");
  if (strategy.kind == CoverStrategy::Kind::greedy_net) {
    return detail::greedy_net_cover(space, seg.sample_points(), z, delta);
  }
  return detail::CurveSweep(space, seg, z, delta, strategy).run();
}

// Re-checks exact membership of every target sample in some cover element.
inline bool verify_cover(const MetricSpec& space, const SetRep& target, const CoverEstimate& est) {
  std::vector<Point> pts;
  if (const auto* cloud = std::get_if<CloudSet>(&target)) {
    pts = cloud->points;
  } else if (const auto* seg = std::get_if<CurveSegment>(&target)) {
    pts = seg->sample_points();
  } else {
    return false;
  }
  auto contains = [&](const SetRep& e, const Point& p) {
    if (const auto* b = std::get_if<BallDescriptor>(&e)) return ball_contains(space, *b, p);
    if (const auto* c = std::get_if<CloudSet>(&e)) return std::find(c->points.begin(), c->points.end(), p) != c->points.end();
    return false;
  };
  auto within_delta = [&](const SetRep& e) { return set_diameter(space, e).value <= est.delta * (1.0 + 1e-12); };
  for (const auto& e : est.cover)
    if (!within_delta(e)) return false;
  std::size_t hint = 0;
  for (const auto& p : pts) {
    if (hint < est.cover.size() && contains(est.cover[hint], p)) continue;
    bool found = false;
    for (std::size_t k = 0; k < est.cover.size() && !found; ++k) {
      const std::size_t idx = (hint + k) % est.cover.size();
      if (contains(est.cover[idx], p)) {
        hint = idx;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace gmt
