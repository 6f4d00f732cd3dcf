#pragma once

// Measures on metric spaces, the quotient Q = mu/zeta, and estimators of the
// Federer density (covering limsup of Q over closed balls containing x) and of
// the centred upper density mu(B(x, r)) / r^alpha.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gmt/caratheodory/size_function.hpp"
#include "gmt/curve.hpp"
#include "gmt/error.hpp"
#include "gmt/heisenberg/curve.hpp"
#include "gmt/metric.hpp"
#include "gmt/sets.hpp"

namespace gmt {

// Density of a curve measure with respect to the curve parameter.
enum class CurveDensity {
  unit,                 // ds
  euclidean_speed,      // |gamma'| ds, arclength in coordinates
  heisenberg_vertical,  // |v| ds, v the T-coefficient of gamma' (intrinsic measure on H^1 curves)
};

inline std::string to_string(CurveDensity d) {
  switch (d) {
    case CurveDensity::unit:
      return "unit";
    case CurveDensity::euclidean_speed:
      return "euclidean_speed";
    case CurveDensity::heisenberg_vertical:
      return "heisenberg_vertical";
  }
  return "?";
}

struct WeightedCloud {
  std::vector<Point> points;
  std::vector<double> weights;
};

struct CurveMeasure {
  Curve curve;
  double a = 0.0;
  double b = 1.0;
  CurveDensity density = CurveDensity::unit;
  // parameter nodes for support scans and quadrature panels
  std::size_t nodes = 2048;

  double density_at(double s) const {
    switch (density) {
      case CurveDensity::unit:
        return 1.0;
      case CurveDensity::euclidean_speed: {
        const Point d = curve.tangent(s);
        double sum = 0.0;
        for (std::size_t i = 0; i < d.dim; ++i) sum += d.x[i] * d.x[i];
        return std::sqrt(sum);
      }
      case CurveDensity::heisenberg_vertical:
        return std::abs(heisenberg::vertical_coefficient(curve, s));
    }
    return 0.0;
  }

  double node(std::size_t i) const {
    if (i + 1 == nodes) return b;
    return a + (b - a) * static_cast<double>(i) / static_cast<double>(nodes - 1);
  }

  // integral of the density over [lo, hi], panels aligned with the nodes
  double mass_between(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    const double panel = (b - a) / static_cast<double>(nodes - 1);
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / panel)));
    double total = 0.0;
    for (std::size_t k = 0; k < pieces; ++k) {
      const double u = lo + (hi - lo) * double(k) / double(pieces);
      const double w = k + 1 == pieces ? hi : lo + (hi - lo) * double(k + 1) / double(pieces);
      total += heisenberg::detail::gauss_legendre([&](double s) { return density_at(s); }, u, w);
    }
    return total;
  }
};

class MeasureRep {
 public:
  using Variant = std::variant<WeightedCloud, CurveMeasure>;

  static MeasureRep weighted_cloud(std::vector<Point> points, std::vector<double> weights) {
    if (points.size() != weights.size()) throw DomainError("weighted cloud needs one weight per point");
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("weights must be finite and nonnegative");
      total += w;
    }
    return MeasureRep(WeightedCloud{std::move(points), std::move(weights)}, total);
  }

  static MeasureRep curve(Curve curve, double a, double b, CurveDensity density, std::size_t nodes = 2048) {
    if (!(b > a)) throw DomainError("curve measure interval is degenerate");
    if (a < curve.lo() || b > curve.hi()) throw DomainError("curve measure exceeds the curve's parameter range");
    if (nodes < 2) throw DomainError("curve measure needs at least two nodes");
    CurveMeasure m{std::move(curve), a, b, density, nodes};
    const double total = m.mass_between(a, b);
    return MeasureRep(std::move(m), total);
  }

  const Variant& data() const { return data_; }
  double total_mass() const { return total_mass_; }
  const CurveMeasure* as_curve() const { return std::get_if<CurveMeasure>(&data_); }
  const WeightedCloud* as_cloud() const { return std::get_if<WeightedCloud>(&data_); }

 private:
  MeasureRep(Variant data, double total) : data_(std::move(data)), total_mass_(total) {}
  Variant data_;
  double total_mass_ = 0.0;
};

// Q(S) for given mu(S) and zeta(S).
inline double quotient(double mass, double size) {
  if (size == 0.0) return kInf;
  if (size == kInf) return 0.0;
  return mass / size;
}

struct ParamWindow {
  double lo = 0.0;
  double hi = 0.0;
};

namespace detail {

inline std::vector<double> window_nodes(const ParamWindow& w, std::size_t count, std::optional<double> anchor) {
  std::vector<double> s;
  s.reserve(count + 1);
  for (std::size_t k = 0; k < count; ++k) {
    s.push_back(k + 1 == count ? w.hi : w.lo + (w.hi - w.lo) * double(k) / double(count - 1));
  }
  if (anchor && *anchor > w.lo && *anchor < w.hi) {
    s.insert(std::upper_bound(s.begin(), s.end(), *anchor), *anchor);
  }
  return s;
}

// Parameter intervals of the curve inside a predicate region, scanning `nodes`
// and bisecting each run end against its outside neighbour.
template <class Inside>
std::vector<ParamWindow> inside_runs(const std::vector<double>& s, const Inside& inside) {
  std::vector<char> in(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) in[i] = inside(s[i]) ? 1 : 0;
  auto edge = [&](double a, double b) {  // a inside, b outside
    for (int it = 0; it < 44; ++it) {
      const double mid = 0.5 * (a + b);
      (inside(mid) ? a : b) = mid;
    }
    return a;
  };
  std::vector<ParamWindow> runs;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!in[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < s.size() && in[j + 1]) ++j;
    const double lo = i == 0 ? s[0] : edge(s[i], s[i - 1]);
    const double hi = j + 1 == s.size() ? s[j] : edge(s[j], s[j + 1]);
    runs.push_back({lo, hi});
    i = j + 1;
  }
  return runs;
}

}  // namespace detail

// Parameter of the curve point x (coordinate match); throws if x is not on the curve.
inline double locate_on_curve(const CurveMeasure& m, const Point& x) {
  auto coord_dist = [&](double s) {
    const Point p = m.curve.at(s);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.dim; ++i) sum += (p.x[i] - x.x[i]) * (p.x[i] - x.x[i]);
    return std::sqrt(sum);
  };
  std::size_t best = 0;
  double best_d = kInf;
  for (std::size_t i = 0; i < m.nodes; ++i) {
    const double d = coord_dist(m.node(i));
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  double lo = m.node(best == 0 ? 0 : best - 1);
  double hi = m.node(std::min(best + 1, m.nodes - 1));
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (coord_dist(a) <= coord_dist(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  const double s = 0.5 * (lo + hi);
  double scale = 1.0;
  for (std::size_t i = 0; i < x.dim; ++i) scale = std::max(scale, std::abs(x.x[i]));
  if (coord_dist(s) > 1e-9 * scale) throw DomainError("point is outside the support of the curve measure");
  return s;
}

// Parameter windows of the curve within closed distance R of x.
inline std::vector<ParamWindow> support_windows(const MetricSpec& space, const CurveMeasure& m, const Point& x, double R,
                                                std::optional<double> anchor = {}) {
  std::vector<double> s;
  for (std::size_t i = 0; i < m.nodes; ++i) s.push_back(m.node(i));
  if (anchor && *anchor > m.a && *anchor < m.b) s.insert(std::upper_bound(s.begin(), s.end(), *anchor), *anchor);
  return detail::inside_runs(s, [&](double u) { return distance_unchecked(space, x, m.curve.at(u)) <= R; });
}

struct MassOptions {
  std::size_t window_nodes = 64;
};

// mu(ball). For curve measures the ball is intersected with the curve inside
// `windows` (default: the whole parameter range) and the runs are integrated;
// `anchor` is a parameter known to lie in the ball.
inline double ball_mass(const MetricSpec& space, const MeasureRep& mu, const BallDescriptor& ball,
                        const std::vector<ParamWindow>* windows = nullptr, std::optional<double> anchor = {},
                        const MassOptions& opts = {}, std::size_t* evaluations = nullptr) {
  auto inside = [&](const Point& p) {
    if (evaluations) ++*evaluations;
    const double d = distance_unchecked(space, ball.center, p);
    return ball.closed ? d <= ball.radius : d < ball.radius;
  };
  if (const auto* cloud = mu.as_cloud()) {
    double total = 0.0;
    for (std::size_t i = 0; i < cloud->points.size(); ++i)
      if (cloud->weights[i] > 0.0 && inside(cloud->points[i])) total += cloud->weights[i];
    return total;
  }
  const auto& m = *mu.as_curve();
  std::vector<ParamWindow> all{{m.a, m.b}};
  const auto& ws = windows ? *windows : all;
  const std::size_t count = windows ? opts.window_nodes : m.nodes;
  double total = 0.0;
  for (const auto& w : ws) {
    const auto nodes = detail::window_nodes(w, std::max<std::size_t>(count, 2), anchor);
    for (const auto& run : detail::inside_runs(nodes, [&](double s) { return inside(m.curve.at(s)); })) {
      total += m.mass_between(run.lo, run.hi);
    }
  }
  return total;
}

// mu(S) for balls, and for finite sets under atomic measures.
inline double measure_of(const MetricSpec& space, const MeasureRep& mu, const SetRep& s) {
  if (const auto* ball = std::get_if<BallDescriptor>(&s)) {
    check_point(space, ball->center);
    return ball_mass(space, mu, *ball);
  }
  if (const auto* set = std::get_if<CloudSet>(&s)) {
    if (const auto* cloud = mu.as_cloud()) {
      double total = 0.0;
      for (std::size_t i = 0; i < cloud->points.size(); ++i)
        if (std::find(set->points.begin(), set->points.end(), cloud->points[i]) != set->points.end()) total += cloud->weights[i];
      return total;
    }
    return 0.0;  // finite sets carry no curve measure
  }
  throw DomainError("measure of a curve segment set is not supported");
}

inline double quotient(const MeasureRep& mu, const SizeFunction& z, const MetricSpec& space, const SetRep& s) {
  return quotient(measure_of(space, mu, s), size_value(z, space, s));
}

enum class Trend { stable, increasing, decreasing, noisy };

inline std::string to_string(Trend t) {
  switch (t) {
    case Trend::stable:
      return "stable";
    case Trend::increasing:
      return "increasing";
    case Trend::decreasing:
      return "decreasing";
    case Trend::noisy:
      return "noisy";
  }
  return "?";
}

struct DensityRung {
  double epsilon = 0.0;  // rung scale: diameter bound (Federer) or radius (centred)
  double value = 0.0;
  BallDescriptor argmax;
  std::size_t evaluations = 0;
};

struct DensityEstimate {
  std::vector<DensityRung> ladder;
  double extrapolated = 0.0;  // finest-rung value
  Trend trend = Trend::stable;

  // spread of the two finest rungs, used as the estimator's noise level
  double uncertainty() const {
    if (ladder.size() < 2) return 0.0;
    const double a = ladder[ladder.size() - 1].value;
    const double b = ladder[ladder.size() - 2].value;
    if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
    return std::abs(a - b);
  }
};

// Values listed from the coarsest to the finest rung. Relative changes within
// `tolerance` count as flat.
inline Trend classify_trend(const std::vector<double>& values, double tolerance = 0.02) {
  bool up = false;
  bool down = false;
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double a = values[k - 1];
    const double b = values[k];
    if (a == b) continue;
    if (std::isinf(b) && !std::isinf(a)) {
      up = true;
      continue;
    }
    const double scale = std::max(std::abs(a), std::abs(b));
    if (std::abs(b - a) <= tolerance * scale) continue;
    (b > a ? up : down) = true;
  }
  if (up && down) return Trend::noisy;
  if (up) return Trend::increasing;
  if (down) return Trend::decreasing;
  return Trend::stable;
}

struct SearchBudget {
  // center grid: center_grid^2 points, spread over the dimensions of the space
  std::size_t center_grid = 32;
  std::size_t radii = 16;
  std::size_t refine_steps = 40;
  std::size_t window_nodes = 64;
  double trend_tolerance = 0.02;
};

namespace detail {

inline std::size_t grid_per_axis(const SearchBudget& budget, std::size_t dim) {
  const double total = double(budget.center_grid) * double(budget.center_grid);
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(std::pow(total, 1.0 / double(dim)))));
}

// lexicographic ball encoding (radius, center coordinates) for tie-breaks
inline bool lex_less(const BallDescriptor& a, const BallDescriptor& b) {
  if (a.radius != b.radius) return a.radius < b.radius;
  for (std::size_t i = 0; i < a.center.dim; ++i)
    if (a.center.x[i] != b.center.x[i]) return a.center.x[i] < b.center.x[i];
  return false;
}

struct RungContext {
  const MetricSpec& space;
  const MeasureRep& mu;
  const SizeFunction& z;
  const Point& x;
  std::optional<double> anchor;
  std::vector<ParamWindow> windows;
  MassOptions mass_opts;
  std::size_t evaluations = 0;

  double mass(const BallDescriptor& ball) {
    return ball_mass(space, mu, ball, mu.as_curve() ? &windows : nullptr, anchor, mass_opts, &evaluations);
  }
};

}  // namespace detail

inline void check_measure_point(const MetricSpec& space, const MeasureRep& mu, const Point& x) {
  check_point(space, x);
  if (!space.is_homogeneous()) throw DomainError("density estimators need a homogeneous space");
  if (const auto* c = mu.as_cloud()) {
    for (const auto& p : c->points) check_point(space, p);
  } else if (mu.as_curve()->curve.dim() != space.dim) {
    throw DomainError("curve measure does not live in this space");
  }
}

// Federer density estimate: for each epsilon, the sup of Q over closed balls
// B(y, r) containing x with 2r < epsilon, by a grid over centres
// y = x * dilate(u, r), u in the unit ball, and radii, then coordinate-descent
// refinement. The finest rung is reported together with a trend label.
inline DensityEstimate federer_density(const MetricSpec& space, const MeasureRep& mu, const SizeFunction& z,
                                       const Point& x, const std::vector<double>& epsilon_ladder,
                                       const SearchBudget& budget = {}) {
  if (!z.parametric()) throw DomainError("Federer density needs a parametric size function");
  check_measure_point(space, mu, x);
  for (std::size_t k = 0; k < epsilon_ladder.size(); ++k) {
    if (!(epsilon_ladder[k] > 0.0) || (k > 0 && !(epsilon_ladder[k] < epsilon_ladder[k - 1]))) {
      throw DomainError("epsilon ladder must be positive and strictly decreasing");
    }
  }
  if (epsilon_ladder.empty() || budget.radii == 0 || budget.center_grid < 2) throw DomainError("empty search budget");

  std::optional<double> anchor;
  if (const auto* c = mu.as_curve()) anchor = locate_on_curve(*c, x);

  const std::size_t dim = space.dim;
  const std::size_t per_axis = detail::grid_per_axis(budget, dim);
  const auto box = unit_ball_box(space);
  const Point zero = origin(space);
  std::vector<Point> offsets;
  {
    std::vector<std::size_t> idx(dim, 0);
    for (;;) {
      Point u = zero;
      for (std::size_t k = 0; k < dim; ++k) u.x[k] = -box[k] + 2.0 * box[k] * double(idx[k]) / double(per_axis - 1);
      if (distance_unchecked(space, zero, u) <= 1.0) offsets.push_back(u);
      std::size_t k = 0;
      while (k < dim && ++idx[k] == per_axis) idx[k++] = 0;
      if (k == dim) break;
    }
  }

  DensityEstimate out;
  std::vector<double> values;
  for (double eps : epsilon_ladder) {
    detail::RungContext ctx{space, mu, z, x, anchor, {}, {budget.window_nodes}};
    if (const auto* c = mu.as_curve()) ctx.windows = support_windows(space, *c, x, eps, anchor);
    const double r_max = 0.5 * eps * (1.0 - 1e-9);

    bool found = false;
    double best_q = -1.0;
    BallDescriptor best_ball;
    Point best_u = zero;
    auto consider = [&](const Point& u, double r) {
      const BallDescriptor ball{offset_point(space, x, u, r), r, true};
      const double size = z.of_diameter(2.0 * r);
      const double m = ctx.mass(ball);
      if (m == 0.0 && size == 0.0) return false;
      const double q = quotient(m, size);
      if (!found || q > best_q || (q == best_q && detail::lex_less(ball, best_ball))) {
        const bool improved = !found || q > best_q;
        found = true;
        best_q = q;
        best_ball = ball;
        best_u = u;
        return improved;
      }
      return false;
    };
    for (std::size_t j = 0; j < budget.radii; ++j) {
      const double r = r_max * double(j + 1) / double(budget.radii);
      for (const auto& u : offsets) consider(u, r);
    }
    if (!found) throw EstimatorError("no admissible ball found at epsilon " + std::to_string(eps));

    // coordinate descent over (u, r)
    std::array<double, kMaxDim + 1> step{};
    for (std::size_t k = 0; k < dim; ++k) step[k] = 2.0 * box[k] / double(per_axis - 1);
    step[dim] = r_max / double(budget.radii);
    for (std::size_t it = 0; it < budget.refine_steps; ++it) {
      bool moved = false;
      for (std::size_t k = 0; k <= dim && !moved; ++k) {
        for (double sign : {1.0, -1.0}) {
          Point u = best_u;
          double r = best_ball.radius;
          if (k < dim) {
            u.x[k] += sign * step[k];
            if (distance_unchecked(space, zero, u) > 1.0) continue;
          } else {
            r += sign * step[k];
            if (!(r > 0.0) || r > r_max) continue;
          }
          if (consider(u, r)) {
            moved = true;
            break;
          }
        }
      }
      if (!moved)
        for (auto& s : step) s *= 0.5;
    }
    out.ladder.push_back({eps, best_q, best_ball, ctx.evaluations});
    values.push_back(best_q);
  }
  out.extrapolated = values.back();
  out.trend = classify_trend(values, budget.trend_tolerance);
  return out;
}

// mu(B(x, r)) / r^alpha over a decreasing radius ladder.
inline DensityEstimate centered_density(const MetricSpec& space, const MeasureRep& mu, double alpha, const Point& x,
                                        const std::vector<double>& radius_ladder, const SearchBudget& budget = {}) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  check_measure_point(space, mu, x);
  for (std::size_t k = 0; k < radius_ladder.size(); ++k) {
    if (!(radius_ladder[k] > 0.0) || (k > 0 && !(radius_ladder[k] < radius_ladder[k - 1]))) {
      throw DomainError("radius ladder must be positive and strictly decreasing");
    }
  }
  if (radius_ladder.empty()) throw DomainError("radius ladder is empty");
  std::optional<double> anchor;
  if (const auto* c = mu.as_curve()) anchor = locate_on_curve(*c, x);
  DensityEstimate out;
  std::vector<double> values;
  for (double r : radius_ladder) {
    std::vector<ParamWindow> windows;
    if (const auto* c = mu.as_curve()) windows = support_windows(space, *c, x, r, anchor);
    const BallDescriptor ball{x, r, true};
    std::size_t evals = 0;
    const double m = ball_mass(space, mu, ball, mu.as_curve() ? &windows : nullptr, anchor, {budget.window_nodes}, &evals);
    const double v = m / std::pow(r, alpha);
    out.ladder.push_back({r, v, ball, evals});
    values.push_back(v);
  }
  out.extrapolated = values.back();
  out.trend = classify_trend(values, budget.trend_tolerance);
  return out;
}

}  // namespace gmt
