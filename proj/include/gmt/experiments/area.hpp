#pragma once

// Area-formula experiments: the Euclidean segment, spherical measure of
// vertical segments in H^1, and the sigma_2 limit chain for the Koranyi metric.

#include <cmath>
#include <numbers>

#include "gmt/caratheodory/ladder.hpp"
#include "gmt/density.hpp"
#include "gmt/experiments/report.hpp"
#include "gmt/heisenberg/curve.hpp"
#include "gmt/heisenberg/profile.hpp"

namespace gmt::experiments {

namespace detail {

// Vertical segment {(0, 0, s) : s in [lo, hi]} sampled with n points.
inline CurveSegment vertical_segment(double lo, double hi, std::size_t n) {
  return {Curve::affine(Point::coords({0.0, 0.0, 0.0}), Point::coords({0.0, 0.0, 1.0})), lo, hi, n};
}

inline heisenberg::CurveSpec vertical_spec(double length, std::size_t nodes = 65) {
  return heisenberg::make_curve_spec([](double s) { return heisenberg::HPoint{0.0, 0.0, s}; },
                                     [](double) { return heisenberg::Vec3{0.0, 0.0, 1.0}; }, 0.0, length, nodes);
}

// Spread of the two finest rungs.
inline double ladder_spread(const MeasureLadder& l) {
  const auto& e = l.entries;
  if (e.size() < 2) return 0.0;
  return std::abs(e[e.size() - 1].estimate.value - e[e.size() - 2].estimate.value);
}

inline void ladder_rows(Table& t, const std::string& tag, const MeasureLadder& l, double scale) {
  for (const auto& e : l.entries) {
    t.rows.push_back({tag, e.delta, e.estimate.value, e.estimate.cover.size(), scale * e.estimate.value});
  }
}

inline std::string doubling_note(double alpha) {
  return "doubling condition for c diam^alpha on closed balls: every closed ball T meeting B(x, r) with diam T <= 4r lies "
         "in B(x, 5r), so c = 5 and eta = 5^alpha = " +
         io::Json(std::pow(5.0, alpha)).dump() + " (symbolic, using diam B(x, r) = 2r)";
}

}  // namespace detail

inline Schema euclidean_area_schema() {
  return {
      {"samples", ParamSpec::Kind::count, 4001, 101, 1000001, "samples of the unit segment"},
      {"delta_ladder", ParamSpec::Kind::ladder, Json::array({0.5, 0.25, 0.125}), 1e-4, 10.0, "cover scales for H^1"},
      {"epsilon_ladder", ParamSpec::Kind::ladder, Json::array({0.1, 0.05, 0.025}), 1e-4, 1.0, "density scales"},
      {"pieces", ParamSpec::Kind::count, 2, 1, 16, "midpoint-rule pieces per sub-segment in the integral"},
      {"center_grid", ParamSpec::Kind::count, 32, 4, 128, "density search: center_grid^2 centre offsets"},
      {"radii", ParamSpec::Kind::count, 16, 2, 128, "density search: radii per rung"},
      {"refine_steps", ParamSpec::Kind::count, 40, 0, 1000, "density search: refinement steps"},
      {"tolerance", ParamSpec::Kind::number, 0.02, 0.0, 1.0, "relative tolerance for H^1 and the integrals"},
  };
}

inline Report run_euclidean_area(const ExperimentConfig& cfg) {
  const Params params(euclidean_area_schema(), cfg.params);
  Report report("euclidean_area", cfg, params.json());
  const auto space = MetricSpec::euclidean(2);
  const auto z = SizeFunction::hausdorff(1.0, 1.0);
  const double tol = params.number("tolerance");
  const auto n = params.count("samples");
  const auto deltas = params.ladder("delta_ladder");
  const auto eps = params.ladder("epsilon_ladder");
  const SearchBudget budget{params.count("center_grid"), params.count("radii"), params.count("refine_steps")};
  const Curve line = Curve::affine(Point::coords({0.0, 0.0}), Point::coords({0.6, 0.8}));
  const auto mu = MeasureRep::curve(line, 0.0, 1.0, CurveDensity::euclidean_speed);

  auto& ladder_table = report.table("hausdorff_ladder", {"set", "delta", "estimate", "cover_size", "scaled"});
  const auto full = approx_measure_ladder(space, CurveSegment{line, 0.0, 1.0, n}, z, deltas);
  detail::ladder_rows(ladder_table, "full", full, 1.0);
  report.quantity("H1(segment)", full.extrapolated, detail::ladder_spread(full), "ball covers of the sampled segment");
  report.close("H1_unit_segment", full.extrapolated, detail::ladder_spread(full), 1.0, tol, true, "analytic length 1");
  report.check("H1_ladder_monotone", full.monotone_ok);

  auto& integral_table = report.table("integrals", {"lo", "hi", "mu", "integral", "uncertainty"});
  const std::size_t pieces = params.count("pieces");
  const std::vector<std::pair<double, double>> subsets{{0.0, 1.0}, {0.0, 0.5}, {0.5, 1.0}, {0.2, 0.45}, {0.1, 0.9}};
  for (const auto& [lo, hi] : subsets) {
    double integral = 0.0;
    double unc = 0.0;
    for (std::size_t k = 0; k < pieces; ++k) {
      const double a = lo + (hi - lo) * double(k) / double(pieces);
      const double b = lo + (hi - lo) * double(k + 1) / double(pieces);
      const auto samples = std::max<std::size_t>(101, static_cast<std::size_t>(double(n) * (b - a)));
      const auto psi = approx_measure_ladder(space, CurveSegment{line, a, b, samples}, z, deltas);
      const auto f = federer_density(space, mu, z, line.at(0.5 * (a + b)), eps, budget);
      integral += f.extrapolated * psi.extrapolated;
      unc += f.uncertainty() * psi.extrapolated + f.extrapolated * detail::ladder_spread(psi);
    }
    const double mass = mu.as_curve()->mass_between(lo, hi);
    const std::string tag = "B=[" + io::Json(lo).dump() + "," + io::Json(hi).dump() + "]";
    report.quantity(tag + ".integral", integral, unc, "midpoint rule: Federer density estimate x H^1 ladder per piece");
    report.quantity(tag + ".mu", mass, 0.0, "arclength quadrature");
    report.close(tag + ".area_formula", integral, unc, mass, tol);
    integral_table.rows.push_back({lo, hi, mass, integral, unc});
  }
  report.check("B=empty.area_formula", approx_measure_ladder(space, CloudSet{}, z, deltas).extrapolated == 0.0,
               "empty set: mu = 0 and the integral over it is 0");
  report.note(detail::doubling_note(1.0));
  report.note("densities are searched over closed balls; on a straight segment no closed set does better than a ball");
  return report;
}

inline Schema spherical_area_schema() {
  return {
      {"length", ParamSpec::Kind::number, 1.0, 0.01, 10.0, "t-extent L of the vertical segment"},
      {"samples", ParamSpec::Kind::count, 100001, 1001, 2000001, "samples of the segment"},
      {"delta_ladder", ParamSpec::Kind::ladder, Json::array({0.5, 0.25, 0.125}), 1e-3, 10.0, "cover scales"},
      {"radial_steps", ParamSpec::Kind::count, 64, 64, 8192, "profile radial samples"},
      {"parameter_steps", ParamSpec::Kind::count, 256, 256, 65536, "profile geodesic-family samples"},
      {"tolerance", ParamSpec::Kind::number, 0.05, 0.0, 1.0, "relative tolerance |mu - alpha S^2| / mu"},
  };
}

inline Report run_spherical_area(const ExperimentConfig& cfg, heisenberg::BallMetric metric) {
  const Params params(spherical_area_schema(), cfg.params);
  const bool cc = metric == heisenberg::BallMetric::cc;
  Report report(cc ? "spherical_area_cc" : "spherical_area_koranyi", cfg, params.json());
  const auto space = cc ? MetricSpec::cc() : MetricSpec::koranyi();
  const auto z = SizeFunction::spherical(2.0, 0.25);
  const double length = params.number("length");
  const double tol = params.number("tolerance");

  const auto ab = heisenberg::alpha_beta(
      heisenberg::unit_ball_profile(metric, {params.count("radial_steps"), params.count("parameter_steps")}));
  const auto spec = detail::vertical_spec(length);
  const double mu = heisenberg::intrinsic_measure(spec, 0.0, length);
  const auto target = detail::vertical_segment(0.0, length, params.count("samples"));
  const auto ladder = approx_measure_ladder(space, target, z, params.ladder("delta_ladder"));
  const double s2 = ladder.extrapolated;
  const double spread = detail::ladder_spread(ladder);

  report.quantity("alpha", ab.alpha, 0.0, to_string(metric) + " unit-ball profile, longest vertical chord");
  report.quantity("mu_SR", mu, 0.0, "intrinsic measure, Gauss-Legendre quadrature of |v|");
  report.quantity("S2", s2, spread, "optimized-offset ball cover at the finest delta; uncertainty = finest-rung spread");
  report.quantity("alpha*S2", ab.alpha * s2, ab.alpha * spread, "product of the two rows above");
  auto& table = report.table("ladder", {"set", "delta", "S2", "cover_size", "alpha*S2"});
  detail::ladder_rows(table, "segment", ladder, ab.alpha);

  report.close("area_formula", ab.alpha * s2, ab.alpha * spread, mu, tol, true, "mu_SR = alpha S^2 on the segment");
  report.check("ladder_monotone", ladder.monotone_ok);
  report.check("finest_cover_verified", verify_cover(space, target, ladder.entries.back().estimate));

  const CloudSet point{{Point::coords({0.0, 0.0, 0.5 * length})}};
  const double s2_point = zeta_delta_upper(space, point, z, params.ladder("delta_ladder").back()).value;
  const double mu_point = heisenberg::intrinsic_measure(spec, 0.5 * length, 0.5 * length);
  report.check("zero_length_curve", s2_point == 0.0 && mu_point == 0.0, "a single point: S^2 = 0 and mu_SR = 0");
  report.note(detail::doubling_note(2.0));
  report.note("size function diam^2 / 4 on closed balls; alpha for this metric is derived from the profile");
  return report;
}

inline Schema sigma2_chain_schema() {
  return {
      {"radii", ParamSpec::Kind::ladder, Json::array({0.2, 0.1, 0.05}), 1e-3, 1.0, "ball radii r"},
      {"center", ParamSpec::Kind::number, 0.5, 0.1, 0.9, "t of the interior point x on the segment [0, 1]"},
      {"delta_fractions", ParamSpec::Kind::ladder, Json::array({0.5, 0.25, 0.125}), 0.01, 2.0, "cover scales as fractions of r"},
      {"samples", ParamSpec::Kind::count, 20001, 1001, 1000001, "samples of each B(x, r) piece of the segment"},
      {"tolerance", ParamSpec::Kind::number, 0.05, 0.0, 1.0, "relative tolerance of the ratio limit"},
  };
}

inline Report run_sigma2_chain(const ExperimentConfig& cfg) {
  const Params params(sigma2_chain_schema(), cfg.params);
  Report report("sigma2_chain", cfg, params.json());
  const auto space = MetricSpec::koranyi();
  const auto z = SizeFunction::spherical(2.0, 0.25);
  const double tol = params.number("tolerance");
  const double x_t = params.number("center");
  const auto n = params.count("samples");

  // B(x, r) meets the vertical line in t-extent r^2 times the axis chord of the unit ball
  const auto profile = heisenberg::unit_ball_profile(heisenberg::BallMetric::koranyi);
  const auto axis = profile.chords_at(0.0).front();

  auto ratio = [&](double t0, double r, Table& table, const std::string& tag) {
    const double lo = std::max(0.0, t0 + r * r * axis.lo);
    const double hi = std::min(1.0, t0 + r * r * axis.hi);
    std::vector<double> deltas;
    for (double f : params.ladder("delta_fractions")) deltas.push_back(f * r);
    const auto ladder = approx_measure_ladder(space, detail::vertical_segment(lo, hi, n), z, deltas);
    detail::ladder_rows(table, tag + " r=" + io::Json(r).dump(), ladder, 1.0 / (r * r));
    return std::pair{ladder.extrapolated / (r * r), detail::ladder_spread(ladder) / (r * r)};
  };

  auto& table = report.table("ladder", {"set", "delta", "S2", "cover_size", "S2/r^2"});
  double interior = 0.0;
  double interior_unc = 0.0;
  for (double r : params.ladder("radii")) {
    std::tie(interior, interior_unc) = ratio(x_t, r, table, "interior");
    report.quantity("interior.r=" + io::Json(r).dump(), interior, interior_unc, "S^2_d of B(x, r) on the segment over r^2");
  }
  const double r_fine = params.ladder("radii").back();
  const auto [endpoint, endpoint_unc] = ratio(0.0, r_fine, table, "endpoint");
  report.quantity("endpoint.r=" + io::Json(r_fine).dump(), endpoint, endpoint_unc, "x at the lower endpoint of the segment");

  report.close("interior_ratio_limit", interior, interior_unc, 1.0, tol, true, "limit of S^2_d(B(x,r))/r^2 at the finest r");
  const double half = 0.5 * interior;
  report.quantity("half_limit_measured", half, 0.5 * interior_unc, "measured limit / 2");
  report.quantity("sigma2_lower_bound", 0.5, 0.0, "arithmetic: 1/2 = (right-end limit 1) / 2");
  report.close("derived_bound", half, 0.5 * interior_unc, 0.5, tol, true, "measured limit / 2 against 1/2");
  report.close("endpoint_ratio", endpoint / interior, (endpoint_unc + interior_unc) / interior, 0.5, tol, true,
               "one-sided mass at the endpoint");
  report.note("the comparison S^2_d <= 2 H^2 on the segment is taken as given; only the displayed limits are computed");
  report.note("open balls B(x, r) meet the segment in an open interval; its closure is covered, with the same measure");
  return report;
}

}  // namespace gmt::experiments
