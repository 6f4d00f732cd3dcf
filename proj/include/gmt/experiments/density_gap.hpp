#pragma once

// Centred versus Federer density of the intrinsic measure on a vertical CC
// segment, and the consequence mu_SR(N) > t S^2(N) for t between them.

#include <cmath>

#include "gmt/caratheodory/ladder.hpp"
#include "gmt/density.hpp"
#include "gmt/experiments/area.hpp"
#include "gmt/experiments/report.hpp"
#include "gmt/heisenberg/profile.hpp"

namespace gmt::experiments {

inline Schema density_gap_schema() {
  return {
      {"length", ParamSpec::Kind::number, 1.0, 0.1, 10.0, "t-extent of the vertical segment"},
      {"point", ParamSpec::Kind::number, 0.5, 0.05, 0.95, "x = (0, 0, point * length)"},
      {"epsilon_ladder", ParamSpec::Kind::ladder, Json::array({0.2, 0.1, 0.05}), 1e-3, 1.0, "Federer diameter bounds"},
      {"radius_ladder", ParamSpec::Kind::ladder, Json::array({0.1, 0.05, 0.025}), 1e-3, 1.0, "centred radii"},
      {"center_grid", ParamSpec::Kind::count, 32, 4, 128, "Federer search: center_grid^2 centre offsets"},
      {"radii", ParamSpec::Kind::count, 16, 2, 128, "Federer search: radii per rung"},
      {"refine_steps", ParamSpec::Kind::count, 40, 0, 1000, "Federer search: refinement steps"},
      {"window_nodes", ParamSpec::Kind::count, 64, 8, 4096, "curve nodes per support window"},
      {"s2_delta", ParamSpec::Kind::number, 0.25, 0.05, 2.0, "cover scale for S^2(N)"},
      {"s2_samples", ParamSpec::Kind::count, 100001, 1001, 2000001, "samples of N for the cover"},
      {"tolerance", ParamSpec::Kind::number, 0.03, 0.0, 1.0, "relative tolerance of both densities"},
      {"gap_factor", ParamSpec::Kind::number, 5.0, 1.0, 100.0, "gap must exceed this multiple of the combined uncertainty"},
  };
}

inline Report run_density_gap(const ExperimentConfig& cfg) {
  const Params params(density_gap_schema(), cfg.params);
  Report report("density_gap", cfg, params.json());
  const auto space = MetricSpec::cc();
  const auto z = SizeFunction::spherical(2.0, 0.25);
  const double length = params.number("length");
  const double tol = params.number("tolerance");
  const SearchBudget budget{params.count("center_grid"), params.count("radii"), params.count("refine_steps"),
                            params.count("window_nodes")};

  const auto ab = heisenberg::alpha_beta(heisenberg::unit_ball_profile(heisenberg::BallMetric::cc));
  const Curve axis = Curve::affine(Point::coords({0.0, 0.0, 0.0}), Point::coords({0.0, 0.0, 1.0}));
  const auto mu = MeasureRep::curve(axis, 0.0, length, CurveDensity::heisenberg_vertical);
  const Point x = Point::coords({0.0, 0.0, params.number("point") * length});

  const auto centred = centered_density(space, mu, 2.0, x, params.ladder("radius_ladder"), budget);
  const auto federer = federer_density(space, mu, z, x, params.ladder("epsilon_ladder"), budget);
  const double uc = centred.uncertainty();
  const double uf = federer.uncertainty();

  report.quantity("beta", ab.beta, 0.0, "CC profile axis chord (1/(2 pi) from the axis-distance closed form)");
  report.quantity("alpha", ab.alpha, 0.0, "CC profile longest chord");
  report.quantity("centered_density", centred.extrapolated, uc, "mu(B(x,r))/r^2 at the finest r; trend " + to_string(centred.trend));
  report.quantity("federer_density", federer.extrapolated, uf,
                  "sup over closed balls containing x at the finest epsilon; trend " + to_string(federer.trend));
  auto& table = report.table("rungs", {"estimator", "scale", "value", "ball_radius", "ball_center_t", "evaluations"});
  for (const auto& r : centred.ladder)
    table.rows.push_back({"centered", r.epsilon, r.value, r.argmax.radius, r.argmax.center.x[2], r.evaluations});
  for (const auto& r : federer.ladder)
    table.rows.push_back({"federer", r.epsilon, r.value, r.argmax.radius, r.argmax.center.x[2], r.evaluations});

  report.close("centered_vs_beta", centred.extrapolated, uc, ab.beta, tol);
  report.close("federer_vs_alpha", federer.extrapolated, uf, ab.alpha, tol);
  bool feasible = true;
  for (std::size_t k = 0; k < federer.ladder.size(); ++k) {
    const auto& r = federer.ladder[k];
    feasible = feasible && ball_contains(space, r.argmax, x) && 2.0 * r.argmax.radius < r.epsilon;
  }
  report.check("federer_argmax_feasible", feasible, "every argmax ball contains x and has diameter below its epsilon");
  const double gap = federer.extrapolated - centred.extrapolated;
  const double combined = uc + uf;
  report.quantity("gap", gap, combined, "federer - centered");
  report.greater("gap_exceeds_uncertainty", gap, combined, params.number("gap_factor") * combined, 0.0,
                 "gap > " + io::Json(params.number("gap_factor")).dump() + " x combined uncertainty");
  report.greater("domination", federer.extrapolated + combined, 0.0, centred.extrapolated, 0.0,
                 "federer >= centered - noise: centred balls belong to the search family");

  const double t = 0.5 * (ab.alpha + ab.beta);
  report.quantity("t", t, 0.0, "(alpha + beta) / 2");
  report.greater("t_above_centered", t, uc, centred.extrapolated);
  report.greater("federer_above_t", federer.extrapolated, uf, t);

  // N: the nonhorizontal part of the segment, which is all of it
  const auto spec = detail::vertical_spec(length);
  const auto nonhorizontal = heisenberg::nonhorizontal_set(spec, 1e-6);
  report.check("N_is_whole_segment", nonhorizontal.size() == 1 && nonhorizontal.front().lo == 0.0 &&
                                         nonhorizontal.front().hi == length);
  const double mu_n = heisenberg::intrinsic_measure(spec, 0.0, length);
  const auto target = detail::vertical_segment(0.0, length, params.count("s2_samples"));
  const double s2 = zeta_delta_upper(space, target, z, params.number("s2_delta")).value;
  report.quantity("mu_SR(N)", mu_n, 0.0, "intrinsic measure quadrature");
  report.quantity("S2(N)", s2, 0.0, "ball-cover upper estimate at delta = s2_delta");
  report.greater("mu_exceeds_t_S2", mu_n, 0.0, t * s2, 0.0, "mu_SR(N) > t S^2(N)");
  report.note("consequence: mu_SR(N) > t S^2(N) with t above the centred density, so the centred density alone cannot "
              "bound mu_SR by S^2 with constant 1; the measured factor is alpha/beta = " +
              io::Json(ab.ratio()).dump());
  report.note("density uncertainties are the spread of the two finest rungs");
  return report;
}

}  // namespace gmt::experiments
