#pragma once

// Experiments on the metrics themselves: sampled metric axioms, the CC axis
// constant against the shooting oracle, and the vertical-chord ratio.

#include <cmath>
#include <numbers>
#include <random>

#include "gmt/experiments/report.hpp"
#include "gmt/heisenberg/profile.hpp"
#include "gmt/metric.hpp"
#include "gmt/oracle/ode_shooting.hpp"

namespace gmt::experiments {

inline Schema metric_axioms_schema() {
  return {
      {"samples", ParamSpec::Kind::count, 1000, 10, 100000, "sampled configurations per metric"},
      {"coordinate_range", ParamSpec::Kind::number, 1.0, 0.01, 100.0, "coordinates drawn uniformly from [-R, R]"},
      {"cc_tolerance", ParamSpec::Kind::number, 1e-8, 1e-12, 1e-4, "relative tolerance of the CC distance solve"},
      {"exact_tolerance", ParamSpec::Kind::number, 1e-9, 0.0, 1e-3, "allowed defect for Euclidean and Koranyi"},
      {"cc_factor", ParamSpec::Kind::number, 10.0, 1.0, 1e6, "allowed CC defect in units of the solver tolerance"},
  };
}

namespace detail {

struct AxiomDefects {
  double triangle = 0.0;
  double symmetry = 0.0;
  double invariance = 0.0;
  double homogeneity = 0.0;
};

inline Point translate(const MetricSpec& space, const Point& g, const Point& p) {
  if (space.is_heisenberg()) return Point::of(heisenberg::multiply(g.h(), p.h()));
  Point out = p;
  for (std::size_t i = 0; i < p.dim; ++i) out.x[i] += g.x[i];
  return out;
}

inline Point dilate(const MetricSpec& space, const Point& p, double lambda) {
  if (space.is_heisenberg()) return Point::of(heisenberg::dilate(p.h(), lambda));
  Point out = p;
  for (std::size_t i = 0; i < p.dim; ++i) out.x[i] *= lambda;
  return out;
}

// Defects are divided by max(1, distance scale) so that the CC solver's
// relative tolerance and the exact metrics are compared on the same footing.
inline AxiomDefects sample_axioms(const MetricSpec& space, std::size_t samples, double range, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-range, range);
  auto draw = [&] {
    Point p = origin(space);
    for (std::size_t i = 0; i < space.dim; ++i) p.x[i] = coord(rng);
    return p;
  };
  AxiomDefects out;
  for (std::size_t k = 0; k < samples; ++k) {
    const Point p = draw();
    const Point q = draw();
    const Point r = draw();
    const Point g = draw();
    const double pq = distance(space, p, q);
    const double qr = distance(space, q, r);
    const double pr = distance(space, p, r);
    out.triangle = std::max(out.triangle, (pr - pq - qr) / std::max(1.0, pr));
    out.symmetry = std::max(out.symmetry, std::abs(distance(space, q, p) - pq) / std::max(1.0, pq));
    const double moved = distance(space, translate(space, g, p), translate(space, g, q));
    out.invariance = std::max(out.invariance, std::abs(moved - pq) / std::max(1.0, pq));
    for (double lambda : {0.5, 1.0, 2.0}) {
      const double scaled = distance(space, dilate(space, p, lambda), dilate(space, q, lambda));
      out.homogeneity = std::max(out.homogeneity, std::abs(scaled - lambda * pq) / std::max(1.0, lambda * pq));
    }
  }
  return out;
}

}  // namespace detail

inline Report run_metric_axioms(const ExperimentConfig& cfg) {
  const Params params(metric_axioms_schema(), cfg.params);
  Report report("metric_axioms", cfg, params.json());
  const auto n = params.count("samples");
  const double range = params.number("coordinate_range");
  const double cc_tol = params.number("cc_tolerance");
  std::mt19937_64 rng(cfg.seed);
  auto& table = report.table("defects", {"space", "triangle", "symmetry", "invariance", "homogeneity", "allowed"});
  for (const auto& space : {MetricSpec::euclidean(2), MetricSpec::euclidean(3), MetricSpec::koranyi(), MetricSpec::cc(cc_tol)}) {
    const auto d = detail::sample_axioms(space, n, range, rng);
    const double allowed =
        space.kind == SpaceKind::cc_heisenberg ? params.number("cc_factor") * cc_tol : params.number("exact_tolerance");
    const std::string name = space.name();
    const std::string prov = "metric-core distance on " + std::to_string(n) + " seeded random configurations";
    report.quantity(name + ".triangle_defect", d.triangle, 0.0, prov);
    report.quantity(name + ".symmetry_defect", d.symmetry, 0.0, prov);
    report.quantity(name + ".invariance_defect", d.invariance, 0.0, prov + ", translations by a random group element");
    report.quantity(name + ".homogeneity_defect", d.homogeneity, 0.0, prov + ", lambda in {0.5, 1, 2}");
    report.at_most(name + ".triangle", d.triangle, 0.0, allowed);
    report.at_most(name + ".symmetry", d.symmetry, 0.0, allowed);
    report.at_most(name + ".left_invariance", d.invariance, 0.0, allowed);
    report.at_most(name + ".homogeneity", d.homogeneity, 0.0, allowed);
    table.rows.push_back({name, d.triangle, d.symmetry, d.invariance, d.homogeneity, allowed});
  }
  report.note("defects are relative to max(1, distance); Euclidean invariance uses translations, Heisenberg uses left multiplication");
  return report;
}

inline Schema cc_axis_schema() {
  return {
      {"taus", ParamSpec::Kind::ladder, Json::array({1.0, 0.1, 0.01}), 1e-6, 1e3, "axis heights t of the test points (0,0,t)"},
      {"tolerance", ParamSpec::Kind::number, 1e-4, 0.0, 1.0, "relative agreement of solver, shooting and closed form"},
      {"beta_tolerance", ParamSpec::Kind::number, 1e-3, 0.0, 1.0, "relative tolerance on beta = 1/(2 pi)"},
      {"cc_tolerance", ParamSpec::Kind::number, 1e-8, 1e-12, 1e-4, "relative tolerance of the CC distance solve"},
      {"shooting_steps", ParamSpec::Kind::count, 400, 50, 100000, "RK4 steps of the shooting oracle"},
      {"radial_steps", ParamSpec::Kind::count, 64, 64, 8192, "profile radial samples"},
      {"parameter_steps", ParamSpec::Kind::count, 256, 256, 65536, "profile geodesic-family samples"},
  };
}

inline Report run_cc_axis(const ExperimentConfig& cfg) {
  const Params params(cc_axis_schema(), cfg.params);
  Report report("cc_axis", cfg, params.json());
  const double tol = params.number("tolerance");
  const double cc_tol = params.number("cc_tolerance");
  auto& table = report.table("axis", {"tau", "closed_form", "solver", "shooting", "shooting_residual"});
  for (double tau : params.ladder("taus")) {
    const heisenberg::HPoint p{0.0, 0.0, tau};
    const double closed = std::sqrt(4.0 * std::numbers::pi * tau);
    const auto solve = heisenberg::cc_norm_solve(p, cc_tol);
    const auto shot = oracle::shooting_distance(p, static_cast<int>(params.count("shooting_steps")));
    const std::string tag = "tau=" + io::Json(tau).dump();
    report.quantity(tag + ".solver", solve.value, solve.bracket, "heisenberg cc_distance, bisection on the geodesic family");
    report.quantity(tag + ".shooting", shot.length, shot.residual, "RK4 shooting on the horizontal control system");
    report.quantity(tag + ".closed_form", closed, 0.0, "sqrt(4 pi tau), full-circle geodesic");
    report.close(tag + ".solver_vs_closed_form", solve.value, solve.bracket, closed, tol);
    report.check(tag + ".shooting_converged", shot.converged, "residual " + io::Json(shot.residual).dump());
    report.close(tag + ".shooting_vs_closed_form", shot.length, 0.0, closed, tol);
    report.close(tag + ".solver_vs_shooting", solve.value, 0.0, shot.length, tol);
    table.rows.push_back({tau, closed, solve.value, shot.length, shot.residual});
  }
  const auto profile = heisenberg::unit_ball_profile(
      heisenberg::BallMetric::cc, {params.count("radial_steps"), params.count("parameter_steps")}, cc_tol);
  const auto axis = profile.chords_at(0.0);
  const double beta = heisenberg::alpha_beta(profile).beta;
  const double beta_ref = 1.0 / (2.0 * std::numbers::pi);
  report.quantity("beta", beta, 0.0, "axis chord of the CC unit-ball profile");
  report.quantity("beta_reference", beta_ref, 0.0, "2 x 1/(4 pi), from the axis-distance closed form");
  report.check("axis_chord_single_interval", axis.size() == 1);
  if (!axis.empty()) report.close("axis_chord_symmetric", axis.front().lo, 0.0, -axis.front().hi, 1e-9, false);
  report.close("beta", beta, 0.0, beta_ref, params.number("beta_tolerance"));
  return report;
}

inline Schema ratio_bound_schema() {
  return {
      {"radial_steps", ParamSpec::Kind::count, 64, 64, 8192, "profile radial samples (doubled for the stability run)"},
      {"parameter_steps", ParamSpec::Kind::count, 256, 256, 65536, "profile geodesic-family samples (doubled likewise)"},
      {"cc_tolerance", ParamSpec::Kind::number, 1e-8, 1e-12, 1e-4, "relative tolerance of the CC distance solve"},
      {"strict_margin", ParamSpec::Kind::number, 0.01, 0.0, 1.0, "required margin of alpha/beta above 1"},
      {"upper_bound", ParamSpec::Kind::number, 4.0, 1.0, 100.0, "upper bound on alpha/beta"},
      {"stability", ParamSpec::Kind::number, 0.005, 0.0, 1.0, "allowed relative change under resolution doubling"},
      {"control_tolerance", ParamSpec::Kind::number, 1e-3, 0.0, 1.0, "Koranyi control: |alpha/beta - 1|"},
  };
}

inline Report run_ratio_bound(const ExperimentConfig& cfg) {
  const Params params(ratio_bound_schema(), cfg.params);
  Report report("ratio_bound", cfg, params.json());
  const heisenberg::ProfileResolution res{params.count("radial_steps"), params.count("parameter_steps")};
  const heisenberg::ProfileResolution fine{2 * res.radial_steps, 2 * res.parameter_steps};
  const double tol = params.number("cc_tolerance");
  const auto cc = heisenberg::unit_ball_profile(heisenberg::BallMetric::cc, res, tol);
  const auto ab = heisenberg::alpha_beta(cc);
  const auto ab_fine = heisenberg::alpha_beta(heisenberg::unit_ball_profile(heisenberg::BallMetric::cc, fine, tol));
  const auto kor = heisenberg::alpha_beta(heisenberg::unit_ball_profile(heisenberg::BallMetric::koranyi, res, tol));

  const double drift = std::abs(ab_fine.ratio() - ab.ratio());
  report.quantity("cc.alpha", ab.alpha, std::abs(ab_fine.alpha - ab.alpha), "CC profile, longest vertical chord");
  report.quantity("cc.beta", ab.beta, std::abs(ab_fine.beta - ab.beta), "CC profile, axis chord");
  report.quantity("cc.argmax_radius", ab.argmax_radius, std::abs(ab_fine.argmax_radius - ab.argmax_radius),
                  "CC profile, golden-section refinement");
  report.quantity("cc.ratio", ab.ratio(), drift, "alpha/beta; uncertainty = change under resolution doubling");
  report.quantity("cc.ratio_doubled", ab_fine.ratio(), 0.0, "alpha/beta at doubled resolution");
  report.quantity("koranyi.alpha", kor.alpha, 0.0, "Koranyi closed-form profile");
  report.quantity("koranyi.beta", kor.beta, 0.0, "Koranyi closed-form profile");
  report.quantity("koranyi.ratio", kor.ratio(), 0.0, "Koranyi control");

  report.greater("cc.ratio_above_one", ab.ratio(), drift, 1.0, params.number("strict_margin") * 1.0);
  report.at_most("cc.ratio_at_most_bound", ab.ratio(), params.number("upper_bound"));
  report.close("cc.resolution_stability", ab_fine.ratio(), 0.0, ab.ratio(), params.number("stability"));
  report.close("koranyi.ratio_is_one", kor.ratio(), 0.0, 1.0, params.number("control_tolerance"), false);
  report.close("koranyi.argmax_on_axis", kor.argmax_radius, 0.0, 0.0, 1e-3, false);

  auto& table = report.table("cc_profile", {"planar_radius", "chord_lo", "chord_hi"});
  for (const auto& s : cc.samples())
    for (const auto& c : s.chords) table.rows.push_back({s.radius, c.lo, c.hi});
  return report;
}

}  // namespace gmt::experiments
