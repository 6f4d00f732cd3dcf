#pragma once

// Name -> experiment table, with timing and error capture.

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "gmt/experiments/area.hpp"
#include "gmt/experiments/constants.hpp"
#include "gmt/experiments/density_gap.hpp"
#include "gmt/experiments/federer.hpp"

namespace gmt::experiments {

struct Experiment {
  std::string name;
  std::string summary;
  std::function<Schema()> schema;
  std::function<Report(const ExperimentConfig&)> run;
};

inline const std::vector<Experiment>& registry() {
  static const std::vector<Experiment> all{
      {"metric_axioms", "triangle inequality, symmetry, invariance and homogeneity on sampled points", metric_axioms_schema,
       run_metric_axioms},
      {"cc_axis", "CC distance on the t-axis against sqrt(4 pi |t|) and the shooting oracle; beta", cc_axis_schema,
       run_cc_axis},
      {"ratio_bound", "alpha/beta of the CC unit ball, resolution stability, Koranyi control", ratio_bound_schema,
       run_ratio_bound},
      {"density_gap", "centred and Federer densities of mu_SR on a vertical CC segment", density_gap_schema,
       run_density_gap},
      {"spherical_area_koranyi", "mu_SR = alpha S^2 on a vertical segment, Koranyi metric", spherical_area_schema,
       [](const ExperimentConfig& c) { return run_spherical_area(c, heisenberg::BallMetric::koranyi); }},
      {"spherical_area_cc", "mu_SR = alpha S^2 on a vertical segment, CC metric", spherical_area_schema,
       [](const ExperimentConfig& c) { return run_spherical_area(c, heisenberg::BallMetric::cc); }},
      {"euclidean_area", "H^1 of a unit segment and the integral of the density against H^1", euclidean_area_schema,
       run_euclidean_area},
      {"sigma2_chain", "S^2_d(B(x,r))/r^2 on a vertical segment, Koranyi metric", sigma2_chain_schema, run_sigma2_chain},
      {"federer_inequalities", "exact covers and the density inequalities on random finite spaces",
       federer_inequalities_schema, run_federer_inequalities},
  };
  return all;
}

inline const Experiment& find_experiment(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  throw DomainError("unknown experiment '" + name + "'");
}

// Runs one experiment. Parameter errors are thrown before anything runs;
// library errors during the run become a failed report.
inline Report run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  const auto& exp = find_experiment(name);
  const Params params(exp.schema(), cfg.params);
  const auto start = std::chrono::steady_clock::now();
  Report report = [&] {
    try {
      return exp.run(cfg);
    } catch (const Error& e) {
      Report failed(name, cfg, params.json());
      failed.fail("completed", e.what());
      return failed;
    }
  }();
  report.set_wall_clock(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return report;
}

}  // namespace gmt::experiments
