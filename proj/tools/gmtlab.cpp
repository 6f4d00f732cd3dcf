// gmtlab: command-line front end for the experiments and estimators.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gmt/caratheodory/ladder.hpp"
#include "gmt/density.hpp"
#include "gmt/experiments/registry.hpp"
#include "gmt/heisenberg/curve.hpp"
#include "gmt/heisenberg/profile.hpp"
#include "gmt/io/json.hpp"

namespace {

using gmt::io::Json;
namespace ex = gmt::experiments;

gmt::MetricSpec parse_space(const std::string& name, const std::string& finite_path, double cc_tol) {
  if (name == "koranyi") return gmt::MetricSpec::koranyi();
  if (name == "cc") return gmt::MetricSpec::cc(cc_tol);
  if (name == "finite") {
    if (finite_path.empty()) throw gmt::DomainError("--space finite needs --finite <json>");
    return gmt::MetricSpec::finite(gmt::io::finite_table_from_json(gmt::io::read_json_file(finite_path)));
  }
  if (name.rfind("euclidean", 0) == 0 && name.size() > 9) return gmt::MetricSpec::euclidean(std::stoul(name.substr(9)));
  throw gmt::DomainError("unknown space '" + name + "' (euclidean<n>, koranyi, cc, finite)");
}

gmt::heisenberg::BallMetric parse_metric(const std::string& name) {
  if (name == "cc") return gmt::heisenberg::BallMetric::cc;
  if (name == "koranyi") return gmt::heisenberg::BallMetric::koranyi;
  throw gmt::DomainError("unknown metric '" + name + "' (cc, koranyi)");
}

gmt::heisenberg::HPoint hpoint(const std::vector<double>& v) {
  if (v.size() != 3) throw gmt::DomainError("Heisenberg points are x,y,t");
  return {v[0], v[1], v[2]};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw gmt::DomainError("cannot write '" + path + "'");
  out << text;
}

void print_summary(const ex::Report& r) {
  std::cout << (r.passed() ? "PASS " : "FAIL ") << r.experiment() << " (" << r.wall_clock() << " s)\n";
  for (const auto& c : r.criteria()) {
    if (!c.passed) std::cout << "  failed: " << c.name << " measured=" << c.measured << " reference=" << c.reference
                              << " tolerance=" << c.tolerance << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gmtlab: Caratheodory measures, Federer densities and Heisenberg-group experiments"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run one experiment and write its JSON report");
  std::string run_name;
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  run->add_option("experiment", run_name, "experiment name (see `gmtlab list`)")->required();
  run->add_option("--config", config_path, "JSON config {\"seed\": n, \"params\": {...}}");
  run->add_option("--out", out_path, "report path (default: stdout)");
  run->add_option("--csv", csv_path, "also write the report tables as long-format CSV");

  // all
  auto* all = app.add_subcommand("all", "run every experiment; exit 0 iff all pass");
  std::uint64_t seed = 42;
  std::string all_out = "reports";
  all->add_option("--seed", seed, "seed recorded in, and used by, every experiment");
  all->add_option("--out", all_out, "directory for the reports");

  auto* list = app.add_subcommand("list", "list experiments");
  auto* describe = app.add_subcommand("describe", "print the parameter schema of an experiment");
  std::string describe_name;
  describe->add_option("experiment", describe_name)->required();

  // measure-estimate
  auto* measure = app.add_subcommand("measure-estimate", "estimate zeta_delta along a ladder of deltas");
  std::string space_name = "euclidean2";
  std::string finite_path;
  std::string target_json;
  double alpha = 1.0;
  double c = 1.0;
  bool spherical = false;
  bool hausdorff = false;
  std::vector<double> deltas;
  std::string strategy = "auto";
  double cc_tol = 1e-8;
  bool with_cover = false;
  measure->add_option("--space", space_name, "euclidean<n>, koranyi, cc or finite");
  measure->add_option("--finite", finite_path, "finite space JSON {labels, distances}");
  measure->add_option("--target", target_json, "set as JSON, or @file")->required();
  measure->add_option("--alpha", alpha, "size exponent");
  measure->add_option("--c", c, "size constant");
  auto* sph = measure->add_flag("--spherical", spherical, "closed balls only");
  measure->add_flag("--hausdorff", hausdorff, "all closed sets (default)")->excludes(sph);
  measure->add_option("--delta-ladder", deltas, "decreasing deltas, comma separated")->delimiter(',')->required();
  measure->add_option("--strategy", strategy, "auto, greedy or offset")->check(CLI::IsMember({"auto", "greedy", "offset"}));
  measure->add_option("--cc-tolerance", cc_tol, "CC solver tolerance");
  measure->add_flag("--with-cover", with_cover, "include the cover sets in the output");
  std::string candidates_json;
  measure->add_option("--candidates", candidates_json,
                      "finite spaces: exact covers from [{\"id\", \"members\": [labels], \"size\"}], JSON or @file; "
                      "a missing size is c diam^alpha");

  // density
  auto* density = app.add_subcommand("density", "Federer or centred density estimate at a point");
  std::string mode = "federer";
  std::string measure_json;
  std::vector<double> point;
  std::vector<double> ladder;
  std::vector<std::size_t> budget_values;
  std::string dspace = "euclidean2";
  double dalpha = 1.0;
  double dc = 1.0;
  density->add_option("--mode", mode, "federer or centered")->check(CLI::IsMember({"federer", "centered"}));
  density->add_option("--space", dspace, "euclidean<n>, koranyi or cc");
  density->add_option("--measure", measure_json, "measure as JSON, or @file")->required();
  density->add_option("--point", point, "coordinates of x, comma separated")->delimiter(',')->required();
  density->add_option("--alpha", dalpha, "exponent");
  density->add_option("--c", dc, "size constant (federer mode)");
  density->add_option("--ladder", ladder, "decreasing epsilons (federer) or radii (centered)")->delimiter(',')->required();
  density->add_option("--budget", budget_values, "center_grid,radii,refine_steps[,window_nodes]")->delimiter(',');

  // heisenberg
  auto* heis = app.add_subcommand("heisenberg", "Heisenberg-group tools");
  heis->require_subcommand(1);
  std::string metric = "cc";
  std::vector<double> p_arg;
  std::vector<double> q_arg;
  double htol = 1e-8;
  auto* hdist = heis->add_subcommand("distance", "distance between two points");
  hdist->add_option("--metric", metric, "cc or koranyi");
  hdist->add_option("--p", p_arg, "x,y,t")->delimiter(',')->required();
  hdist->add_option("--q", q_arg, "x,y,t")->delimiter(',')->required();
  hdist->add_option("--tol", htol, "CC solver tolerance");
  std::size_t radial = 64;
  std::size_t param_steps = 256;
  std::string profile_out;
  auto* hprof = heis->add_subcommand("profile", "unit-ball chord profile as CSV");
  hprof->add_option("--metric", metric, "cc or koranyi");
  hprof->add_option("--radial", radial, "radial samples (>= 64)");
  hprof->add_option("--param", param_steps, "geodesic-family samples (>= 256)");
  hprof->add_option("--out", profile_out, "CSV path (default: stdout)");
  auto* hab = heis->add_subcommand("alpha-beta", "longest and axial vertical chords of the unit ball");
  hab->add_option("--metric", metric, "cc or koranyi");
  hab->add_option("--radial", radial, "radial samples (>= 64)");
  hab->add_option("--param", param_steps, "geodesic-family samples (>= 256)");
  std::string curve_json;
  std::vector<double> interval;
  double threshold = 0.1;
  auto* hcurve = heis->add_subcommand("curve-measure", "intrinsic measure and nonhorizontal set of a curve");
  hcurve->add_option("--curve", curve_json, "curve spec as JSON, or @file")->required();
  hcurve->add_option("--interval", interval, "lo,hi sub-interval (default: whole curve)")->delimiter(',');
  hcurve->add_option("--threshold", threshold, "|v| threshold for the nonhorizontal set");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      Json cfg_json;
      if (!config_path.empty()) cfg_json = gmt::io::read_json_file(config_path);
      const auto cfg = ex::ExperimentConfig::from_json(run_name, cfg_json);
      const auto report = ex::run_experiment(run_name, cfg);
      write_text(out_path, report.to_json().dump(2) + "\n");
      if (!csv_path.empty()) write_text(csv_path, report.to_csv());
      if (!out_path.empty() && out_path != "-") print_summary(report);
      return report.passed() ? 0 : 1;
    }
    if (*all) {
      bool ok = true;
      for (const auto& e : ex::registry()) {
        ex::ExperimentConfig cfg;
        cfg.experiment = e.name;
        cfg.seed = seed;
        const auto report = ex::run_experiment(e.name, cfg);
        write_text((std::filesystem::path(all_out) / (e.name + ".json")).string(), report.to_json().dump(2) + "\n");
        print_summary(report);
        ok = ok && report.passed();
      }
      std::cout << (ok ? "all experiments passed" : "some experiments failed") << "\n";
      return ok ? 0 : 1;
    }
    if (*list) {
      for (const auto& e : ex::registry()) std::cout << e.name << "\t" << e.summary << "\n";
      return 0;
    }
    if (*describe) {
      std::cout << ex::describe(ex::find_experiment(describe_name).schema()).dump(2) << "\n";
      return 0;
    }
    if (*measure) {
      const auto space = parse_space(space_name, finite_path, cc_tol);
      const auto target = gmt::io::set_from_json(space, gmt::io::parse_json_arg(target_json));
      const auto z = spherical ? gmt::SizeFunction::spherical(alpha, c) : gmt::SizeFunction::hausdorff(alpha, c);
      gmt::CoverStrategy st;
      if (strategy == "greedy") st.kind = gmt::CoverStrategy::Kind::greedy_net;
      if (strategy == "offset") st.kind = gmt::CoverStrategy::Kind::optimized_offset;
      Json out;
      if (!candidates_json.empty()) {
        if (space.kind != gmt::SpaceKind::finite) throw gmt::DomainError("--candidates needs --space finite");
        const auto* cloud = std::get_if<gmt::CloudSet>(&target);
        if (!cloud) throw gmt::DomainError("exact covers need a cloud of labels as target");
        std::vector<std::size_t> labels;
        for (const auto& p : cloud->points) labels.push_back(p.label);
        const auto cands = gmt::io::candidates_from_json(space, gmt::io::parse_json_arg(candidates_json),
                                                         gmt::SizeFunction::hausdorff(alpha, c));
        out = gmt::io::to_json(space, gmt::approx_measure_ladder_exact(space, labels, cands, deltas), with_cover);
        out["strategy"] = "exact";
      } else {
        out = gmt::io::to_json(space, gmt::approx_measure_ladder(space, target, z, deltas, st), with_cover);
        out["strategy"] = strategy;
      }
      out["space"] = space.name();
      out["size_function"] = {{"kind", gmt::to_string(z.kind)}, {"alpha", z.alpha}, {"c", z.c}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*density) {
      const auto space = parse_space(dspace, "", 1e-8);
      const auto mu = gmt::io::measure_from_json(space, gmt::io::parse_json_arg(measure_json));
      const auto x = gmt::io::point_from_json(space, Json(point));
      gmt::SearchBudget budget;
      if (!budget_values.empty()) {
        if (budget_values.size() < 3) throw gmt::DomainError("--budget needs center_grid,radii,refine_steps");
        budget.center_grid = budget_values[0];
        budget.radii = budget_values[1];
        budget.refine_steps = budget_values[2];
        if (budget_values.size() > 3) budget.window_nodes = budget_values[3];
      }
      const auto est = mode == "federer"
                           ? gmt::federer_density(space, mu, gmt::SizeFunction::spherical(dalpha, dc), x, ladder, budget)
                           : gmt::centered_density(space, mu, dalpha, x, ladder, budget);
      Json out = gmt::io::to_json(space, est);
      out["mode"] = mode;
      out["space"] = space.name();
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*hdist) {
      const auto p = hpoint(p_arg);
      const auto q = hpoint(q_arg);
      Json out{{"metric", metric}};
      if (parse_metric(metric) == gmt::heisenberg::BallMetric::koranyi) {
        out["distance"] = gmt::heisenberg::koranyi_distance(p, q);
      } else {
        const auto s = gmt::heisenberg::cc_norm_solve(gmt::heisenberg::displacement(p, q), htol);
        out["distance"] = s.value;
        out["bracket"] = s.bracket;
        out["iterations"] = s.iterations;
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*hprof) {
      const auto profile = gmt::heisenberg::unit_ball_profile(parse_metric(metric), {radial, param_steps});
      write_text(profile_out, profile.to_csv());
      return 0;
    }
    if (*hab) {
      const auto ab = gmt::heisenberg::alpha_beta(gmt::heisenberg::unit_ball_profile(parse_metric(metric), {radial, param_steps}));
      Json out = gmt::io::to_json(ab);
      out["metric"] = metric;
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*hcurve) {
      const auto spec = gmt::io::curve_spec_from_json(gmt::io::parse_json_arg(curve_json));
      double lo = spec.a;
      double hi = spec.b;
      if (!interval.empty()) {
        if (interval.size() != 2) throw gmt::DomainError("--interval needs lo,hi");
        lo = interval[0];
        hi = interval[1];
      }
      Json runs = Json::array();
      for (const auto& r : gmt::heisenberg::nonhorizontal_set(spec, threshold)) runs.push_back({r.lo, r.hi});
      Json frame = Json::array();
      for (const auto& f : spec.frame) frame.push_back({f.h1, f.h2, f.v});
      Json out{{"interval", {lo, hi}},
               {"measure", gmt::heisenberg::intrinsic_measure(spec, lo, hi)},
               {"threshold", threshold},
               {"nonhorizontal", runs},
               {"frame", frame}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const gmt::Error& e) {
    std::cerr << "gmtlab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gmtlab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
