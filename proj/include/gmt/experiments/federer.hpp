#pragma once

// Randomized finite instances for the exact cover oracle and for the two
// density comparison inequalities
//   F(x) < t on A  =>  mu(E) <= t psi(E) for every E in A,
//   F(x) > t on B  =>  mu(V) >= t psi(B) for every V containing B,
// checked exhaustively over subsets. On a finite space a set shrinking to x
// is eventually {x}, so F(x) = Q({x}) whenever the singleton is a candidate.

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

#include "gmt/caratheodory/exact.hpp"
#include "gmt/caratheodory/ladder.hpp"
#include "gmt/density.hpp"
#include "gmt/experiments/report.hpp"

namespace gmt::experiments {

inline Schema federer_inequalities_schema() {
  return {
      {"instances", ParamSpec::Kind::count, 200, 1, 100000, "random finite instances"},
      {"max_points", ParamSpec::Kind::count, 8, 3, 8, "largest |X|"},
      {"max_candidates", ParamSpec::Kind::count, 24, 10, 24, "largest candidate family"},
      {"grid", ParamSpec::Kind::count, 16, 4, 1024, "points are distinct integer pairs in [0, grid]^2"},
      {"drop_singleton_rate", ParamSpec::Kind::number, 0.05, 0.0, 1.0, "chance to drop a singleton (fineness fails)"},
      {"zero_measure_rate", ParamSpec::Kind::number, 0.05, 0.0, 1.0, "chance of mu = 0"},
      {"infinite_size_rate", ParamSpec::Kind::number, 0.05, 0.0, 1.0, "chance a non-singleton candidate has size +inf"},
  };
}

namespace detail {

struct FiniteInstance {
  MetricSpec space;
  std::vector<FiniteCandidate> candidates;
  std::vector<double> mu;  // atom per label
};

inline std::vector<std::size_t> members_of(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < 32; ++k)
    if (mask & (std::uint32_t{1} << k)) out.push_back(k);
  return out;
}

inline std::string id_of(std::uint32_t mask) { return "S" + std::to_string(mask); }

// Sizes and weights are multiples of 1/64 so that every sum is exact.
inline FiniteInstance random_instance(std::mt19937_64& rng, const Params& params) {
  auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; };
  const std::size_t n = uniform(3, params.count("max_points"));
  const auto grid = static_cast<int>(params.count("grid"));
  std::vector<std::pair<int, int>> pts;
  while (pts.size() < n) {
    std::pair<int, int> p{static_cast<int>(uniform(0, grid)), static_cast<int>(uniform(0, grid))};
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  std::vector<std::string> labels;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j)
      d[i][j] = std::hypot(double(pts[i].first - pts[j].first), double(pts[i].second - pts[j].second));
  }
  FiniteInstance inst{MetricSpec::finite(FiniteTable(labels, d)), {}, {}};

  std::vector<std::uint32_t> masks;
  const std::size_t dropped = chance(params.number("drop_singleton_rate")) ? uniform(0, n - 1) : n;
  for (std::size_t i = 0; i < n; ++i)
    if (i != dropped) masks.push_back(std::uint32_t{1} << i);
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  masks.push_back(full);
  const std::size_t total = uniform(masks.size(), params.count("max_candidates"));
  for (int attempts = 0; masks.size() < total && attempts < 1000; ++attempts) {
    const auto m = static_cast<std::uint32_t>(uniform(1, full));
    if (std::popcount(m) >= 2 && std::find(masks.begin(), masks.end(), m) == masks.end()) masks.push_back(m);
  }
  const double inf_rate = params.number("infinite_size_rate");
  for (auto m : masks) {
    double size = double(uniform(1, 128)) / 64.0;
    if (std::popcount(m) >= 2 && m != full && chance(inf_rate)) size = kInf;
    inst.candidates.push_back({id_of(m), members_of(m), size});
  }
  const bool zero = chance(params.number("zero_measure_rate"));
  for (std::size_t i = 0; i < n; ++i) inst.mu.push_back(zero ? 0.0 : double(uniform(0, 64)) / 64.0);
  return inst;
}

inline double mass_of(const FiniteInstance& inst, std::uint32_t mask) {
  double m = 0.0;
  for (std::size_t k : members_of(mask)) m += inst.mu[k];
  return m;
}

inline double min_distance(const FiniteTable& t) {
  double m = kInf;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) m = std::min(m, t(i, j));
  return m;
}

// psi(E): below the least positive distance only zero-diameter candidates are
// admissible, so zeta_delta has reached its supremum there.
inline double psi(const FiniteInstance& inst, std::uint32_t mask) {
  const double delta = 0.5 * min_distance(*inst.space.table);
  return zeta_delta_exact(inst.space, members_of(mask), inst.candidates, delta).value;
}

// Federer density at each label, or nullopt where {x} is not an admissible
// shrinking set (the covering relation is not fine at x).
inline std::vector<std::optional<double>> point_densities(const FiniteInstance& inst) {
  std::vector<std::optional<double>> f(inst.mu.size());
  for (const auto& c : inst.candidates) {
    if (c.members.size() != 1) continue;
    const std::size_t x = c.members.front();
    const double m = inst.mu[x];
    if ((c.size == 0.0 && m == 0.0) || (c.size == kInf && m == kInf)) continue;
    f[x] = quotient(m, c.size);
  }
  return f;
}

// Some S~ in the family contains S^ with diam S~ <= c diam S and
// zeta(S~) <= eta zeta(S); returns (c, eta) or nullopt.
inline std::optional<std::pair<double, double>> doubling_constants(const FiniteInstance& inst) {
  const auto& cands = inst.candidates;
  std::vector<std::uint32_t> masks;
  std::vector<double> diam;
  for (const auto& c : cands) {
    std::uint32_t m = 0;
    for (std::size_t k : c.members) m |= std::uint32_t{1} << k;
    masks.push_back(m);
    diam.push_back(candidate_diameter(inst.space, c));
  }
  double c_max = 0.0;
  double eta_max = 0.0;
  for (std::size_t s = 0; s < cands.size(); ++s) {
    std::uint32_t hat = 0;
    for (std::size_t t = 0; t < cands.size(); ++t)
      if ((masks[t] & masks[s]) && diam[t] <= 2.0 * diam[s]) hat |= masks[t];
    bool found = false;
    double best_c = kInf;
    double best_eta = kInf;
    for (std::size_t t = 0; t < cands.size(); ++t) {
      if ((masks[t] & hat) != hat) continue;
      if (diam[s] == 0.0 && diam[t] > 0.0) continue;
      if (cands[s].size == 0.0 && cands[t].size > 0.0) continue;
      const double c = diam[s] == 0.0 ? 0.0 : diam[t] / diam[s];
      const double eta = cands[s].size == 0.0 ? 0.0 : cands[t].size / cands[s].size;
      if (!found || std::max(c, eta) < std::max(best_c, best_eta)) {
        best_c = c;
        best_eta = eta;
        found = true;
      }
    }
    if (!found) return std::nullopt;
    c_max = std::max(c_max, best_c);
    eta_max = std::max(eta_max, best_eta);
  }
  return std::pair{std::max(c_max, 1.0), std::max(eta_max, 1.0)};
}

struct InequalityTally {
  std::size_t checked = 0;
  std::size_t trivial = 0;
  std::size_t subsets = 0;
  std::size_t violations = 0;
  std::map<std::string, std::size_t> skipped;
};

// Upper inequality over all E in A = {F < t}; returns false on a violation.
inline void check_upper(const FiniteInstance& inst, const std::vector<std::optional<double>>& f, double t,
                        InequalityTally& tally) {
  for (const auto& v : f) {
    if (!v) {
      ++tally.skipped["covering relation not fine"];
      return;
    }
  }
  std::uint32_t a = 0;
  for (std::size_t x = 0; x < f.size(); ++x)
    if (*f[x] < t) a |= std::uint32_t{1} << x;
  if (a == 0) {
    ++tally.skipped["no point with density below t"];
    return;
  }
  ++tally.checked;
  if (mass_of(inst, a) == 0.0) ++tally.trivial;
  for (std::uint32_t e = a;; e = (e - 1) & a) {
    ++tally.subsets;
    if (mass_of(inst, e) > t * psi(inst, e)) ++tally.violations;
    if (e == 0) break;
  }
}

// Lower inequality over all nonempty B' in B = {F > t}; the strongest V is B'.
inline void check_lower(const FiniteInstance& inst, const std::vector<std::optional<double>>& f, double t,
                        InequalityTally& tally, std::vector<std::pair<double, double>>& constants) {
  for (const auto& v : f) {
    if (!v) {
      ++tally.skipped["covering relation not fine"];
      return;
    }
  }
  for (const auto& c : inst.candidates) {
    if (c.size == kInf) {
      ++tally.skipped["size function takes +inf"];
      return;
    }
  }
  const auto dc = doubling_constants(inst);
  if (!dc) {
    ++tally.skipped["no enlargement satisfying the doubling condition"];
    return;
  }
  std::uint32_t b = 0;
  for (std::size_t x = 0; x < f.size(); ++x)
    if (*f[x] > t) b |= std::uint32_t{1} << x;
  if (b == 0) {
    ++tally.skipped["no point with density above t"];
    return;
  }
  ++tally.checked;
  constants.push_back(*dc);
  for (std::uint32_t e = b; e != 0; e = (e - 1) & b) {
    ++tally.subsets;
    if (mass_of(inst, e) < t * psi(inst, e)) ++tally.violations;
  }
}

inline std::vector<double> delta_ladder(const FiniteTable& t) {
  std::vector<double> ds;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) ds.push_back(t(i, j));
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  ds.insert(ds.begin(), 0.5 * ds.front());
  std::reverse(ds.begin(), ds.end());
  return ds;
}

inline FiniteInstance scaled(const FiniteInstance& inst, double lambda, double alpha) {
  const auto& t = *inst.space.table;
  auto d = t.distances();
  for (auto& row : d)
    for (auto& v : row) v *= lambda;
  FiniteInstance out{MetricSpec::finite(FiniteTable(t.labels(), d)), inst.candidates, inst.mu};
  out.candidates = with_sizes(out.space, out.candidates, SizeFunction::hausdorff(alpha));
  return out;
}

}  // namespace detail

inline Report run_federer_inequalities(const ExperimentConfig& cfg) {
  const Params params(federer_inequalities_schema(), cfg.params);
  Report report("federer_inequalities", cfg, params.json());
  std::mt19937_64 rng(cfg.seed);
  const auto count = params.count("instances");

  std::size_t greedy_violations = 0;
  std::size_t monotone_violations = 0;
  std::size_t subadditive_violations = 0;
  std::size_t scaling_violations = 0;
  std::size_t infeasible_witness_errors = 0;
  std::size_t cover_errors = 0;
  std::size_t rungs = 0;
  detail::InequalityTally upper;
  detail::InequalityTally lower;
  std::vector<std::pair<double, double>> constants;

  for (std::size_t i = 0; i < count; ++i) {
    const auto inst = detail::random_instance(rng, params);
    const auto& table = *inst.space.table;
    std::vector<std::size_t> all(table.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;

    // oracle dominance, monotonicity and cover feasibility along the delta ladder
    const auto ladder = detail::delta_ladder(table);
    double previous = -1.0;
    for (double delta : ladder) {
      ++rungs;
      const auto exact = zeta_delta_exact(inst.space, all, inst.candidates, delta);
      const auto greedy = zeta_delta_greedy(inst.space, all, inst.candidates, delta);
      if (!(greedy.value >= exact.value)) ++greedy_violations;
      if (previous >= 0.0 && exact.value < previous) ++monotone_violations;  // delta decreases along the ladder
      previous = exact.value;
      if (exact.value == kInf) {
        if (!exact.uncovered_witness) ++infeasible_witness_errors;
      } else {
        CloudSet target;
        for (std::size_t k : all) target.points.push_back(Point::of_label(k));
        if (!verify_cover(inst.space, target, exact)) ++cover_errors;
      }
    }
    if (!approx_measure_ladder_exact(inst.space, all, inst.candidates, ladder).monotone_ok) ++monotone_violations;

    // subadditivity on a random split
    {
      const double delta = ladder[std::uniform_int_distribution<std::size_t>(0, ladder.size() - 1)(rng)];
      const auto full = static_cast<std::uint32_t>((1u << table.size()) - 1);
      const auto r1 = static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(0, full)(rng));
      const auto r2 = static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(0, full)(rng));
      auto z = [&](std::uint32_t m) { return zeta_delta_exact(inst.space, detail::members_of(m), inst.candidates, delta).value; };
      if (!(z(r1 | r2) <= z(r1) + z(r2))) ++subadditive_violations;
    }

    // scaling law for c diam^alpha sizes
    for (double alpha : {1.0, 2.0}) {
      const auto base = detail::scaled(inst, 1.0, alpha);
      for (double lambda : {0.5, 2.0}) {
        const auto big = detail::scaled(inst, lambda, alpha);
        const double delta = ladder[ladder.size() / 2];
        const double v0 = zeta_delta_exact(base.space, all, base.candidates, delta).value;
        const double v1 = zeta_delta_exact(big.space, all, big.candidates, lambda * delta).value;
        if (v1 != std::pow(lambda, alpha) * v0) ++scaling_violations;
      }
    }

    // density inequalities at a threshold t between two point densities
    const auto f = detail::point_densities(inst);
    std::vector<double> finite_f;
    for (const auto& v : f)
      if (v && std::isfinite(*v)) finite_f.push_back(*v);
    std::sort(finite_f.begin(), finite_f.end());
    finite_f.erase(std::unique(finite_f.begin(), finite_f.end()), finite_f.end());
    double t = 1.0;
    if (finite_f.size() >= 2) {
      const std::size_t k = std::uniform_int_distribution<std::size_t>(0, finite_f.size() - 2)(rng);
      t = 0.5 * (finite_f[k] + finite_f[k + 1]);
    } else if (finite_f.size() == 1) {
      t = finite_f.front() > 0.0 ? 2.0 * finite_f.front() : 1.0;
    }
    detail::check_upper(inst, f, t, upper);
    detail::check_lower(inst, f, t, lower, constants);
  }

  const std::string prov = "exact branch and bound on " + std::to_string(count) + " seeded instances";
  report.quantity("delta_rungs", double(rungs), 0.0, prov);
  report.quantity("upper.instances_checked", double(upper.checked), 0.0, prov);
  report.quantity("upper.trivial_zero_measure", double(upper.trivial), 0.0, prov);
  report.quantity("upper.subsets_checked", double(upper.subsets), 0.0, prov);
  report.quantity("lower.instances_checked", double(lower.checked), 0.0, prov);
  report.quantity("lower.subsets_checked", double(lower.subsets), 0.0, prov);
  auto& skips = report.table("skipped", {"inequality", "reason", "instances"});
  for (const auto& [reason, n] : upper.skipped) skips.rows.push_back({"upper", reason, n});
  for (const auto& [reason, n] : lower.skipped) skips.rows.push_back({"lower", reason, n});
  double c_max = 0.0;
  double eta_max = 0.0;
  for (const auto& [c, eta] : constants) {
    c_max = std::max(c_max, c);
    eta_max = std::max(eta_max, eta);
  }
  report.quantity("lower.max_c", c_max, 0.0, "largest diameter ratio of the enlargements found");
  report.quantity("lower.max_eta", eta_max, 0.0, "largest size ratio of the enlargements found");

  report.at_most("greedy_dominates_exact", double(greedy_violations), 0.0);
  report.at_most("exact_monotone_in_delta", double(monotone_violations), 0.0);
  report.at_most("exact_subadditive", double(subadditive_violations), 0.0);
  report.at_most("exact_scaling_law", double(scaling_violations), 0.0);
  report.at_most("infeasible_has_witness", double(infeasible_witness_errors), 0.0);
  report.at_most("exact_covers_verified", double(cover_errors), 0.0);
  report.at_most("upper_inequality", double(upper.violations), 0.0, 0.0, "mu(E) <= t psi(E) for all E in {F < t}");
  report.at_most("lower_inequality", double(lower.violations), 0.0, 0.0, "mu(B) >= t psi(B) for all B in {F > t}");
  report.check("upper_inequality_exercised", upper.checked > 0);
  report.check("lower_inequality_exercised", lower.checked > 0);

  // fixed six-point instance: every density 1/2 < t = 1
  {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> d(6, std::vector<double>(6));
    for (std::size_t i = 0; i < 6; ++i) {
      labels.push_back("q" + std::to_string(i));
      for (std::size_t j = 0; j < 6; ++j) d[i][j] = std::abs(double(i) - double(j));
    }
    detail::FiniteInstance six{MetricSpec::finite(FiniteTable(labels, d)), {}, std::vector<double>(6, 0.5)};
    for (std::uint32_t i = 0; i < 6; ++i) six.candidates.push_back({detail::id_of(1u << i), {i}, 1.0});
    for (std::uint32_t i = 0; i + 1 < 6; ++i) six.candidates.push_back({detail::id_of(3u << i), {i, i + 1}, 1.5});
    detail::InequalityTally tally;
    detail::check_upper(six, detail::point_densities(six), 1.0, tally);
    report.check("six_point_upper", tally.checked == 1 && tally.subsets == 64 && tally.violations == 0,
                 "all 64 subsets satisfy mu(E) <= psi(E)");

    auto zero = six;
    zero.mu.assign(6, 0.0);
    detail::InequalityTally ztally;
    detail::check_upper(zero, detail::point_densities(zero), 1.0, ztally);
    report.check("zero_measure_trivial", ztally.trivial == 1 && ztally.violations == 0, "mu = 0: recorded as a trivial pass");

    auto coarse = six;
    coarse.candidates.erase(coarse.candidates.begin());
    detail::InequalityTally ctally;
    detail::check_upper(coarse, detail::point_densities(coarse), 1.0, ctally);
    report.check("fineness_gate", ctally.checked == 0 && ctally.skipped.count("covering relation not fine") == 1,
                 "dropping {q0} makes the covering relation not fine at q0; the instance is skipped");
  }
  report.note("densities on a finite space: sets of small diameter around x are {x}, so F(x) = Q({x})");
  report.note("psi is the exact cover value below the least positive distance, where zeta_delta is constant");
  report.note("for the lower inequality V = B' is the strongest choice, since mu(V) >= mu(B') for V containing B'");
  return report;
}

}  // namespace gmt::experiments
