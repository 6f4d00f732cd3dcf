#pragma once

#include <cmath>
#include <vector>

#include "gmt/caratheodory/cover.hpp"
#include "gmt/caratheodory/exact.hpp"

namespace gmt {

struct LadderEntry {
  double delta = 0.0;
  CoverEstimate estimate;
};

// psi_zeta = sup_delta zeta_delta, read off a decreasing ladder of deltas.
struct MeasureLadder {
  std::vector<LadderEntry> entries;
  double extrapolated = 0.0;  // value at the smallest delta
  bool monotone_ok = true;
};

// Geometric ladder start, start*ratio, ..., with `rungs` entries.
inline std::vector<double> geometric_ladder(double start, std::size_t rungs = 6, double ratio = 0.5) {
  if (!(start > 0.0) || !(ratio > 0.0 && ratio < 1.0) || rungs == 0) throw DomainError("invalid ladder parameters");
  std::vector<double> out;
  for (std::size_t k = 0; k < rungs; ++k) out.push_back(start * std::pow(ratio, static_cast<double>(k)));
  return out;
}

inline void check_ladder(const std::vector<double>& ladder) {
  if (ladder.empty()) throw DomainError("ladder is empty");
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (!(ladder[k] > 0.0)) throw DomainError("ladder values must be positive");
    if (k > 0 && !(ladder[k] < ladder[k - 1])) throw DomainError("ladder must be strictly decreasing");
  }
}

namespace detail {

inline MeasureLadder finish(MeasureLadder out, double monotone_tolerance) {
  for (std::size_t k = 1; k < out.entries.size(); ++k) {
    const double prev = out.entries[k - 1].estimate.value;
    const double cur = out.entries[k].estimate.value;
    if (cur < prev - monotone_tolerance * std::abs(prev)) out.monotone_ok = false;
  }
  out.extrapolated = out.entries.back().estimate.value;
  return out;
}

}  // namespace detail

inline MeasureLadder approx_measure_ladder(const MetricSpec& space, const SetRep& target, const SizeFunction& z,
                                           const std::vector<double>& ladder, const CoverStrategy& strategy = {},
                                           double monotone_tolerance = 0.02) {
  check_ladder(ladder);
  MeasureLadder out;
  for (double delta : ladder) out.entries.push_back({delta, zeta_delta_upper(space, target, z, delta, strategy)});
  return detail::finish(std::move(out), monotone_tolerance);
}

// Ladder of exact rungs on a finite instance; monotonicity is checked without slack.
inline MeasureLadder approx_measure_ladder_exact(const MetricSpec& space, const std::vector<std::size_t>& target,
                                                 const std::vector<FiniteCandidate>& candidates,
                                                 const std::vector<double>& ladder) {
  check_ladder(ladder);
  MeasureLadder out;
  for (double delta : ladder) out.entries.push_back({delta, zeta_delta_exact(space, target, candidates, delta)});
  return detail::finish(std::move(out), 0.0);
}

}  // namespace gmt
