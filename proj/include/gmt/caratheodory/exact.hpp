#pragma once

// Covers of finite metric spaces by explicit candidate subsets: a greedy upper
// estimate and an exact best-first branch and bound.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "gmt/caratheodory/cover.hpp"
#include "gmt/caratheodory/size_function.hpp"

namespace gmt {

struct FiniteCandidate {
  std::string id;
  std::vector<std::size_t> members;  // label indices
  double size = 0.0;                 // zeta of the candidate, may be +inf
};

inline constexpr std::size_t kMaxExactCandidates = 24;

inline double candidate_diameter(const MetricSpec& space, const FiniteCandidate& c) {
  double d = 0.0;
  for (std::size_t i = 0; i < c.members.size(); ++i)
    for (std::size_t j = i + 1; j < c.members.size(); ++j) d = std::max(d, (*space.table)(c.members[i], c.members[j]));
  return d;
}

// Candidates with sizes taken from z: table lookup by id, or c diam^alpha.
inline std::vector<FiniteCandidate> with_sizes(const MetricSpec& space, std::vector<FiniteCandidate> candidates,
                                               const SizeFunction& z) {
  if (z.kind == SizeKind::spherical) throw DomainError("finite candidates are evaluated with table or hausdorff sizes");
  for (auto& c : candidates) c.size = z.parametric() ? z.of_diameter(candidate_diameter(space, c)) : size_value(z, c.id);
  return candidates;
}

namespace detail {

struct FiniteProblem {
  std::vector<std::uint64_t> masks;  // candidate coverage over target positions
  std::vector<double> sizes;
  std::vector<std::size_t> source;  // index into the caller's candidate list
  std::uint64_t full = 0;
  std::vector<std::size_t> target;
};

inline FiniteProblem prepare(const MetricSpec& space, const std::vector<std::size_t>& target,
                             const std::vector<FiniteCandidate>& candidates, double delta) {
  if (space.kind != SpaceKind::finite) throw DomainError("exact covers need a finite space");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  FiniteProblem pb;
  pb.target = target;
  std::sort(pb.target.begin(), pb.target.end());
  pb.target.erase(std::unique(pb.target.begin(), pb.target.end()), pb.target.end());
  if (pb.target.size() > 64) throw DomainError("finite cover targets are limited to 64 labels");
  for (std::size_t l : pb.target)
    if (l >= space.table->size()) throw DomainError("unknown label in cover target");
  pb.full = pb.target.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pb.target.size()) - 1;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto& cand = candidates[c];
    if (!(cand.size >= 0.0)) throw DomainError("candidate '" + cand.id + "' has a negative size");
    for (std::size_t l : cand.members)
      if (l >= space.table->size()) throw DomainError("candidate '" + cand.id + "' has an unknown label");
    if (candidate_diameter(space, cand) > delta || cand.size == kInf) continue;
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < pb.target.size(); ++k)
      if (std::find(cand.members.begin(), cand.members.end(), pb.target[k]) != cand.members.end()) m |= std::uint64_t{1} << k;
    if (m == 0) continue;
    pb.masks.push_back(m);
    pb.sizes.push_back(cand.size);
    pb.source.push_back(c);
  }
  return pb;
}

inline CoverEstimate infeasible(const FiniteProblem& pb, double delta) {
  std::uint64_t reach = 0;
  for (auto m : pb.masks) reach |= m;
  CoverEstimate out;
  out.value = kInf;
  out.delta = delta;
  const std::uint64_t missing = pb.full & ~reach;
  out.uncovered_witness = pb.target[static_cast<std::size_t>(std::countr_zero(missing))];
  return out;
}

inline CoverEstimate assemble(const FiniteProblem& pb, const std::vector<FiniteCandidate>& candidates,
                              const std::vector<std::size_t>& chosen, double delta) {
  CoverEstimate out;
  out.delta = delta;
  for (std::size_t k : chosen) {
    const auto& cand = candidates[pb.source[k]];
    CloudSet set;
    for (std::size_t l : cand.members) set.points.push_back(Point::of_label(l));
    out.cover.emplace_back(std::move(set));
    out.value += pb.sizes[k];
  }
  return out;
}

}  // namespace detail

// Greedy weighted set cover: repeatedly take the admissible candidate with the
// smallest size per newly covered target element.
inline CoverEstimate zeta_delta_greedy(const MetricSpec& space, const std::vector<std::size_t>& target,
                                       const std::vector<FiniteCandidate>& candidates, double delta) {
  const auto pb = detail::prepare(space, target, candidates, delta);
  std::uint64_t reach = 0;
  for (auto m : pb.masks) reach |= m;
  if ((reach & pb.full) != pb.full) return detail::infeasible(pb, delta);
  std::uint64_t covered = 0;
  std::vector<std::size_t> chosen;
  while (covered != pb.full) {
    std::size_t best = pb.masks.size();
    double best_ratio = kInf;
    for (std::size_t k = 0; k < pb.masks.size(); ++k) {
      const int gain = std::popcount(pb.masks[k] & ~covered);
      if (gain == 0) continue;
      const double ratio = pb.sizes[k] / gain;
      if (best == pb.masks.size() || ratio < best_ratio) {
        best = k;
        best_ratio = ratio;
      }
    }
    covered |= pb.masks[best];
    chosen.push_back(best);
  }
  return detail::assemble(pb, candidates, chosen, delta);
}

// Exact minimum of sum zeta over subcollections of the admissible candidates
// (diameter <= delta) covering the target. Best-first search over
// include/exclude decisions in candidate order; the bound adds
// (uncovered count) x (least size per uncovered element among the remaining
// candidates), ties broken by candidate index.
inline CoverEstimate zeta_delta_exact(const MetricSpec& space, const std::vector<std::size_t>& target,
                                      const std::vector<FiniteCandidate>& candidates, double delta) {
  if (candidates.size() > kMaxExactCandidates) {
    throw DomainError("exact covers accept at most " + std::to_string(kMaxExactCandidates) + " candidates");
  }
  const auto pb = detail::prepare(space, target, candidates, delta);
  if (pb.target.empty()) {
    CoverEstimate out{0.0, delta};
    out.exact = true;
    out.gap_bound = 0.0;
    return out;
  }
  std::uint64_t reach = 0;
  for (auto m : pb.masks) reach |= m;
  if ((reach & pb.full) != pb.full) {
    auto out = detail::infeasible(pb, delta);
    out.exact = true;
    out.gap_bound = 0.0;
    return out;
  }

  const std::size_t n = pb.masks.size();
  // suffix_reach[i]: union of candidates i..n-1
  std::vector<std::uint64_t> suffix_reach(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) suffix_reach[i] = suffix_reach[i + 1] | pb.masks[i];

  struct Node {
    double bound;
    double cost;
    std::size_t next;
    std::uint64_t covered;
    std::uint32_t chosen;
    std::uint64_t seq;
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.next != b.next) return a.next < b.next;
    return a.seq > b.seq;
  };
  auto bound_of = [&](double cost, std::size_t next, std::uint64_t covered) {
    const std::uint64_t open = pb.full & ~covered;
    if (open == 0) return cost;
    if ((suffix_reach[next] & open) != open) return kInf;
    double least = kInf;
    for (std::size_t k = next; k < n; ++k) {
      const int gain = std::popcount(pb.masks[k] & open);
      if (gain > 0) least = std::min(least, pb.sizes[k] / gain);
    }
    return cost + least * std::popcount(open);
  };

  // greedy incumbent for pruning
  const double greedy = zeta_delta_greedy(space, pb.target, candidates, delta).value;
  const double incumbent = greedy + 1e-9 * std::max(1.0, greedy);

  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  std::uint64_t seq = 0;
  std::size_t expanded = 0;
  open.push({bound_of(0.0, 0, 0), 0.0, 0, 0, 0, seq++});
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    ++expanded;
    if (node.covered == pb.full) {
      std::vector<std::size_t> chosen;
      for (std::size_t k = 0; k < n; ++k)
        if (node.chosen & (std::uint32_t{1} << k)) chosen.push_back(k);
      auto out = detail::assemble(pb, candidates, chosen, delta);
      out.value = node.cost;
      out.exact = true;
      out.gap_bound = 0.0;
      out.evaluations = expanded;
      return out;
    }
    if (node.next >= n) continue;
    const std::size_t k = node.next;
    if (pb.masks[k] & ~node.covered) {
      const double cost = node.cost + pb.sizes[k];
      const std::uint64_t covered = node.covered | pb.masks[k];
      const double b = bound_of(cost, k + 1, covered);
      if (b <= incumbent) open.push({b, cost, k + 1, covered, node.chosen | (std::uint32_t{1} << k), seq++});
    }
    const double b = bound_of(node.cost, k + 1, node.covered);
    if (b <= incumbent) open.push({b, node.cost, k + 1, node.covered, node.chosen, seq++});
  }
  throw EstimatorError("branch and bound exhausted without a cover");
}

}  // namespace gmt
