#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gmt/caratheodory/ladder.hpp"

using namespace gmt;

namespace {

Curve axis_x() { return Curve::affine(Point::coords({0, 0}), Point::coords({1, 0})); }
Curve vertical() { return Curve::affine(Point::coords({0, 0, 0}), Point::coords({0, 0, 1})); }

MetricSpec abc_space() {
  return MetricSpec::finite(FiniteTable({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
}

// Minimum over all subcollections of admissible candidates covering the target.
double brute_force(const MetricSpec& space, const std::vector<std::size_t>& target,
                   const std::vector<FiniteCandidate>& cands, double delta) {
  double best = kInf;
  const std::size_t n = cands.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double total = 0.0;
    std::vector<bool> hit(space.table->size(), false);
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      if (!(mask >> k & 1)) continue;
      if (candidate_diameter(space, cands[k]) > delta) ok = false;
      total += cands[k].size;
      for (auto m : cands[k].members) hit[m] = true;
    }
    if (!ok) continue;
    bool covers = true;
    for (auto t : target) covers = covers && hit[t];
    if (covers) best = std::min(best, total);
  }
  return best;
}

struct RandomInstance {
  MetricSpec space;
  std::vector<FiniteCandidate> candidates;
  std::vector<std::size_t> all;
};

RandomInstance random_instance(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_int_distribution<int> coord(0, 12);
  std::uniform_int_distribution<int> count(2, 7);
  const int n = count(rng);
  std::vector<std::pair<int, int>> pts;
  while (static_cast<int>(pts.size()) < n) {
    const std::pair<int, int> p{coord(rng), coord(rng)};
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  std::vector<std::string> labels;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    for (int j = 0; j < n; ++j)
      d[i][j] = scale * std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
  }
  RandomInstance inst{MetricSpec::finite(FiniteTable(labels, d)), {}, {}};
  for (int i = 0; i < n; ++i) {
    inst.all.push_back(i);
    inst.candidates.push_back({"s" + std::to_string(i), {static_cast<std::size_t>(i)}, 0.0});
  }
  std::bernoulli_distribution take(0.5);
  while (inst.candidates.size() < 14) {
    FiniteCandidate c{"c" + std::to_string(inst.candidates.size()), {}, 0.0};
    for (int i = 0; i < n; ++i)
      if (take(rng)) c.members.push_back(i);
    if (c.members.size() >= 2) inst.candidates.push_back(c);
  }
  return inst;
}

}  // namespace

TEST(SizeFunction, Examples) {
  const auto e2 = MetricSpec::euclidean(2);
  for (double r : {0.1, 0.5, 2.0}) {
    const BallDescriptor ball{Point::coords({1, 1}), r, true};
    EXPECT_DOUBLE_EQ(size_value(SizeFunction::spherical(2, 0.25), e2, ball), r * r);
  }
  EXPECT_DOUBLE_EQ(size_value(SizeFunction::hausdorff(1), e2, CloudSet{{Point::coords({0, 0}), Point::coords({3, 4})}}), 5);
  EXPECT_EQ(size_value(SizeFunction::hausdorff(1), e2, CloudSet{{Point::coords({0, 0})}}), 0.0);
  EXPECT_THROW(size_value(SizeFunction::spherical(1), e2, CloudSet{{Point::coords({0, 0})}}), DomainError);
  EXPECT_THROW(size_value(SizeFunction::spherical(1), e2, BallDescriptor{Point::coords({0, 0}), 1, false}), DomainError);
  EXPECT_THROW(SizeFunction::hausdorff(0), DomainError);
  EXPECT_THROW(SizeFunction::from_table({{"x", -1.0}}), DomainError);
  const auto table = SizeFunction::from_table({{"x", 2.0}, {"y", kInf}});
  EXPECT_EQ(size_value(table, "y"), kInf);
  EXPECT_THROW(size_value(table, "z"), DomainError);
}

TEST(ZetaDelta, UnitSegment) {
  const auto e2 = MetricSpec::euclidean(2);
  const CurveSegment seg{axis_x(), 0.0, 1.0, 2001};
  const auto est = zeta_delta_upper(e2, seg, SizeFunction::hausdorff(1), 0.1);
  EXPECT_GE(est.value, 1.0 - 1e-9);
  EXPECT_LE(est.value, 1.2);
  EXPECT_TRUE(verify_cover(e2, seg, est));
  for (const auto& e : est.cover) EXPECT_LE(set_diameter(e2, e).value, 0.1 * (1 + 1e-12));
}

TEST(ZetaDelta, Singleton) {
  const auto e2 = MetricSpec::euclidean(2);
  const auto est = zeta_delta_upper(e2, CloudSet{{Point::coords({0.3, 0.4})}}, SizeFunction::hausdorff(1), 0.1);
  EXPECT_EQ(est.value, 0.0);
  EXPECT_EQ(zeta_delta_upper(e2, CloudSet{}, SizeFunction::hausdorff(1), 0.1).value, 0.0);
}

TEST(ZetaDelta, Errors) {
  const auto e2 = MetricSpec::euclidean(2);
  const CurveSegment seg{axis_x(), 0.0, 1.0, 101};
  EXPECT_THROW(zeta_delta_upper(e2, seg, SizeFunction::hausdorff(1), 0.0), DomainError);
  EXPECT_THROW(zeta_delta_upper(e2, BallDescriptor{Point::coords({0, 0}), 1, true}, SizeFunction::hausdorff(1), 0.1),
               DomainError);
  EXPECT_THROW(zeta_delta_upper(e2, seg, SizeFunction::from_table({}), 0.1), DomainError);
}

TEST(ZetaDelta, KoranyiVerticalSegment) {
  const auto space = MetricSpec::koranyi();
  for (double length : {0.5, 1.0}) {
    const CurveSegment seg{vertical(), 0.0, length, 20001};
    const auto est = zeta_delta_upper(space, seg, SizeFunction::spherical(2, 0.25), 0.25);
    EXPECT_NEAR(est.value, 2 * length, 0.02 * 2 * length) << length;
    EXPECT_TRUE(verify_cover(space, seg, est));
  }
}

TEST(Exact, Examples) {
  const auto space = abc_space();
  const std::vector<FiniteCandidate> cands{{"a", {0}, 1.0}, {"b", {1}, 1.0}, {"ab", {0, 1}, 1.5}};
  const auto est = zeta_delta_exact(space, {0, 1}, cands, 1.0);
  EXPECT_DOUBLE_EQ(est.value, 1.5);
  EXPECT_TRUE(est.exact);
  EXPECT_DOUBLE_EQ(zeta_delta_exact(space, {0, 1}, cands, 0.5).value, 2.0);  // ab too wide

  EXPECT_DOUBLE_EQ(zeta_delta_exact(space, {0}, {{"a", {0}, 0.3}}, 1.0).value, 0.3);

  const auto none = zeta_delta_exact(space, {0, 2}, {{"a", {0}, 1.0}}, 1.0);
  EXPECT_EQ(none.value, kInf);
  ASSERT_TRUE(none.uncovered_witness.has_value());
  EXPECT_EQ(*none.uncovered_witness, 2u);
  EXPECT_EQ(zeta_delta_exact(space, {}, cands, 1.0).value, 0.0);

  std::vector<FiniteCandidate> many(25, FiniteCandidate{"x", {0}, 1.0});
  EXPECT_THROW(zeta_delta_exact(space, {0}, many, 1.0), DomainError);
}

TEST(Exact, InfiniteSizes) {
  const auto space = abc_space();
  const std::vector<FiniteCandidate> cands{{"a", {0}, kInf}, {"ab", {0, 1}, 2.0}};
  EXPECT_DOUBLE_EQ(zeta_delta_exact(space, {0}, cands, 1.0).value, 2.0);
  EXPECT_EQ(zeta_delta_exact(space, {0}, {{"a", {0}, kInf}}, 1.0).value, kInf);
}

TEST(Exact, MatchesBruteForce) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> sixty_fourths(0, 256);
  for (int k = 0; k < 150; ++k) {
    auto inst = random_instance(rng);
    for (auto& c : inst.candidates) c.size = sixty_fourths(rng) / 64.0;
    for (double delta : {2.0, 5.0, 20.0}) {
      const double oracle = brute_force(inst.space, inst.all, inst.candidates, delta);
      const auto est = zeta_delta_exact(inst.space, inst.all, inst.candidates, delta);
      ASSERT_EQ(est.value, oracle) << k << " " << delta;
    }
  }
}

TEST(Ladder, Examples) {
  const auto e2 = MetricSpec::euclidean(2);
  const CurveSegment seg{axis_x(), 0.0, 1.0, 4001};
  const auto ladder = approx_measure_ladder(e2, seg, SizeFunction::hausdorff(1), {0.5, 0.25, 0.125});
  EXPECT_NEAR(ladder.extrapolated, 1.0, 0.02);
  EXPECT_TRUE(ladder.monotone_ok);
  ASSERT_EQ(ladder.entries.size(), 3u);

  const auto space = abc_space();
  const auto cands = with_sizes(space, {{"a", {0}}, {"b", {1}}, {"c", {2}}, {"ab", {0, 1}}, {"abc", {0, 1, 2}}},
                                SizeFunction::hausdorff(1));
  const auto exact = approx_measure_ladder_exact(space, {0, 1, 2}, cands, {2.0, 1.0, 0.5});
  EXPECT_DOUBLE_EQ(exact.entries[0].estimate.value, 0.0);  // singletons have size 0 under c diam^alpha
  EXPECT_TRUE(exact.monotone_ok);

  EXPECT_EQ(approx_measure_ladder(e2, CloudSet{}, SizeFunction::hausdorff(1), {0.5, 0.25}).extrapolated, 0.0);
  EXPECT_THROW(approx_measure_ladder(e2, seg, SizeFunction::hausdorff(1), {0.25, 0.5}), DomainError);
  EXPECT_THROW(geometric_ladder(1.0, 3, 1.5), DomainError);
}

TEST(Ladder, ExactSupOnATable) {
  const auto space = abc_space();
  const std::vector<FiniteCandidate> cands{{"a", {0}, 0.25}, {"b", {1}, 0.25}, {"c", {2}, 0.5}, {"abc", {0, 1, 2}, 0.75}};
  const auto ladder = approx_measure_ladder_exact(space, {0, 1, 2}, cands, {2.0, 1.0});
  EXPECT_DOUBLE_EQ(ladder.entries[0].estimate.value, 0.75);
  EXPECT_DOUBLE_EQ(ladder.entries[1].estimate.value, 1.0);
  EXPECT_DOUBLE_EQ(ladder.extrapolated, 1.0);
}

TEST(Properties, GreedyDominatesExact) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    auto inst = random_instance(rng);
    inst.candidates = with_sizes(inst.space, inst.candidates, SizeFunction::hausdorff(1.5, 0.5));
    for (double delta : {3.0, 8.0, 30.0}) {
      const double exact = zeta_delta_exact(inst.space, inst.all, inst.candidates, delta).value;
      const double greedy = zeta_delta_greedy(inst.space, inst.all, inst.candidates, delta).value;
      ASSERT_LE(exact, greedy);
    }
  }
}

TEST(Properties, MonotoneInDelta) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 100; ++k) {
    auto inst = random_instance(rng);
    inst.candidates = with_sizes(inst.space, inst.candidates, SizeFunction::hausdorff(1));
    double prev = 0.0;
    for (double delta : {30.0, 10.0, 5.0, 2.0, 1.0}) {
      const double v = zeta_delta_exact(inst.space, inst.all, inst.candidates, delta).value;
      ASSERT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(Properties, Subadditive) {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 100; ++k) {
    auto inst = random_instance(rng);
    inst.candidates = with_sizes(inst.space, inst.candidates, SizeFunction::hausdorff(2));
    std::vector<std::size_t> a, b;
    for (auto i : inst.all) (rng() % 2 ? a : b).push_back(i);
    for (double delta : {4.0, 20.0}) {
      const double whole = zeta_delta_exact(inst.space, inst.all, inst.candidates, delta).value;
      const double parts = zeta_delta_exact(inst.space, a, inst.candidates, delta).value +
                           zeta_delta_exact(inst.space, b, inst.candidates, delta).value;
      ASSERT_LE(whole, parts);
    }
  }
}

// Scaling distances by l scales c diam^alpha covers at delta l by l^alpha.
TEST(Properties, ScalingLaw) {
  for (double alpha : {1.0, 2.0}) {
    for (double l : {0.5, 2.0}) {
      std::mt19937_64 rng_a(61), rng_b(61);
      for (int k = 0; k < 50; ++k) {
        auto base = random_instance(rng_a);
        auto scaled = random_instance(rng_b, l);
        const auto z = SizeFunction::hausdorff(alpha);
        base.candidates = with_sizes(base.space, base.candidates, z);
        scaled.candidates = with_sizes(scaled.space, scaled.candidates, z);
        for (double delta : {3.0, 9.0}) {
          const double v0 = zeta_delta_exact(base.space, base.all, base.candidates, delta).value;
          const double v1 = zeta_delta_exact(scaled.space, scaled.all, scaled.candidates, delta * l).value;
          ASSERT_NEAR(v1, std::pow(l, alpha) * v0, 1e-12 * std::max(1.0, v1));
        }
      }
    }
  }
  const auto e2 = MetricSpec::euclidean(2);
  const auto z = SizeFunction::hausdorff(1);
  const double v0 = zeta_delta_upper(e2, CurveSegment{axis_x(), 0.0, 1.0, 2001}, z, 0.2).value;
  const double v1 = zeta_delta_upper(e2, CurveSegment{axis_x(), 0.0, 2.0, 2001}, z, 0.4).value;
  EXPECT_NEAR(v1, 2 * v0, 1e-9);
}
