#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gmt/heisenberg/curve.hpp"
#include "gmt/heisenberg/group.hpp"
#include "gmt/heisenberg/profile.hpp"
#include "gmt/oracle/ode_shooting.hpp"

using namespace gmt;
using namespace gmt::heisenberg;

namespace {

constexpr double pi = std::numbers::pi;

HPoint random_hpoint(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

void expect_near(const HPoint& a, const HPoint& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.t, b.t, tol);
}

}  // namespace

TEST(Group, Examples) {
  const HPoint p = multiply({1, 0, 0}, {0, 1, 0});
  expect_near(p, {1, 1, 0.5}, 0.0);
  expect_near(multiply({0, 1, 0}, {1, 0, 0}), {1, 1, -0.5}, 0.0);
  expect_near(invert({1, 2, 3}), {-1, -2, -3}, 0.0);
  expect_near(dilate({1, 2, 3}, 2.0), {2, 4, 12}, 0.0);
  EXPECT_THROW(dilate({1, 2, 3}, 0.0), DomainError);
}

TEST(Group, Axioms) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) {
    const HPoint p = random_hpoint(rng), q = random_hpoint(rng), r = random_hpoint(rng);
    expect_near(multiply(multiply(p, q), r), multiply(p, multiply(q, r)), 1e-14);
    expect_near(multiply(p, invert(p)), {0, 0, 0}, 1e-15);
    expect_near(multiply(p, {0, 0, 0}), p, 0.0);
    const double l = 0.3 + k * 0.01;
    expect_near(dilate(multiply(p, q), l), multiply(dilate(p, l), dilate(q, l)), 1e-13);
  }
}

TEST(Koranyi, Examples) {
  EXPECT_DOUBLE_EQ(koranyi_distance({0, 0, 0}, {0, 0, 0.25}), 1.0);
  EXPECT_DOUBLE_EQ(koranyi_distance({0, 0, 0}, {1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(koranyi_distance({0, 0, 0}, {0, 0, 1}), 2.0);
  EXPECT_EQ(koranyi_distance({1, 2, 3}, {1, 2, 3}), 0.0);
}

TEST(CC, AxisClosedForm) {
  for (double tau : {1.0, 0.1, 0.01, -0.3}) {
    EXPECT_NEAR(cc_norm({0, 0, tau}, 1e-10), std::sqrt(4 * pi * std::abs(tau)), 1e-9) << tau;
  }
  EXPECT_DOUBLE_EQ(cc_norm({0.6, 0.8, 0}), 1.0);
  EXPECT_EQ(cc_norm({0, 0, 0}), 0.0);
}

// The solver against an independent ODE shooting oracle.
TEST(CC, MatchesShootingOracle) {
  const std::vector<HPoint> targets{{0, 0, 0.01}, {0, 0, 0.5}, {0.3, 0.1, 0.05}, {1, 0, 0.2},
                                    {0.2, -0.5, -0.3}, {0.05, 0.02, 0.4}, {-0.7, 0.4, 0.01}};
  for (const auto& p : targets) {
    const auto shot = oracle::shooting_distance(p);
    ASSERT_TRUE(shot.converged);
    EXPECT_NEAR(cc_norm(p, 1e-10), shot.length, 1e-7 * std::max(1.0, shot.length)) << p.x << "," << p.y << "," << p.t;
  }
}

TEST(CC, LeftInvarianceAndHomogeneity) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const HPoint p = random_hpoint(rng), q = random_hpoint(rng), g = random_hpoint(rng);
    const double d = cc_distance(p, q, 1e-10);
    EXPECT_NEAR(cc_distance(multiply(g, p), multiply(g, q), 1e-10), d, 1e-8 * std::max(1.0, d));
    for (double l : {0.5, 2.0}) {
      EXPECT_NEAR(cc_distance(dilate(p, l), dilate(q, l), 1e-10), l * d, 1e-8 * std::max(1.0, l * d));
      EXPECT_NEAR(koranyi_distance(dilate(p, l), dilate(q, l)), l * koranyi_distance(p, q), 1e-12);
    }
  }
}

TEST(CC, Dominates) {
  // the Koranyi gauge is never larger than the CC norm
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    const HPoint p = random_hpoint(rng);
    EXPECT_LE(koranyi_distance({0, 0, 0}, p), cc_norm(p) * (1 + 1e-8));
  }
}

TEST(Profile, CCAxisChord) {
  const auto profile = unit_ball_profile(BallMetric::cc);
  const auto chords = profile.chords_at(0.0);
  ASSERT_EQ(chords.size(), 1u);
  EXPECT_NEAR(chords[0].lo, -1.0 / (4 * pi), 1e-9);
  EXPECT_NEAR(chords[0].hi, 1.0 / (4 * pi), 1e-9);
  EXPECT_TRUE(profile.chords_at(1.0 + 1e-6).empty());
}

TEST(Profile, KoranyiChords) {
  const auto profile = unit_ball_profile(BallMetric::koranyi);
  EXPECT_DOUBLE_EQ(profile.chord_length_at(0.0), 0.5);
  EXPECT_NEAR(profile.chord_length_at(0.5), 0.5 * std::sqrt(1 - 0.0625), 1e-15);
  EXPECT_TRUE(profile.chords_at(1.5).empty());
}

TEST(Profile, RejectsCoarseResolution) {
  EXPECT_THROW(unit_ball_profile(BallMetric::cc, {32, 256}), DomainError);
  EXPECT_THROW(unit_ball_profile(BallMetric::cc, {64, 128}), DomainError);
}

// Chord endpoints lie on the unit sphere.
TEST(Profile, ChordsEndOnTheSphere) {
  const double tol = 1e-8;
  const auto profile = unit_ball_profile(BallMetric::cc, {64, 256}, tol);
  for (const auto& sample : profile.samples()) {
    for (const auto& c : sample.chords) {
      if (sample.radius == 0.0 || sample.radius >= 1.0) continue;
      EXPECT_NEAR(cc_norm({sample.radius, 0, c.hi}, tol), 1.0, 5 * tol + 1e-9) << sample.radius;
      EXPECT_NEAR(cc_norm({sample.radius, 0, c.lo}, tol), 1.0, 5 * tol + 1e-9) << sample.radius;
      EXPECT_LE(cc_norm({sample.radius, 0, 0.5 * (c.lo + c.hi)}, tol), 1.0 + tol);
    }
  }
}

TEST(AlphaBeta, Values) {
  const auto cc = alpha_beta(unit_ball_profile(BallMetric::cc));
  EXPECT_NEAR(cc.beta, 1 / (2 * pi), 1e-9);
  EXPECT_NEAR(cc.alpha, 1 / pi, 1e-6);
  EXPECT_NEAR(cc.argmax_radius, 2 / pi, 1e-3);
  EXPECT_NEAR(cc.ratio(), 2.0, 1e-5);
  const auto ko = alpha_beta(unit_ball_profile(BallMetric::koranyi));
  EXPECT_DOUBLE_EQ(ko.alpha, 0.5);
  EXPECT_DOUBLE_EQ(ko.beta, 0.5);
  EXPECT_EQ(ko.argmax_radius, 0.0);
}

TEST(AlphaBeta, StableUnderRefinement) {
  const auto coarse = alpha_beta(unit_ball_profile(BallMetric::cc, {64, 256}));
  const auto fine = alpha_beta(unit_ball_profile(BallMetric::cc, {128, 512}));
  EXPECT_NEAR(coarse.ratio(), fine.ratio(), 1e-4);
}

TEST(IntrinsicMeasure, Examples) {
  const auto vertical = make_curve_spec([](double s) { return HPoint{0, 0, s}; }, [](double) { return Vec3{0, 0, 1}; },
                                        0.0, 2.5, 17);
  EXPECT_NEAR(intrinsic_measure(vertical, 0.0, 2.5), 2.5, 1e-12);

  const auto horizontal = make_curve_spec([](double s) { return HPoint{std::cos(s), std::sin(s), s / 2}; },
                                          [](double s) { return Vec3{-std::sin(s), std::cos(s), 0.5}; }, 0.0, 3.0, 65);
  EXPECT_NEAR(intrinsic_measure(horizontal, 0.0, 3.0), 0.0, 1e-6);

  auto diagonal = [](std::size_t n) {
    return make_curve_spec([](double s) { return HPoint{s, 0, s}; }, [](double) { return Vec3{1, 0, 1}; }, 0.0, 1.0, n);
  };
  const double coarse = intrinsic_measure(diagonal(11), 0.0, 1.0);
  const double fine = intrinsic_measure(diagonal(101), 0.0, 1.0);
  EXPECT_NEAR(coarse, 1.0, 1e-12);
  EXPECT_NEAR(coarse, fine, 1e-6);
  EXPECT_EQ(intrinsic_measure(vertical, 1.0, 1.0), 0.0);
  EXPECT_THROW(intrinsic_measure(vertical, -0.1, 1.0), DomainError);
  EXPECT_THROW(intrinsic_measure(vertical, 1.0, 0.5), DomainError);
}

TEST(IntrinsicMeasure, Additive) {
  const auto spec = make_curve_spec(
      [](double s) { return HPoint{std::sin(s), s * s, std::cos(3 * s)}; },
      [](double s) { return Vec3{std::cos(s), 2 * s, -3 * std::sin(3 * s)}; }, 0.0, 2.0, 257);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (a > b) std::swap(a, b);
    if (c < a) std::swap(a, c);
    if (c < b) std::swap(b, c);
    EXPECT_NEAR(intrinsic_measure(spec, a, b) + intrinsic_measure(spec, b, c), intrinsic_measure(spec, a, c), 1e-10);
  }
}

TEST(NonhorizontalSet, TwoRuns) {
  const auto spec = make_curve_spec([](double s) { return HPoint{0, 0, 0.5 * (s - 0.5) * (s - 0.5)}; },
                                    [](double s) { return Vec3{0, 0, s - 0.5}; }, 0.0, 1.0, 101);
  const auto runs = nonhorizontal_set(spec, 0.1);
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_NEAR(runs[0].lo, 0.0, 1e-12);
  EXPECT_NEAR(runs[0].hi, 0.4, 1e-9);
  EXPECT_NEAR(runs[1].lo, 0.6, 1e-9);
  EXPECT_NEAR(runs[1].hi, 1.0, 1e-12);
  EXPECT_THROW(nonhorizontal_set(spec, 0.0), DomainError);
}

TEST(CurveSpec, Validation) {
  auto spec = make_curve_spec([](double s) { return HPoint{s, 0, s}; }, [](double) { return Vec3{1, 0, 1}; }, 0.0, 1.0, 11);
  EXPECT_NO_THROW(spec.validate());
  auto bad_frame = spec;
  bad_frame.frame[3].v += 0.1;
  EXPECT_THROW(bad_frame.validate(), DomainError);
  auto bad_derivative = spec;
  bad_derivative.derivatives[4] = {1, 0, 2};
  bad_derivative.frame[4] = frame_decompose(bad_derivative.positions[4], bad_derivative.derivatives[4]);
  EXPECT_THROW(bad_derivative.validate(), DomainError);
  auto unordered = spec;
  std::swap(unordered.nodes[2], unordered.nodes[3]);
  EXPECT_THROW(unordered.validate(), DomainError);
  EXPECT_THROW(make_curve_spec([](double s) { return HPoint{s, 0, 0}; }, [](double) { return Vec3{1, 0, 0}; }, 1.0, 1.0, 5),
               DomainError);
}

TEST(Frame, RoundTrip) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    const HPoint p = random_hpoint(rng, 3.0);
    const HPoint d = random_hpoint(rng, 3.0);
    const Vec3 back = frame_compose(p, frame_decompose(p, {d.x, d.y, d.t}));
    EXPECT_NEAR(back[0], d.x, 1e-14);
    EXPECT_NEAR(back[1], d.y, 1e-14);
    EXPECT_NEAR(back[2], d.t, 1e-13);
  }
}
