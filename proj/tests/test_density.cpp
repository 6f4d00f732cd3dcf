#include <gtest/gtest.h>

#include <cmath>

#include "gmt/density.hpp"

using namespace gmt;

namespace {

const std::vector<double> kEps{0.2, 0.1, 0.05};
const SearchBudget kBudget{16, 8, 20, 32};

MeasureRep planar_segment(double scale = 1.0) {
  return MeasureRep::curve(Curve::affine(Point::coords({0, 0}), Point::coords({0.6 * scale, 0.8 * scale})), 0.0, 1.0,
                           CurveDensity::euclidean_speed);
}

}  // namespace

TEST(Quotient, Cases) {
  EXPECT_DOUBLE_EQ(quotient(1.0, 4.0), 0.25);
  EXPECT_EQ(quotient(1.0, 0.0), kInf);
  EXPECT_EQ(quotient(0.0, 0.0), kInf);
  EXPECT_EQ(quotient(3.0, kInf), 0.0);
  const auto e2 = MetricSpec::euclidean(2);
  const auto mu = MeasureRep::weighted_cloud({Point::coords({0, 0}), Point::coords({1, 0})}, {0.5, 0.25});
  EXPECT_DOUBLE_EQ(quotient(mu, SizeFunction::hausdorff(1), e2, BallDescriptor{Point::coords({0, 0}), 1.0, true}), 0.375);
  EXPECT_DOUBLE_EQ(quotient(mu, SizeFunction::hausdorff(1), e2, BallDescriptor{Point::coords({0, 0}), 1.0, false}), 0.25);
}

TEST(MeasureRep, Validation) {
  EXPECT_THROW(MeasureRep::weighted_cloud({Point::coords({0, 0})}, {}), DomainError);
  EXPECT_THROW(MeasureRep::weighted_cloud({Point::coords({0, 0})}, {-1.0}), DomainError);
  EXPECT_THROW(MeasureRep::curve(Curve::affine(Point::coords({0}), Point::coords({1})), 1.0, 1.0, CurveDensity::unit),
               DomainError);
  EXPECT_NEAR(planar_segment().total_mass(), 1.0, 1e-14);
  EXPECT_NEAR(planar_segment(3.0).total_mass(), 3.0, 1e-13);
}

TEST(Density, EuclideanSegment) {
  const auto e2 = MetricSpec::euclidean(2);
  const auto mu = planar_segment();
  const Point x = Point::coords({0.3, 0.4});
  const auto federer = federer_density(e2, mu, SizeFunction::hausdorff(1), x, kEps, kBudget);
  EXPECT_NEAR(federer.extrapolated, 1.0, 0.02);
  ASSERT_EQ(federer.ladder.size(), 3u);
  const auto centred = centered_density(e2, mu, 1.0, x, {0.1, 0.05, 0.025});
  EXPECT_NEAR(centred.extrapolated, 2.0, 1e-9);
  EXPECT_EQ(centred.trend, Trend::stable);
}

TEST(Density, ZeroMeasure) {
  const auto e2 = MetricSpec::euclidean(2);
  const auto mu = MeasureRep::weighted_cloud({Point::coords({0, 0}), Point::coords({0.5, 0})}, {0.0, 0.0});
  const auto federer = federer_density(e2, mu, SizeFunction::hausdorff(1), Point::coords({0, 0}), kEps, kBudget);
  EXPECT_EQ(federer.extrapolated, 0.0);
  EXPECT_EQ(centered_density(e2, mu, 1.0, Point::coords({0, 0}), {0.1, 0.05}).extrapolated, 0.0);
}

TEST(Density, AtomBlowsUp) {
  const auto e2 = MetricSpec::euclidean(2);
  const auto mu = MeasureRep::weighted_cloud({Point::coords({0, 0})}, {1.0});
  const auto federer = federer_density(e2, mu, SizeFunction::hausdorff(1), Point::coords({0, 0}), kEps, kBudget);
  EXPECT_EQ(federer.trend, Trend::increasing);
  EXPECT_GE(federer.extrapolated, 1.0 / 0.05);
  const auto centred = centered_density(e2, mu, 1.0, Point::coords({0, 0}), {0.1, 0.05, 0.025});
  EXPECT_EQ(centred.trend, Trend::increasing);
  EXPECT_DOUBLE_EQ(centred.extrapolated, 40.0);
}

TEST(Density, Errors) {
  const auto e2 = MetricSpec::euclidean(2);
  const auto mu = planar_segment();
  const Point x = Point::coords({0.3, 0.4});
  EXPECT_THROW(federer_density(e2, mu, SizeFunction::hausdorff(1), x, {0.1, 0.2}, kBudget), DomainError);
  EXPECT_THROW(federer_density(e2, mu, SizeFunction::hausdorff(1), Point::coords({0.5, 0.0}), kEps, kBudget), DomainError);
  EXPECT_THROW(centered_density(e2, mu, 0.0, x, {0.1}), DomainError);
  EXPECT_THROW(centered_density(MetricSpec::koranyi(), mu, 1.0, Point::coords({0, 0, 0}), {0.1}), DomainError);
}

TEST(Trend, Classification) {
  EXPECT_EQ(classify_trend({1.0, 1.01, 1.0}), Trend::stable);
  EXPECT_EQ(classify_trend({1.0, 2.0, 4.0}), Trend::increasing);
  EXPECT_EQ(classify_trend({4.0, 2.0, 1.0}), Trend::decreasing);
  EXPECT_EQ(classify_trend({1.0, 2.0, 1.0}), Trend::noisy);
  EXPECT_EQ(classify_trend({1.0, kInf}), Trend::increasing);
}

// Centred balls are in the Federer family once 2r < epsilon, and with
// zeta = (diam / 2)^alpha the quotients agree on them. The slack covers the
// bisected run ends of the ball mass.
TEST(Properties, FedererDominatesCentred) {
  const auto e2 = MetricSpec::euclidean(2);
  const auto mu = planar_segment();
  const auto z = SizeFunction::hausdorff(1, 0.5);
  for (double t : {0.2, 0.5, 0.9}) {
    const Point x = Point::coords({0.6 * t, 0.8 * t});
    const auto federer = federer_density(e2, mu, z, x, kEps, kBudget);
    const auto centred = centered_density(e2, mu, 1.0, x, {0.09, 0.045, 0.0225});
    for (std::size_t k = 0; k < 3; ++k) EXPECT_GE(federer.ladder[k].value, centred.ladder[k].value * (1 - 1e-6));
  }
}

TEST(Properties, FedererArgmaxFeasible) {
  const auto e2 = MetricSpec::euclidean(2);
  const auto mu = MeasureRep::weighted_cloud({Point::coords({0, 0}), Point::coords({0.03, 0}), Point::coords({0, 0.07})},
                                             {1.0, 2.0, 0.5});
  const Point x = Point::coords({0, 0});
  const auto federer = federer_density(e2, mu, SizeFunction::hausdorff(1), x, kEps, kBudget);
  for (const auto& r : federer.ladder) {
    EXPECT_TRUE(ball_contains(e2, r.argmax, x));
    EXPECT_LT(2 * r.argmax.radius, r.epsilon);
    EXPECT_DOUBLE_EQ(quotient(mu, SizeFunction::hausdorff(1), e2, r.argmax), r.value);
  }
}

// Dilating the measure by l and the ladder by l leaves a 1-dimensional density unchanged.
TEST(Properties, ScaleCovariance) {
  const auto e2 = MetricSpec::euclidean(2);
  const auto base = federer_density(e2, planar_segment(), SizeFunction::hausdorff(1), Point::coords({0.3, 0.4}), kEps, kBudget);
  for (double l : {0.5, 2.0}) {
    std::vector<double> eps;
    for (double e : kEps) eps.push_back(l * e);
    const auto scaled =
        federer_density(e2, planar_segment(l), SizeFunction::hausdorff(1), Point::coords({0.3 * l, 0.4 * l}), eps, kBudget);
    for (std::size_t k = 0; k < eps.size(); ++k) EXPECT_NEAR(scaled.ladder[k].value, base.ladder[k].value, 1e-6) << l;
    const auto c0 = centered_density(e2, planar_segment(), 1.0, Point::coords({0.3, 0.4}), {0.1, 0.05});
    const auto c1 = centered_density(e2, planar_segment(l), 1.0, Point::coords({0.3 * l, 0.4 * l}), {0.1 * l, 0.05 * l});
    EXPECT_NEAR(c1.extrapolated, c0.extrapolated, 1e-9);
  }
}
