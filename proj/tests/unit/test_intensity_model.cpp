// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nhppp/illustration.hpp"
#include "nhppp/intensity.hpp"
#include "oracles.hpp"

namespace {

using nhppp::Interval;

TEST(Specs, LinearClampsAtZero) {
  const nhppp::LinearIntensity f{3.0, -0.5};
  EXPECT_DOUBLE_EQ(f(0.0), 3.0);
  EXPECT_DOUBLE_EQ(f(6.0), 0.0);
  EXPECT_DOUBLE_EQ(f(8.0), 0.0);
}

TEST(Specs, PiecewiseRejectsBadInput) {
  EXPECT_THROW(nhppp::PiecewiseConstant({1.0, -1.0}, {0, 1, 2}), nhppp::DomainError);
  EXPECT_THROW(nhppp::PiecewiseConstant({1.0, 1.0}, {0, 2, 1}), nhppp::DomainError);
  EXPECT_THROW(nhppp::PiecewiseConstant({1.0, 1.0}, {0, 1}), nhppp::DomainError);
  EXPECT_THROW(nhppp::PiecewiseConstant({}, {0}), nhppp::DomainError);
  EXPECT_THROW(nhppp::PiecewiseConstantRegular({1.0, NAN}, Interval(0, 1)), nhppp::DomainError);
  EXPECT_THROW(nhppp::PiecewiseConstantRegular({1.0}, Interval(1, 1)), nhppp::DomainError);
}

TEST(Specs, PiecewiseEvaluation) {
  const nhppp::PiecewiseConstant f({1, 2, 3}, {0, 1, 2.5, 4});
  EXPECT_EQ(f(0.5), 1);
  EXPECT_EQ(f(1.0), 2);
  EXPECT_EQ(f(3.9), 3);
  EXPECT_EQ(f(4.0), 3);
  EXPECT_EQ(f(-0.1), 0);
  EXPECT_EQ(f(4.1), 0);
  const nhppp::PiecewiseConstantRegular g({1, 2, 3}, Interval(0, 3));
  EXPECT_EQ(g(2.5), 3);
  EXPECT_EQ(g.to_irregular().breakpoints().back(), 3.0);
}

TEST(CumulativeOf, RegularUnitRateIsIdentity) {
  const nhppp::PiecewiseConstantRegular f({1, 1, 1}, Interval(0, 3));
  const auto cum = nhppp::cumulative_of(f);
  for (double t : {0.0, 0.4, 1.0, 2.2, 3.0}) {
    EXPECT_NEAR(cum(t), t, 1e-14);
    EXPECT_NEAR(cum.inverse(t), t, 1e-14);
  }
  EXPECT_DOUBLE_EQ(cum.mass(), 3.0);
}

TEST(CumulativeOf, LinearSupportEnds) {
  const auto cum = nhppp::cumulative_of(nhppp::LinearIntensity{3.0, -0.5}, Interval(0, 10));
  const double quad = oracle::adaptive_simpson([](double t) { return std::max(3.0 - 0.5 * t, 0.0); }, 0, 6);
  EXPECT_NEAR(quad, 9.0, 1e-10);
  EXPECT_NEAR(cum(6.0) - cum(0.0), 9.0, 1e-12);
  EXPECT_NEAR(cum.mass(), 9.0, 1e-12);
  EXPECT_NEAR(cum(10.0), cum(6.0), 1e-12);
  EXPECT_LE(cum.inverse(cum.mass()), 6.0 + 1e-12);
}

TEST(CumulativeOf, LinearRisingFromNegative) {
  // Zero until t = 2, then rising.
  const auto cum = nhppp::cumulative_of(nhppp::LinearIntensity{-2.0, 1.0}, Interval(0, 5));
  EXPECT_NEAR(cum.mass(), oracle::adaptive_simpson([](double t) { return std::max(t - 2.0, 0.0); }, 0, 2) +
                              oracle::adaptive_simpson([](double t) { return t - 2.0; }, 2, 5),
              1e-10);
  EXPECT_NEAR(cum.inverse(1e-12), 2.0, 1e-5);
}

TEST(CumulativeOf, LogLinearMatchesQuadrature) {
  const Interval iv(8, 10);
  const auto cum = nhppp::cumulative_of(nhppp::LogLinearIntensity{1.0, -0.02}, iv);
  const double quad = oracle::adaptive_simpson([](double t) { return std::exp(1.0 - 0.02 * t); }, 8, 10, 1e-14);
  EXPECT_NEAR((cum(10) - cum(8)) / quad, 1.0, 1e-10);
}

TEST(CumulativeOf, LogLinearFlatSlope) {
  const auto cum = nhppp::cumulative_of(nhppp::LogLinearIntensity{std::log(2.0), 0.0}, Interval(1, 4));
  EXPECT_NEAR(cum.mass(), 6.0, 1e-12);
  EXPECT_NEAR(cum.inverse(3.0), 2.5, 1e-12);
}

TEST(CumulativeOf, RoundTripAllClosedForms) {
  const std::vector<std::pair<nhppp::IntensitySpec, Interval>> specs = {
      {nhppp::LinearIntensity{0.5, 0.2}, Interval(0, 10)},
      {nhppp::LinearIntensity{3.0, -0.5}, Interval(0, 10)},
      {nhppp::LogLinearIntensity{1.0, -0.02}, Interval(8, 10)},
      {nhppp::LogLinearIntensity{-1.0, 0.7}, Interval(-2, 3)},
      {nhppp::PiecewiseConstant({1, 0, 5, 2}, {0.5, 1, 2.4, 3.1, 4.9}), Interval(0.5, 4.9)},
  };
  for (const auto& [spec, iv] : specs) {
    const auto cum = nhppp::cumulative_of(spec, iv);
    for (int i = 1; i < 200; ++i) {
      const double z = cum.lower() + cum.mass() * i / 200.0;
      EXPECT_NEAR(cum(cum.inverse(z)), z, 1e-10 * std::max(1.0, z));
    }
  }
}

TEST(CumulativeOf, PiecewiseIntervalMismatch) {
  const nhppp::PiecewiseConstant f({1, 2}, {0, 1, 2});
  EXPECT_THROW(nhppp::cumulative_of(f, Interval(0, 3)), nhppp::ArgumentError);
}

TEST(CumulativeOf, CallableUnsupported) {
  const nhppp::IntensitySpec f = nhppp::CallableIntensity{[](double) { return 1.0; }};
  EXPECT_THROW(nhppp::cumulative_of(f, Interval(0, 1)), nhppp::UnsupportedError);
}

TEST(CumulativeIntensity, RejectsDecreasingEnds) {
  EXPECT_THROW(nhppp::CumulativeIntensity([](double t) { return -t; }, Interval(0, 1)), nhppp::DomainError);
  EXPECT_THROW(nhppp::CumulativeIntensity(nhppp::CumulativeIntensity::Function{}, Interval(0, 1)),
               nhppp::ArgumentError);
}

TEST(NumericInverse, Identity) {
  EXPECT_NEAR(nhppp::numeric_inverse([](double t) { return t; }, 3.5, Interval(0, 10)), 3.5, 1e-9);
}

TEST(NumericInverse, IllustrationAtPi) {
  const double z = nhppp::illustration::cumulative(std::numbers::pi);
  const double t = nhppp::numeric_inverse([](double x) { return nhppp::illustration::cumulative(x); }, z,
                                          nhppp::illustration::interval());
  EXPECT_NEAR(t, std::numbers::pi, 1e-8);
}

TEST(NumericInverse, PlateauReturnsLeftEdge) {
  // Rate 1 on (0,2], 0 on (2,5], 1 on (5,7].
  auto cum = [](double t) { return t <= 2 ? t : (t <= 5 ? 2.0 : 2.0 + (t - 5.0)); };
  EXPECT_NEAR(nhppp::numeric_inverse(cum, 2.0, Interval(0, 7)), 2.0, 1e-8);
  EXPECT_NEAR(nhppp::numeric_inverse(cum, 3.0, Interval(0, 7)), 6.0, 1e-8);
}

TEST(NumericInverse, BracketErrors) {
  auto cum = [](double t) { return t; };
  EXPECT_THROW(nhppp::numeric_inverse(cum, 11.0, Interval(0, 10)), nhppp::BracketError);
  EXPECT_THROW(nhppp::numeric_inverse(cum, -1.0, Interval(0, 10)), nhppp::BracketError);
  EXPECT_THROW(nhppp::numeric_inverse([](double) { return NAN; }, 0.5, Interval(0, 1)), nhppp::NumericError);
}

TEST(NumericInverse, RoundTripIllustration) {
  const auto cum = nhppp::illustration::cumulative_numeric();
  for (int i = 0; i <= 1000; ++i) {
    const double z = cum.lower() + cum.mass() * i / 1000.0;
    EXPECT_LE(std::fabs(cum(cum.inverse(z)) - z), 1e-10 * std::max(1.0, std::fabs(z)));
  }
}

TEST(Illustration, MassMatchesQuadrature) {
  const double quad = oracle::adaptive_simpson(oracle::illustration_lambda, 0, 6 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(nhppp::illustration::mass(), quad, 1e-8);
  EXPECT_NEAR(quad, 171.1347, 1e-3);
}

TEST(Illustration, TabulatedInverseAccuracy) {
  const auto cum = nhppp::illustration::cumulative_tabulated();
  for (int i = 1; i < 1000; ++i) {
    const double z = cum.mass() * i / 1000.0;
    EXPECT_NEAR(cum(cum.inverse(z)), z, 1e-4);
  }
}

TEST(Illustration, DerivativeMatchesFiniteDifference) {
  for (double t : {0.3, 2.0, 7.5, 15.0}) {
    const double h = 1e-6;
    const double fd = (nhppp::illustration::lambda(t + h) - nhppp::illustration::lambda(t - h)) / (2 * h);
    EXPECT_NEAR(nhppp::illustration::derivative(t), fd, 1e-5);
  }
}

}  // namespace
