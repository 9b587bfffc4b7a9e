// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nhppp/batch.hpp"
#include "nhppp/illustration.hpp"
#include "nhppp/nhppp_general.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

namespace il = nhppp::illustration;
using nhppp::EventMatrix;
using nhppp::Interval;
using nhppp::RateMatrix;
using nhppp::RngStream;
using nhppp::SamplerOptions;

RateMatrix repeat_row(const std::vector<double>& v, std::size_t rows, Interval iv) {
  std::vector<double> data;
  for (std::size_t i = 0; i < rows; ++i) data.insert(data.end(), v.begin(), v.end());
  return RateMatrix(rows, v.size(), std::move(data), iv);
}

::testing::AssertionResult well_formed(const EventMatrix& m, double a, double b) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const std::size_t n = m.row_length(i);
    for (std::size_t j = n; j < m.cols(); ++j) {
      if (!EventMatrix::is_missing(m(i, j))) return ::testing::AssertionFailure() << "row " << i << " has a gap";
    }
    auto r = testutil::valid_series(m.row(i), a, b);
    if (!r) return r << " in row " << i;
  }
  return ::testing::AssertionSuccess();
}

TEST(RateMatrix, Validation) {
  EXPECT_THROW(RateMatrix(0, 1, {}, Interval(0, 1)), nhppp::DomainError);
  EXPECT_THROW(RateMatrix(1, 2, {1.0}, Interval(0, 1)), nhppp::DomainError);
  EXPECT_THROW(RateMatrix(1, 1, {-1.0}, Interval(0, 1)), nhppp::DomainError);
  EXPECT_THROW(RateMatrix(1, 1, {1.0}, Interval(1, 1)), nhppp::DomainError);
  EXPECT_THROW(RateMatrix::from_rows({{1, 2}, {3}}, Interval(0, 1)), nhppp::DomainError);
  const auto m = RateMatrix::from_rows({{1, 2}, {3, 4}}, Interval(0, 1));
  EXPECT_EQ(m(1, 0), 3.0);
  EXPECT_EQ(m.row(1)[1], 4.0);
}

TEST(EventMatrix, PaddingAndShrink) {
  auto m = EventMatrix::from_rows({{1.0, 2.0}, {}, {0.5}});
  EXPECT_EQ(m.cols(), 2u);
  EXPECT_EQ(m.row_length(1), 0u);
  EXPECT_TRUE(EventMatrix::is_missing(m(2, 1)));
  EXPECT_EQ(m.to_rows()[0], (nhppp::EventSeries{1.0, 2.0}));
  auto empty = EventMatrix::from_rows({{}, {}});
  EXPECT_EQ(empty.cols(), 0u);
}

TEST(VdrawStepRegular, SingleRowMatchesScalar) {
  const std::vector<double> v{1, 4, 0.5, 2};
  const RateMatrix rates = repeat_row(v, 1, Interval(0, 2));
  std::vector<double> a_times, b_times;
  for (std::size_t r = 0; r < 5000; ++r) {
    RngStream s1(1, r), s2(2, r);
    const auto row = nhppp::vdraw_sc_step_regular(s1, rates).row(0);
    a_times.insert(a_times.end(), row.begin(), row.end());
    const auto e = nhppp::draw_sc_step_regular(s2, v, Interval(0, 2));
    b_times.insert(b_times.end(), e.begin(), e.end());
  }
  EXPECT_GT(oracle::ks_two_p(a_times, b_times), 0.01);
}

TEST(VdrawStepRegular, AllZeroHasNoColumns) {
  RngStream s(1);
  const auto m = nhppp::vdraw_sc_step_regular(s, RateMatrix(3, 4, std::vector<double>(12, 0.0), Interval(0, 1)));
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 0u);
  const auto f = nhppp::vdraw_sc_step_regular(s, RateMatrix(3, 4, std::vector<double>(12, 0.0), Interval(0, 1)),
                                              SamplerOptions::first_only());
  EXPECT_EQ(f.cols(), 0u);
}

TEST(VdrawStepRegular, RandomRatesWellFormed) {
  RngStream gen(7);
  std::vector<double> data(20);
  for (auto& x : data) x = gen.uniform01();
  const RateMatrix rates(4, 5, data, Interval(1, 4));
  RngStream s(8);
  const auto m = nhppp::vdraw_sc_step_regular(s, rates);
  EXPECT_EQ(m.rows(), 4u);
  EXPECT_TRUE(well_formed(m, 1, 4));
}

TEST(VdrawStepRegular, FirstOnlySingleColumnAndLaw) {
  const std::vector<double> v = il::majorizer_b().values();
  const RateMatrix rates = repeat_row(v, 20000, il::interval());
  RngStream s(9);
  const auto m = nhppp::vdraw_sc_step_regular(s, rates, SamplerOptions::first_only());
  ASSERT_EQ(m.cols(), 1u);
  EXPECT_TRUE(well_formed(m, 0, il::kEnd));
  std::vector<double> batch_first;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row_length(i)) batch_first.push_back(m(i, 0));
  }
  std::vector<double> scalar_first;
  for (std::size_t r = 0; r < 20000; ++r) {
    RngStream rs(10, r);
    const auto e = nhppp::draw_sc_step_regular(rs, v, il::interval(), SamplerOptions::first_only());
    if (!e.empty()) scalar_first.push_back(e.front());
  }
  EXPECT_GT(oracle::ks_two_p(batch_first, scalar_first), 0.01);
}

TEST(VdrawStepRegular, ParallelMatchesSequential) {
  RngStream gen(11);
  std::vector<double> data(300 * 6);
  for (auto& x : data) x = 3 * gen.uniform01();
  const RateMatrix rates(300, 6, data, Interval(0, 2));
  nhppp::BatchOptions par;
  par.jobs = 4;
  for (const auto& opts : {SamplerOptions::all(), SamplerOptions::first_only()}) {
    RngStream a(12), b(12);
    const auto seq = nhppp::vdraw_sc_step_regular(a, rates, opts);
    const auto thr = nhppp::vdraw_sc_step_regular(b, rates, opts, par);
    ASSERT_EQ(seq.rows(), thr.rows());
    ASSERT_EQ(seq.cols(), thr.cols());
    for (std::size_t i = 0; i < seq.rows(); ++i) EXPECT_EQ(seq.row(i), thr.row(i));
  }
}

TEST(VdrawStepRegular, RowsIndependent) {
  // Row counts of a 2-row batch over 1000 batches are uncorrelated.
  const RateMatrix rates = repeat_row({2, 1, 3}, 2, Interval(0, 3));
  std::vector<double> x, y;
  for (std::size_t r = 0; r < 1000; ++r) {
    RngStream s(13, r);
    const auto m = nhppp::vdraw_sc_step_regular(s, rates);
    x.push_back(static_cast<double>(m.row_length(0)));
    y.push_back(static_cast<double>(m.row_length(1)));
  }
  const double mx = oracle::mean(x), my = oracle::mean(y);
  double cov = 0;
  for (std::size_t i = 0; i < x.size(); ++i) cov += (x[i] - mx) * (y[i] - my);
  cov /= static_cast<double>(x.size() - 1);
  EXPECT_LT(std::fabs(cov / std::sqrt(oracle::variance(x) * oracle::variance(y))), 0.1);
}

TEST(VztdrawStepRegular, NonEmptyRowsAndLaw) {
  const RateMatrix rates = repeat_row({0.2, 0.6}, 10000, Interval(0, 1));
  RngStream s(14);
  const auto m = nhppp::vztdraw_sc_step_regular(s, rates);
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ASSERT_GE(m.row_length(i), 1u);
    counts.push_back(m.row_length(i));
  }
  EXPECT_TRUE(well_formed(m, 0, 1));
  EXPECT_GT(oracle::pearson_counts_p(counts, oracle::truncated_pmf(0.4, 1)), 0.01);
}

TEST(VztdrawStepRegular, SingleRowMatchesScalar) {
  const std::vector<double> v{0.1, 0.3, 0.2};
  const RateMatrix rates = repeat_row(v, 1, Interval(0, 3));
  std::vector<double> a, b;
  for (std::size_t r = 0; r < 5000; ++r) {
    RngStream s1(15, r), s2(16, r);
    const auto row = nhppp::vztdraw_sc_step_regular(s1, rates).row(0);
    a.insert(a.end(), row.begin(), row.end());
    const auto e = nhppp::ztdraw_sc_step_regular(s2, v, Interval(0, 3));
    b.insert(b.end(), e.begin(), e.end());
  }
  EXPECT_GT(oracle::ks_two_p(a, b), 0.01);
}

TEST(VztdrawStepRegular, ZeroRowNamed) {
  const RateMatrix rates = RateMatrix::from_rows({{1, 1}, {0, 0}, {1, 0}}, Interval(0, 1));
  RngStream s(1);
  try {
    nhppp::vztdraw_sc_step_regular(s, rates);
    FAIL() << "expected an impossible-condition error";
  } catch (const nhppp::ImpossibleConditionError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos) << e.what();
  }
}

TEST(VdrawIntensity, EqualMajorizerAcceptsAll) {
  const RateMatrix rates = repeat_row({2, 2}, 500, Interval(0, 1));
  nhppp::ThinningStats stats;
  RngStream s(17);
  const auto m = nhppp::vdraw_intensity_step_regular(s, [](double) { return 2.0; }, rates, {}, {}, &stats);
  EXPECT_EQ(stats.accepted, stats.proposals);
  EXPECT_TRUE(well_formed(m, 0, 1));
}

TEST(VdrawIntensity, LipschitzMajorizerEfficiency) {
  const RateMatrix rates = repeat_row(il::majorizer_b().values(), 2000, il::interval());
  nhppp::ThinningStats stats;
  RngStream s(18);
  const auto m = nhppp::vdraw_intensity_step_regular(s, [](double t) { return il::lambda(t); }, rates, {}, {}, &stats);
  EXPECT_NEAR(stats.efficiency(), 0.245, 0.01);
  EXPECT_TRUE(well_formed(m, 0, il::kEnd));
}

TEST(VdrawIntensity, SingleRowMatchesScalarThinning) {
  const auto maj = il::majorizer_c();
  const RateMatrix rates = repeat_row(maj.values(), 1, il::interval());
  auto lambda = [](double t) { return il::lambda(t); };
  std::vector<double> a, b;
  for (std::size_t r = 0; r < 3000; ++r) {
    RngStream s1(19, r), s2(20, r);
    const auto row = nhppp::vdraw_intensity_step_regular(s1, lambda, rates).row(0);
    a.insert(a.end(), row.begin(), row.end());
    const auto e = nhppp::draw_thinning(s2, lambda, maj, il::interval());
    b.insert(b.end(), e.begin(), e.end());
  }
  EXPECT_GT(oracle::ks_two_p(a, b), 0.01);
}

TEST(VdrawIntensity, RowIndexedLambda) {
  // Row i has intensity (i + 1) under a majorizer of 3.
  const RateMatrix rates = repeat_row({3, 3}, 3, Interval(0, 1));
  std::vector<double> totals(3, 0.0);
  for (std::size_t r = 0; r < 3000; ++r) {
    RngStream s(21, r);
    const auto m = nhppp::vdraw_intensity_step_regular(
        s, [](std::size_t i, double) { return static_cast<double>(i + 1); }, rates);
    for (std::size_t i = 0; i < 3; ++i) totals[i] += static_cast<double>(m.row_length(i));
  }
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(totals[i] / 3000, static_cast<double>(i + 1), 0.1);
}

TEST(VdrawIntensity, ViolationNamesRow) {
  const RateMatrix rates = RateMatrix::from_rows({{60, 60}, {40, 40}}, Interval(0, 1));
  RngStream s(22);
  try {
    nhppp::vdraw_intensity_step_regular(s, [](double) { return 50.0; }, rates);
    FAIL() << "expected a majorization violation";
  } catch (const nhppp::MajorizationViolation& e) {
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos) << e.what();
  }
}

TEST(VztdrawIntensity, RowsNonEmpty) {
  const RateMatrix rates = repeat_row({1, 1}, 200, Interval(0, 1));
  RngStream s(23);
  const auto m = nhppp::vztdraw_intensity_step_regular(s, [](double t) { return t; }, rates);
  for (std::size_t i = 0; i < m.rows(); ++i) EXPECT_GE(m.row_length(i), 1u);
}

}  // namespace
