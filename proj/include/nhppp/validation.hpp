// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file validation.hpp
/// Goodness-of-fit metrics for simulated series against their theoretical
/// count and event-time laws, plus the two-sample tests used to compare
/// samplers with each other.
///
/// The count chi-square is reported twice. The table form uses observed
/// and expected bin proportions, Sum (o - e)^2 / e, with the upper-tail
/// chi-square probability as its p-value, so p near 1 means a good fit.
/// The Pearson form scales the same sum by the number of runs and is the
/// usual test with power against misfit.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "nhppp/errors.hpp"
#include "nhppp/intensity.hpp"
#include "nhppp/rng_stream.hpp"
#include "nhppp/types.hpp"

namespace nhppp {

//---------------------------------------------------------------------------//
// Distribution helpers
//---------------------------------------------------------------------------//

/// P(chi^2_df >= x).
inline double chi2_survival(double x, double df) {
  if (!(df > 0.0)) throw DomainError("chi2_survival: degrees of freedom must be positive");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

/// P(X <= k) for X ~ Poisson(mean).
inline double poisson_cdf(std::uint64_t k, double mean) {
  if (mean == 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(k) + 1.0, mean);
}

inline double poisson_pmf(std::uint64_t k, double mean) {
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return boost::math::pdf(boost::math::poisson_distribution<double>(mean), static_cast<double>(k));
}

/// Smallest k with P(X <= k) >= q.
inline std::uint64_t poisson_quantile(double q, double mean) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("poisson_quantile: q must lie in (0, 1)");
  if (mean == 0.0) return 0;
  const double guess = std::max(0.0, std::floor(mean - 10.0 * std::sqrt(mean) - 10.0));
  auto k = static_cast<std::uint64_t>(guess);
  while (k > 0 && poisson_cdf(k - 1, mean) >= q) --k;
  while (poisson_cdf(k, mean) < q) ++k;
  return k;
}

/// Kolmogorov limiting survival P(K > x).
inline double kolmogorov_survival(double x) {
  if (x < 0.18) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Empirical quantile by inverse ECDF: the smallest order statistic whose
/// ECDF value reaches p.
template <class T>
T empirical_quantile(std::span<const T> sorted, double p) {
  if (sorted.empty()) throw ArgumentError("empirical_quantile: empty sample");
  const auto n = static_cast<double>(sorted.size());
  auto idx = static_cast<std::size_t>(std::ceil(n * p - 1e-9 * n));
  idx = std::clamp<std::size_t>(idx, 1, sorted.size());
  return sorted[idx - 1];
}

//---------------------------------------------------------------------------//
// Count metrics
//---------------------------------------------------------------------------//

struct CountInterval {
  double level;  ///< e.g. 0.95
  std::size_t lower;
  std::size_t upper;
};

struct CountMetrics {
  std::size_t runs = 0;
  double theoretical_mass = 0.0;
  double sample_mean = 0.0;
  double sample_variance = 0.0;  ///< divisor J - 1
  double bias_mean = 0.0;
  double rel_bias_mean = 0.0;          ///< ratio
  double rel_bias_mean_percent = 0.0;  ///< ratio x 100
  double bias_var = 0.0;
  double rel_bias_var = 0.0;
  double rel_bias_var_percent = 0.0;
  std::array<CountInterval, 4> intervals{};  ///< 95, 90, 75, 50 %
};

inline constexpr std::array<double, 4> kIntervalLevels{0.95, 0.90, 0.75, 0.50};

/// Bias of the first two moments and equal-tailed empirical intervals of
/// the run counts. The theoretical variance equals the mass N.
inline CountMetrics count_metrics(std::span<const std::size_t> counts, double theoretical_mass) {
  if (counts.size() < 2) throw ArgumentError("count_metrics: need at least two runs");
  if (!(theoretical_mass > 0.0) || !std::isfinite(theoretical_mass)) {
    throw DomainError("count_metrics: relative metrics are undefined for a zero theoretical mass");
  }
  CountMetrics m;
  m.runs = counts.size();
  m.theoretical_mass = theoretical_mass;
  const auto J = static_cast<double>(counts.size());
  double sum = 0.0;
  for (auto c : counts) sum += static_cast<double>(c);
  m.sample_mean = sum / J;
  double ss = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - m.sample_mean;
    ss += d * d;
  }
  m.sample_variance = ss / (J - 1.0);
  m.bias_mean = m.sample_mean - theoretical_mass;
  m.rel_bias_mean = m.bias_mean / theoretical_mass;
  m.rel_bias_mean_percent = 100.0 * m.rel_bias_mean;
  m.bias_var = m.sample_variance - theoretical_mass;
  m.rel_bias_var = m.bias_var / theoretical_mass;
  m.rel_bias_var_percent = 100.0 * m.rel_bias_var;

  std::vector<std::size_t> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  const std::span<const std::size_t> view(sorted);
  for (std::size_t i = 0; i < kIntervalLevels.size(); ++i) {
    const double tail = (1.0 - kIntervalLevels[i]) / 2.0;
    m.intervals[i] = {kIntervalLevels[i], empirical_quantile(view, tail), empirical_quantile(view, 1.0 - tail)};
  }
  return m;
}

//---------------------------------------------------------------------------//
// Chi-square goodness of fit
//---------------------------------------------------------------------------//

struct Chi2Result {
  double statistic = 0.0;  ///< table form, bin proportions
  double df = 0.0;
  double p_value = 1.0;  ///< upper tail of the table form
  double lower_tail_p = 0.0;  ///< P(chi^2_df <= statistic), the complement of p_value
  double pearson_statistic = 0.0;
  double pearson_p_value = 1.0;
  std::size_t bins = 0;
};

namespace detail {

inline Chi2Result chi2_from_proportions(std::span<const double> observed, std::span<const double> expected,
                                        double n) {
  Chi2Result r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) continue;
    const double d = observed[i] - expected[i];
    r.statistic += d * d / expected[i];
    ++r.bins;
  }
  r.df = static_cast<double>(r.bins) - 1.0;
  if (r.df < 1.0) throw ArgumentError("chi-square test needs at least two bins with positive expectation");
  r.p_value = chi2_survival(r.statistic, r.df);
  r.lower_tail_p = r.statistic > 0.0 ? boost::math::gamma_p(r.df / 2.0, r.statistic / 2.0) : 0.0;
  r.pearson_statistic = n * r.statistic;
  r.pearson_p_value = chi2_survival(r.pearson_statistic, r.df);
  return r;
}

}  // namespace detail

/// Count bins [0, L), {L}, {L + 1}, ..., [U, inf) with L, U the 0.001 and
/// 0.999 Poisson(N) quantiles; U - L + 1 degrees of freedom when L > 0.
struct CountChi2Result : Chi2Result {
  std::uint64_t lower_quantile = 0;
  std::uint64_t upper_quantile = 0;
};

inline CountChi2Result chi2_gof_counts(std::span<const std::size_t> counts, double theoretical_mass) {
  if (counts.empty()) throw ArgumentError("chi2_gof_counts: no runs");
  if (!(theoretical_mass > 0.0)) throw DomainError("chi2_gof_counts: theoretical mass must be positive");
  const std::uint64_t L = poisson_quantile(0.001, theoretical_mass);
  const std::uint64_t U = poisson_quantile(0.999, theoretical_mass);
  const std::size_t nbins = static_cast<std::size_t>(U - L) + 2;
  std::vector<double> obs(nbins, 0.0), exp(nbins, 0.0);
  for (auto c : counts) {
    std::size_t bin;
    if (c < L) bin = 0;
    else if (c >= U) bin = nbins - 1;
    else bin = static_cast<std::size_t>(c - L) + 1;
    obs[bin] += 1.0;
  }
  const auto J = static_cast<double>(counts.size());
  for (auto& o : obs) o /= J;
  exp[0] = L == 0 ? 0.0 : poisson_cdf(L - 1, theoretical_mass);
  for (std::uint64_t x = L; x < U; ++x) exp[static_cast<std::size_t>(x - L) + 1] = poisson_pmf(x, theoretical_mass);
  exp[nbins - 1] = U == 0 ? 1.0 : boost::math::gamma_p(static_cast<double>(U), theoretical_mass);
  CountChi2Result r;
  static_cast<Chi2Result&>(r) = detail::chi2_from_proportions(obs, exp, J);
  r.lower_quantile = L;
  r.upper_quantile = U;
  return r;
}

//---------------------------------------------------------------------------//
// Wasserstein-1
//---------------------------------------------------------------------------//

struct W1Result {
  double w1 = 0.0;
  double p_value = std::numeric_limits<double>::quiet_NaN();  ///< NaN when not resampled
};

inline constexpr std::size_t kDefaultResamples = 1000;

namespace detail {

/// Sum over k of |F_n(k) - F(k)| against a tabulated CDF; beyond the table
/// F is taken as 1.
inline double discrete_w1(std::span<const std::size_t> counts, std::span<const double> cdf) {
  std::size_t top = cdf.size();
  for (auto c : counts) top = std::max(top, c + 1);
  std::vector<double> ecdf(top, 0.0);
  for (auto c : counts) ecdf[c] += 1.0;
  const auto J = static_cast<double>(counts.size());
  double running = 0.0, w1 = 0.0;
  for (std::size_t k = 0; k < top; ++k) {
    running += ecdf[k];
    const double f = k < cdf.size() ? cdf[k] : 1.0;
    w1 += std::fabs(running / J - f);
  }
  return w1;
}

inline std::vector<double> poisson_cdf_table(double mean) {
  std::vector<double> cdf;
  for (std::uint64_t k = 0;; ++k) {
    cdf.push_back(poisson_cdf(k, mean));
    if (static_cast<double>(k) > mean && 1.0 - cdf.back() < 1e-17) break;
  }
  return cdf;
}

}  // namespace detail

/// W1 between the empirical count law and Poisson(N), with a bootstrap
/// p-value: the share of samples of the same size drawn from Poisson(N)
/// whose W1 is at least the observed one.
inline W1Result wasserstein1_counts(std::span<const std::size_t> counts, double theoretical_mass,
                                    RngStream* stream = nullptr, std::size_t resamples = kDefaultResamples) {
  if (counts.empty()) throw ArgumentError("wasserstein1_counts: no runs");
  if (!(theoretical_mass >= 0.0)) throw DomainError("wasserstein1_counts: negative mass");
  const std::vector<double> cdf = detail::poisson_cdf_table(theoretical_mass);
  W1Result r;
  r.w1 = detail::discrete_w1(counts, cdf);
  if (!stream || resamples == 0) return r;
  std::vector<std::size_t> boot(counts.size());
  std::size_t exceed = 0;
  for (std::size_t b = 0; b < resamples; ++b) {
    for (auto& x : boot) x = static_cast<std::size_t>(poisson(*stream, theoretical_mass));
    if (detail::discrete_w1(boot, cdf) >= r.w1) ++exceed;
  }
  r.p_value = static_cast<double>(exceed + 1) / static_cast<double>(resamples + 1);
  return r;
}

/// Area between two empirical CDFs.
inline double wasserstein1_samples(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("wasserstein1_samples: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double prev = std::min(a.front(), b.front());
  double w1 = 0.0;
  while (i < a.size() || j < b.size()) {
    double next;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) next = a[i];
    else next = b[j];
    w1 += std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb) * (next - prev);
    prev = next;
    while (i < a.size() && a[i] == next) ++i;
    while (j < b.size() && b[j] == next) ++j;
  }
  return w1;
}

/// Area between the empirical CDF of a sorted sample and a continuous CDF
/// on `support`, integrated with the trapezoid rule on `grid` cells.
inline double wasserstein1_cdf(std::span<const double> sorted, const std::function<double(double)>& cdf,
                               const Interval& support, std::size_t grid = 20000) {
  if (sorted.empty()) throw ArgumentError("wasserstein1_cdf: empty sample");
  if (grid == 0 || support.empty()) return 0.0;
  const auto n = static_cast<double>(sorted.size());
  const double h = support.length() / static_cast<double>(grid);
  std::size_t below = 0;
  auto diff_at = [&](double t) {
    while (below < sorted.size() && sorted[below] <= t) ++below;
    return std::fabs(static_cast<double>(below) / n - cdf(t));
  };
  double prev = diff_at(support.a());
  double area = 0.0;
  for (std::size_t g = 1; g <= grid; ++g) {
    const double t = g == grid ? support.b() : support.a() + h * static_cast<double>(g);
    const double cur = diff_at(t);
    area += 0.5 * (prev + cur) * h;
    prev = cur;
  }
  return area;
}

//---------------------------------------------------------------------------//
// Kolmogorov-Smirnov
//---------------------------------------------------------------------------//

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

namespace detail {
inline double ks_p(double d, double effective_n) {
  const double s = std::sqrt(effective_n);
  return kolmogorov_survival((s + 0.12 + 0.11 / s) * d);
}
}  // namespace detail

/// One-sample KS against a continuous CDF (asymptotic p-value with the
/// small-sample correction of Stephens).
inline KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw ArgumentError("ks_one_sample: empty sample");
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, detail::ks_p(d, n)};
}

/// Two-sample KS statistic and asymptotic p-value.
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, detail::ks_p(d, na * nb / (na + nb))};
}

//---------------------------------------------------------------------------//
// Two-sample chi-square on counts
//---------------------------------------------------------------------------//

/// Homogeneity test of two count samples: a 2 x K contingency table over
/// count values, adjacent values merged until each pooled bin has at
/// least `min_pooled` observations.
inline Chi2Result chi2_two_sample_counts(std::span<const std::size_t> a, std::span<const std::size_t> b,
                                         std::size_t min_pooled = 10) {
  if (a.empty() || b.empty()) throw ArgumentError("chi2_two_sample_counts: empty sample");
  std::size_t top = 0;
  for (auto c : a) top = std::max(top, c);
  for (auto c : b) top = std::max(top, c);
  std::vector<double> ha(top + 1, 0.0), hb(top + 1, 0.0);
  for (auto c : a) ha[c] += 1.0;
  for (auto c : b) hb[c] += 1.0;

  std::vector<double> ba, bb;
  double acc_a = 0.0, acc_b = 0.0;
  for (std::size_t k = 0; k <= top; ++k) {
    acc_a += ha[k];
    acc_b += hb[k];
    if (acc_a + acc_b >= static_cast<double>(min_pooled)) {
      ba.push_back(acc_a);
      bb.push_back(acc_b);
      acc_a = acc_b = 0.0;
    }
  }
  if (acc_a + acc_b > 0.0) {
    if (ba.empty()) {
      ba.push_back(0.0);
      bb.push_back(0.0);
    }
    ba.back() += acc_a;
    bb.back() += acc_b;
  }

  Chi2Result r;
  r.bins = ba.size();
  if (r.bins < 2) {
    r.df = 0.0;
    return r;
  }
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const double n = na + nb;
  for (std::size_t k = 0; k < r.bins; ++k) {
    const double pooled = ba[k] + bb[k];
    const double ea = pooled * na / n;
    const double eb = pooled * nb / n;
    r.pearson_statistic += (ba[k] - ea) * (ba[k] - ea) / ea + (bb[k] - eb) * (bb[k] - eb) / eb;
  }
  r.df = static_cast<double>(r.bins) - 1.0;
  r.pearson_p_value = chi2_survival(r.pearson_statistic, r.df);
  r.statistic = r.pearson_statistic / n;
  r.p_value = chi2_survival(r.statistic, r.df);
  r.lower_tail_p = r.statistic > 0.0 ? boost::math::gamma_p(r.df / 2.0, r.statistic / 2.0) : 0.0;
  return r;
}

//---------------------------------------------------------------------------//
// Event-time law
//---------------------------------------------------------------------------//

struct TimeGofResult {
  Chi2Result chi2;
  W1Result w1;
  std::size_t events = 0;
};

/// Pooled event times against the Lambda-normalized CDF
/// F(t) = (Lambda(t) - Lambda(a)) / (Lambda(b) - Lambda(a)): chi-square on
/// `bins` equal-width time bins and W1 between the CDFs.
///
/// The W1 p-value resamples m = min(n, 20000) times from F through the
/// inverse and compares sqrt(m) W1_m with sqrt(n) W1_n; resamples = 0
/// skips it.
inline TimeGofResult event_time_gof(std::span<const double> times, const CumulativeIntensity& cum,
                                    std::size_t bins = 70, RngStream* stream = nullptr,
                                    std::size_t resamples = 200) {
  if (bins < 2) throw ArgumentError("event_time_gof: need at least two bins");
  if (times.empty()) throw ArgumentError("event_time_gof: no events");
  const double mass = cum.mass();
  if (!(mass > 0.0)) throw DomainError("event_time_gof: zero cumulative mass");
  const Interval& iv = cum.interval();
  const double lower = cum.lower();
  auto cdf = [&cum, lower, mass](double t) { return std::clamp((cum(t) - lower) / mass, 0.0, 1.0); };

  TimeGofResult r;
  r.events = times.size();
  std::vector<double> obs(bins, 0.0), exp(bins, 0.0);
  const double width = iv.length() / static_cast<double>(bins);
  for (double t : times) {
    auto m = static_cast<std::ptrdiff_t>(std::ceil((t - iv.a()) / width)) - 1;
    m = std::clamp<std::ptrdiff_t>(m, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    obs[static_cast<std::size_t>(m)] += 1.0;
  }
  const auto n = static_cast<double>(times.size());
  for (auto& o : obs) o /= n;
  double prev = 0.0;
  for (std::size_t m = 0; m < bins; ++m) {
    const double hi = m + 1 == bins ? 1.0 : cdf(iv.a() + width * static_cast<double>(m + 1));
    exp[m] = hi - prev;
    prev = hi;
  }
  r.chi2 = detail::chi2_from_proportions(obs, exp, n);

  std::vector<double> sorted(times.begin(), times.end());
  std::sort(sorted.begin(), sorted.end());
  const std::function<double(double)> F = cdf;
  r.w1.w1 = wasserstein1_cdf(sorted, F, iv);
  if (stream && resamples > 0) {
    const std::size_t m = std::min<std::size_t>(sorted.size(), 20000);
    const double observed = std::sqrt(n) * r.w1.w1;
    std::vector<double> boot(m);
    std::size_t exceed = 0;
    for (std::size_t b = 0; b < resamples; ++b) {
      for (auto& x : boot) x = cum.inverse(lower + (1.0 - stream->uniform01()) * mass);
      std::sort(boot.begin(), boot.end());
      if (std::sqrt(static_cast<double>(m)) * wasserstein1_cdf(boot, F, iv) >= observed) ++exceed;
    }
    r.w1.p_value = static_cast<double>(exceed + 1) / static_cast<double>(resamples + 1);
  }
  return r;
}

//---------------------------------------------------------------------------//
// Full count report
//---------------------------------------------------------------------------//

struct ValidationReport {
  CountMetrics counts;
  CountChi2Result chi2;
  W1Result w1;
};

inline ValidationReport validate_counts(std::span<const std::size_t> counts, double theoretical_mass,
                                        RngStream* stream = nullptr,
                                        std::size_t resamples = kDefaultResamples) {
  ValidationReport r;
  r.counts = count_metrics(counts, theoretical_mass);
  r.chi2 = chi2_gof_counts(counts, theoretical_mass);
  r.w1 = wasserstein1_counts(counts, theoretical_mass, stream, resamples);
  return r;
}

}  // namespace nhppp
