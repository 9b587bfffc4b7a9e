// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

// Reference computations for the tests, written independently of the
// library: brute-force pmfs, adaptive quadrature, Pearson and KS tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace oracle {

/// Poisson(mean) pmf by log-space summation.
inline double poisson_pmf(std::uint64_t k, double mean) {
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(mean) - mean - std::lgamma(kd + 1.0));
}

/// Poisson(mean) renormalized on {floor, floor + 1, ...}.
inline std::function<double(std::uint64_t)> truncated_pmf(double mean, std::uint64_t floor) {
  double below = 0.0;
  for (std::uint64_t k = 0; k < floor; ++k) below += poisson_pmf(k, mean);
  const double norm = 1.0 - below;
  return [=](std::uint64_t k) { return k < floor ? 0.0 : poisson_pmf(k, mean) / norm; };
}

inline double chi2_upper(double stat, double df) {
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(df), stat));
}

/// Pearson chi-square of integer counts against a pmf. Consecutive values
/// are pooled left to right until each cell expects at least `min_expected`
/// observations; the upper tail beyond the last cell joins it.
inline double pearson_counts_p(const std::vector<std::size_t>& counts, const std::function<double(std::uint64_t)>& pmf,
                               double min_expected = 5.0) {
  std::map<std::uint64_t, double> observed;
  std::uint64_t top = 0;
  for (auto c : counts) {
    observed[c] += 1.0;
    top = std::max<std::uint64_t>(top, c);
  }
  const double n = static_cast<double>(counts.size());
  std::vector<double> o, e;
  double co = 0.0, ce = 0.0, used = 0.0;
  for (std::uint64_t k = 0; k <= top + 50; ++k) {
    const double p = pmf(k);
    co += observed.count(k) ? observed[k] : 0.0;
    ce += n * p;
    used += p;
    if (ce >= min_expected) {
      o.push_back(co);
      e.push_back(ce);
      co = ce = 0.0;
    }
  }
  // Remaining observations and probability mass join the last cell.
  const double rest = n * std::max(0.0, 1.0 - used);
  if (e.empty()) return 1.0;
  o.back() += co;
  e.back() += ce + rest;
  double stat = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i) stat += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
  if (o.size() < 2) return 1.0;
  return chi2_upper(stat, static_cast<double>(o.size() - 1));
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13,
                               int depth = 50) {
  auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int d) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = simpson(lo, mid, flo, flm, fmid);
        const double right = simpson(mid, hi, fmid, frm, fhi);
        if (d <= 0 || std::fabs(left + right - whole) <= 15.0 * eps) {
          return left + right + (left + right - whole) / 15.0;
        }
        return rec(lo, mid, flo, flm, fmid, left, eps / 2.0, d - 1) +
               rec(mid, hi, fmid, frm, fhi, right, eps / 2.0, d - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

/// Asymptotic Kolmogorov p-value with the small-sample correction
/// sqrt(n) + 0.12 + 0.11 / sqrt(n).
inline double kolmogorov_p(double d, double n_eff) {
  const double s = std::sqrt(n_eff);
  const double x = (s + 0.12 + 0.11 / s) * d;
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

inline double ks_one_p(std::vector<double> x, const std::function<double(double)>& cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return kolmogorov_p(d, n);
}

inline double ks_two_p(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return kolmogorov_p(d, na * nb / (na + nb));
}

inline double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

inline double variance(const std::vector<double>& x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

/// The benchmark intensity e^{0.2 t} (1 + sin t), restated for quadrature.
inline double illustration_lambda(double t) { return std::exp(0.2 * t) * (1.0 + std::sin(t)); }

}  // namespace oracle
