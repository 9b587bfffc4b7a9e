// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file illustration.hpp
/// The benchmark intensity lambda(t) = e^{rt} (1 + sin wt) on (0, 6 pi]
/// with r = 0.2, w = 1, its antiderivative, and the three thinning
/// majorizers used to study efficiency:
///   a: the constant 43.38, about lambda(6 pi);
///   b: 20 equal bins from the Lipschitz cone with K = 52.05;
///   c: 20 equal bins holding the exact supremum on each bin.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "nhppp/errors.hpp"
#include "nhppp/intensity.hpp"
#include "nhppp/majorizer.hpp"
#include "nhppp/nhppp_general.hpp"

namespace nhppp::illustration {

struct Params {
  double r = 0.2;
  double w = 1.0;
};

inline constexpr double kEnd = 6.0 * std::numbers::pi;
inline constexpr double kConstantMajorizer = 43.38;
inline constexpr double kLipschitzK = 52.05;
inline constexpr std::size_t kBins = 20;
inline constexpr double kTableStep = 1e-3;

inline Interval interval() { return {0.0, kEnd}; }

inline double lambda(double t, Params p = {}) { return std::exp(p.r * t) * (1.0 + std::sin(p.w * t)); }

inline double derivative(double t, Params p = {}) {
  return std::exp(p.r * t) * (p.r * (1.0 + std::sin(p.w * t)) + p.w * std::cos(p.w * t));
}

/// Antiderivative with Lambda(0) = 0.
inline double cumulative(double t, Params p = {}) {
  const double e = std::exp(p.r * t);
  const double rw = p.r * p.r + p.w * p.w;
  return (e * (p.r * std::sin(p.w * t) - p.w * std::cos(p.w * t)) + p.w) / rw + std::expm1(p.r * t) / p.r;
}

inline double mass(Params p = {}) { return cumulative(kEnd, p) - cumulative(0.0, p); }

inline LinearIntensity majorizer_a() { return {kConstantMajorizer, 0.0}; }

inline MajorizerSpec majorizer_b(Params p = {}) {
  return get_step_majorizer([p](double t) { return lambda(t, p); }, regular_breaks(interval(), kBins), false,
                            kLipschitzK);
}

/// Stationary points of lambda: r + r sin(wt) + w cos(wt) = 0, i.e.
/// R sin(wt + phi) = -r with R = sqrt(r^2 + w^2), phi = atan2(w, r).
inline std::vector<double> critical_points(const Interval& iv, Params p = {}) {
  std::vector<double> out;
  const double R = std::hypot(p.r, p.w);
  const double phi = std::atan2(p.w, p.r);
  const double base = std::asin(-p.r / R);
  const double two_pi = 2.0 * std::numbers::pi;
  for (double root : {base, std::numbers::pi - base}) {
    const double theta0 = root - phi;
    const double lo = p.w * iv.a();
    const double hi = p.w * iv.b();
    for (double k = std::floor((lo - theta0) / two_pi) - 1.0; theta0 + k * two_pi <= hi + two_pi; k += 1.0) {
      const double t = (theta0 + k * two_pi) / p.w;
      if (t >= iv.a() && t <= iv.b()) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Least upper bound of lambda on each of the 20 equal bins.
inline std::vector<double> majorizer_c_values(Params p = {}) {
  const std::vector<double> breaks = regular_breaks(interval(), kBins);
  const std::vector<double> crit = critical_points(interval(), p);
  std::vector<double> values(kBins);
  for (std::size_t m = 0; m < kBins; ++m) {
    double sup = std::max(lambda(breaks[m], p), lambda(breaks[m + 1], p));
    for (double t : crit) {
      if (t > breaks[m] && t < breaks[m + 1]) sup = std::max(sup, lambda(t, p));
    }
    values[m] = sup;
  }
  return values;
}

inline PiecewiseConstantRegular majorizer_c(Params p = {}) { return {majorizer_c_values(p), interval()}; }

inline PiecewiseConstantRegular majorizer_b_regular(Params p = {}) { return {majorizer_b(p).values(), interval()}; }

/// Majorizer by letter; b and c are regular 20-bin steps.
inline Majorizer majorizer(char which, Params p = {}) {
  switch (which) {
    case 'a': return majorizer_a();
    case 'b': return majorizer_b_regular(p);
    case 'c': return majorizer_c(p);
    default: throw ArgumentError(std::string("unknown illustration majorizer '") + which + "'");
  }
}

/// Integral of a majorizer over (0, 6 pi].
inline double majorizer_mass(char which, Params p = {}) {
  if (which == 'a') return kConstantMajorizer * kEnd;
  const std::vector<double> v = which == 'b' ? majorizer_b(p).values() : majorizer_c_values(p);
  const double width = kEnd / static_cast<double>(kBins);
  double total = 0.0;
  for (double x : v) total += x * width;
  return total;
}

/// Analytic Lambda with an inverse interpolated from a table of Lambda on
/// a regular time grid.
inline CumulativeIntensity cumulative_tabulated(Params p = {}, double step = kTableStep) {
  auto fn = [p](double t) { return cumulative(t, p); };
  auto table = std::make_shared<const TabulatedInverse>(fn, interval(), step);
  return CumulativeIntensity(fn, interval(), [table](double z) { return (*table)(z); });
}

/// Analytic Lambda without an inverse; sampling falls back to Brent.
inline CumulativeIntensity cumulative_numeric(Params p = {}) {
  return CumulativeIntensity([p](double t) { return cumulative(t, p); }, interval());
}

}  // namespace nhppp::illustration
