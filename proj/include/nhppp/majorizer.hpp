// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file majorizer.hpp
/// Automatic piecewise-constant majorizers for thinning.
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "nhppp/errors.hpp"
#include "nhppp/intensity.hpp"

namespace nhppp {

/// A step function that dominates some intensity, plus how it was built.
struct MajorizerSpec {
  PiecewiseConstant step;
  std::optional<double> lipschitz_K;
  bool is_monotone = false;

  const std::vector<double>& values() const noexcept { return step.values(); }
  const std::vector<double>& breakpoints() const noexcept { return step.breakpoints(); }
};

/// Upper bound of `fun` on each bin (a_m, b_m]:
///   max(fun(a_m), fun(b_m)) + c (b_m - a_m) / 2,
/// with c = 0 for monotone functions and c = K for K-Lipschitz ones.
/// Functions that are neither monotone nor Lipschitz are not detected.
template <class F>
MajorizerSpec get_step_majorizer(F&& fun, const std::vector<double>& breaks, bool is_monotone,
                                 std::optional<double> K = std::nullopt) {
  if (breaks.size() < 2) throw ArgumentError("get_step_majorizer: need at least two breakpoints");
  if (!is_monotone && !K) {
    throw ArgumentError("get_step_majorizer: a Lipschitz constant K is required for non-monotone functions");
  }
  if (K && !(*K >= 0.0)) throw ArgumentError("get_step_majorizer: K must be non-negative");
  detail::check_breakpoints(breaks, breaks.size() - 1, "get_step_majorizer");

  const double slope = is_monotone ? 0.0 : *K;
  std::vector<double> values(breaks.size() - 1);
  double left = fun(breaks.front());
  for (std::size_t m = 0; m + 1 < breaks.size(); ++m) {
    const double right = fun(breaks[m + 1]);
    values[m] = std::max(left, right) + slope * (breaks[m + 1] - breaks[m]) / 2.0;
    left = right;
  }
  return MajorizerSpec{PiecewiseConstant(std::move(values), breaks), K, is_monotone};
}

/// M + 1 equally spaced breakpoints covering the interval.
inline std::vector<double> regular_breaks(const Interval& interval, std::size_t bins) {
  if (bins == 0) throw ArgumentError("regular_breaks: need at least one bin");
  std::vector<double> breaks(bins + 1);
  for (std::size_t m = 0; m <= bins; ++m) {
    breaks[m] = interval.a() + interval.length() * static_cast<double>(m) / static_cast<double>(bins);
  }
  breaks.back() = interval.b();
  return breaks;
}

}  // namespace nhppp
