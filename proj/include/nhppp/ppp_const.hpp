// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file ppp_const.hpp
/// Homogeneous (constant-rate) Poisson point process samplers.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "nhppp/rng_stream.hpp"
#include "nhppp/types.hpp"

namespace nhppp {

namespace detail {

inline void check_rate(double rate, const char* who) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw DomainError(std::string(who) + ": rate must be finite and non-negative");
  }
}

inline std::size_t cap_of(std::optional<std::size_t> at_most) {
  SamplerOptions opts;
  opts.at_most_k = at_most;
  return opts.cap();
}

/// `n` iid uniform times on (a, b], of which the `cap` earliest are kept.
inline EventSeries uniform_order_statistics(RngStream& stream, const Interval& interval,
                                            std::uint64_t n, std::size_t cap) {
  EventSeries times;
  times.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < n; ++i) {
    // b - (b - a) U with U in [0, 1) lands in (a, b].
    times.push_back(interval.clamp(interval.b() - interval.length() * stream.uniform01()));
  }
  keep_earliest(times, cap);
  return times;
}

}  // namespace detail

/// Sequential sampling from cumulative exponential inter-arrival times.
/// With `at_most`, stops as soon as that many events are collected.
inline EventSeries ppp_sequential(RngStream& stream, const Interval& interval, double rate,
                                  std::optional<std::size_t> at_most = std::nullopt) {
  detail::check_rate(rate, "ppp_sequential");
  const std::size_t cap = detail::cap_of(at_most);
  EventSeries times;
  if (rate == 0.0 || interval.empty()) return times;
  const double mean = 1.0 / rate;
  double t = interval.a();
  while (t < interval.b() && times.size() < cap) {
    t += exponential(stream, mean);
    if (t < interval.b()) times.push_back(t);
  }
  return times;
}

/// Poisson count first, then sorted uniform times (order statistics).
/// With `at_most`, all points are drawn and the earliest are returned.
inline EventSeries ppp_orderstat(RngStream& stream, const Interval& interval, double rate,
                                 std::optional<std::size_t> at_most = std::nullopt) {
  detail::check_rate(rate, "ppp_orderstat");
  const std::size_t cap = detail::cap_of(at_most);
  if (rate == 0.0 || interval.empty()) return {};
  const std::uint64_t n = poisson(stream, rate * interval.length());
  return detail::uniform_order_statistics(stream, interval, n, cap);
}

/// Exactly `n` sorted uniform times on the interval.
inline EventSeries ppp_n(RngStream& stream, const Interval& interval, std::uint64_t n) {
  if (n > 0 && interval.empty()) {
    throw ImpossibleConditionError("ppp_n: cannot place events in an empty interval");
  }
  return detail::uniform_order_statistics(stream, interval, n, static_cast<std::size_t>(n));
}

/// Constant-rate process conditioned on at least `min_events` events.
inline EventSeries ztppp(RngStream& stream, const Interval& interval, double rate,
                         std::uint64_t min_events = 1,
                         std::optional<std::size_t> at_most = std::nullopt) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ImpossibleConditionError("ztppp: rate must be positive to guarantee events");
  }
  if (min_events == 0) throw ArgumentError("ztppp: min_events must be positive");
  if (interval.empty()) {
    throw ImpossibleConditionError("ztppp: empty interval has zero event probability");
  }
  const std::size_t cap = detail::cap_of(at_most);
  const std::uint64_t n = truncated_poisson(stream, rate * interval.length(), min_events);
  return detail::uniform_order_statistics(stream, interval, n, cap);
}

}  // namespace nhppp
