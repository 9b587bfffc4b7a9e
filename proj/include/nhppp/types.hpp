// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file types.hpp
/// Interval, event series and sampler option types.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "nhppp/errors.hpp"

namespace nhppp {

/// Event times of one realization, strictly increasing, inside (a, b].
using EventSeries = std::vector<double>;

/// The time window (a, b]. a == b is allowed and denotes an empty window.
class Interval {
 public:
  Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw DomainError("interval bounds must be finite");
    }
    if (!(a <= b)) {
      std::ostringstream msg;
      msg << "interval lower bound " << a << " exceeds upper bound " << b;
      throw DomainError(msg.str());
    }
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  bool empty() const noexcept { return a_ == b_; }
  bool contains(double t) const noexcept { return a_ < t && t <= b_; }

  /// Pull a time computed in floating point back into (a, b].
  double clamp(double t) const noexcept {
    if (t <= a_) return std::nextafter(a_, std::numeric_limits<double>::infinity());
    if (t > b_) return b_;
    return t;
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

/// Cardinality constraints applied to a sampler's output.
///
/// at_most_1 and at_most_k both cap the series to its earliest events;
/// at_least_1 conditions the draw on a non-empty series. at_most_1 together
/// with at_least_1 yields exactly one event.
struct SamplerOptions {
  bool at_most_1 = false;
  bool at_least_1 = false;
  std::optional<std::size_t> at_most_k;

  /// Maximum number of events to return.
  std::size_t cap() const {
    if (at_most_k && *at_most_k == 0) {
      throw ArgumentError("at_most_k must be a positive integer");
    }
    std::size_t limit = std::numeric_limits<std::size_t>::max();
    if (at_most_k) limit = *at_most_k;
    if (at_most_1) limit = 1;
    return limit;
  }

  static SamplerOptions all() { return {}; }
  static SamplerOptions first_only() {
    SamplerOptions o;
    o.at_most_1 = true;
    return o;
  }
  static SamplerOptions non_empty() {
    SamplerOptions o;
    o.at_least_1 = true;
    return o;
  }
};

namespace detail {

/// Keep the `cap` earliest entries of an unsorted sample, sorted.
inline void keep_earliest(std::vector<double>& values, std::size_t cap) {
  if (values.size() > cap) {
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(cap),
                     values.end());
    values.resize(cap);
  }
  std::sort(values.begin(), values.end());
}

}  // namespace detail

}  // namespace nhppp
