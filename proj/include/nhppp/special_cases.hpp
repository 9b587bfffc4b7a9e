// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file special_cases.hpp
/// Closed-form samplers for piecewise-constant, linear and log-linear
/// intensities, each with a zero-truncated ("zt") variant.
#pragma once

#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "nhppp/intensity.hpp"
#include "nhppp/rng_stream.hpp"
#include "nhppp/types.hpp"

namespace nhppp {

namespace detail {

/// Time transformation: a unit-rate process on (0, mass] mapped through
/// `invert`. Unconditional draws use sequential exponential gaps and stop
/// at the cap; at_least_1 draws a zero-truncated count and sorted uniforms.
///
/// `invert` receives non-decreasing z and returns the event time, or
/// nullopt once z is past the total mass. `mass` may be omitted for
/// unconditional draws when `invert` reports the end itself.
template <class Inverter>
EventSeries invert_unit_process(RngStream& stream, std::optional<double> mass, Inverter&& invert,
                                const Interval& interval, const SamplerOptions& opts) {
  const std::size_t cap = opts.cap();
  EventSeries times;
  auto emit = [&](double z) {
    std::optional<double> t = invert(z);
    if (!t) return false;
    times.push_back(interval.clamp(*t));
    return true;
  };

  if (opts.at_least_1) {
    if (!mass || !(*mass > 0.0)) {
      throw ImpossibleConditionError("cannot draw at least one event: total intensity mass is zero");
    }
    const std::uint64_t n = truncated_poisson(stream, *mass, 1);
    std::vector<double> u(static_cast<std::size_t>(n));
    for (auto& x : u) x = stream.uniform_open();
    keep_earliest(u, cap);
    times.reserve(u.size());
    for (double x : u) emit(x * *mass);
    return times;
  }

  double z = 0.0;
  while (times.size() < cap) {
    z -= std::log(stream.uniform_open());
    if (mass && z > *mass) break;
    if (!emit(z)) break;
  }
  return times;
}

template <class Closed>
auto always(const Closed& closed) {
  return [&closed](double z) -> std::optional<double> { return closed.inverse(z); };
}

}  // namespace detail

//---------------------------------------------------------------------------//
// Piecewise constant
//---------------------------------------------------------------------------//

/// Step intensity on arbitrary breakpoints; bins located by binary search
/// on the cumulative mass table.
inline EventSeries draw_sc_step(RngStream& stream, const PiecewiseConstant& spec,
                                const SamplerOptions& opts = {}) {
  const StepCumulative cumulative(spec);
  return detail::invert_unit_process(stream, cumulative.mass(), detail::always(cumulative),
                                     spec.interval(), opts);
}

inline EventSeries draw_sc_step(RngStream& stream, std::vector<double> values,
                                std::vector<double> breakpoints, const SamplerOptions& opts = {}) {
  return draw_sc_step(stream, PiecewiseConstant(std::move(values), std::move(breakpoints)), opts);
}

/// Step intensity on equal-width bins; bins located by index arithmetic
/// with a forward cursor.
inline EventSeries draw_sc_step_regular(RngStream& stream, std::span<const double> values,
                                        const Interval& interval, const SamplerOptions& opts = {}) {
  detail::check_rates(values, "draw_sc_step_regular");
  if (interval.empty()) {
    if (opts.at_least_1) throw ImpossibleConditionError("draw_sc_step_regular: empty interval");
    return {};
  }
  const RegularStepCumulative cumulative(values, interval);
  auto cursor = cumulative.cursor(/*saturate=*/opts.at_least_1);
  std::optional<double> mass;
  if (opts.at_least_1) mass = cumulative.mass();
  return detail::invert_unit_process(stream, mass, cursor, interval, opts);
}

inline EventSeries draw_sc_step_regular(RngStream& stream, const PiecewiseConstantRegular& spec,
                                        const SamplerOptions& opts = {}) {
  return draw_sc_step_regular(stream, spec.values(), spec.interval(), opts);
}

//---------------------------------------------------------------------------//
// Linear and log-linear
//---------------------------------------------------------------------------//

/// lambda(t) = max(alpha + beta t, 0), sampled through the quadratic
/// cumulative intensity restricted to its support.
inline EventSeries draw_sc_linear(RngStream& stream, double alpha, double beta,
                                  const Interval& interval, const SamplerOptions& opts = {}) {
  const LinearCumulative cumulative(LinearIntensity{alpha, beta}, interval);
  return detail::invert_unit_process(stream, cumulative.mass(), detail::always(cumulative),
                                     interval, opts);
}

/// lambda(t) = exp(alpha + beta t), sampled through the logarithmic
/// inverse of its cumulative intensity.
inline EventSeries draw_sc_loglinear(RngStream& stream, double alpha, double beta,
                                     const Interval& interval, const SamplerOptions& opts = {}) {
  const LogLinearCumulative cumulative(LogLinearIntensity{alpha, beta}, interval);
  return detail::invert_unit_process(stream, cumulative.mass(), detail::always(cumulative),
                                     interval, opts);
}

//---------------------------------------------------------------------------//
// Zero-truncated variants
//---------------------------------------------------------------------------//

namespace detail {
inline SamplerOptions non_empty(SamplerOptions opts) {
  opts.at_least_1 = true;
  return opts;
}
}  // namespace detail

inline EventSeries ztdraw_sc_step(RngStream& stream, const PiecewiseConstant& spec,
                                  const SamplerOptions& opts = {}) {
  return draw_sc_step(stream, spec, detail::non_empty(opts));
}

inline EventSeries ztdraw_sc_step_regular(RngStream& stream, std::span<const double> values,
                                          const Interval& interval, const SamplerOptions& opts = {}) {
  return draw_sc_step_regular(stream, values, interval, detail::non_empty(opts));
}

inline EventSeries ztdraw_sc_linear(RngStream& stream, double alpha, double beta,
                                    const Interval& interval, const SamplerOptions& opts = {}) {
  return draw_sc_linear(stream, alpha, beta, interval, detail::non_empty(opts));
}

inline EventSeries ztdraw_sc_loglinear(RngStream& stream, double alpha, double beta,
                                       const Interval& interval, const SamplerOptions& opts = {}) {
  return draw_sc_loglinear(stream, alpha, beta, interval, detail::non_empty(opts));
}

}  // namespace nhppp
