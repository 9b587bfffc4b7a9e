// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file nhppp_general.hpp
/// General NHPPP samplers: thinning, inversion (time transformation),
/// order statistics, conditional order statistics, and the dispatcher.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "nhppp/errors.hpp"
#include "nhppp/intensity.hpp"
#include "nhppp/majorizer.hpp"
#include "nhppp/rng_stream.hpp"
#include "nhppp/special_cases.hpp"
#include "nhppp/types.hpp"

namespace nhppp {

/// Proposal/acceptance counters accumulated across thinning calls.
struct ThinningStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  std::uint64_t series_retries = 0;

  double efficiency() const noexcept {
    return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
};

/// Dominating intensities with exact samplers.
using Majorizer =
    std::variant<LinearIntensity, LogLinearIntensity, PiecewiseConstantRegular, PiecewiseConstant>;

inline constexpr std::uint64_t kMaxSeriesRetries = 1'000'000;
inline constexpr double kMajorizationSlack = 1e-12;

namespace detail {

inline void report_violation(double t, double rate, double bound) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "majorization violated at t = " << t << ": lambda = " << rate << " > lambda* = " << bound;
  throw MajorizationViolation(msg.str());
}

/// Thinning on top of a unit-rate process on the majorizer's Lambda scale.
/// `make_inverter(saturate)` yields a fresh inverter for non-decreasing z.
template <class Lambda, class Bound, class MakeInverter>
EventSeries thin(RngStream& stream, Lambda& lambda, const Bound& bound,
                 MakeInverter&& make_inverter, double mass, const Interval& interval,
                 const SamplerOptions& opts, ThinningStats* stats) {
  const std::size_t cap = opts.cap();
  ThinningStats local;
  ThinningStats& st = stats ? *stats : local;
  EventSeries out;

  auto offer = [&](double t) {
    const double rate = lambda(t);
    const double top = bound(t);
    ++st.proposals;
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
      std::ostringstream msg;
      msg << "intensity at t = " << t << " is " << rate << ", expected a finite non-negative rate";
      throw DomainError(msg.str());
    }
    if (rate > top * (1.0 + kMajorizationSlack)) report_violation(t, rate, top);
    if (stream.uniform01() * top < rate) {
      out.push_back(t);
      ++st.accepted;
    }
  };

  if (!opts.at_least_1) {
    if (!(mass > 0.0)) return out;
    auto invert = make_inverter(false);
    double z = 0.0;
    while (out.size() < cap) {
      z -= std::log(stream.uniform_open());
      if (z > mass) break;
      const std::optional<double> t = invert(z);
      if (!t) break;
      offer(interval.clamp(*t));
    }
    return out;
  }

  if (!(mass > 0.0)) {
    throw ImpossibleConditionError("thinning: majorizer has zero mass, cannot draw at least one event");
  }
  std::vector<double> u;
  for (std::uint64_t attempt = 0; attempt < kMaxSeriesRetries; ++attempt) {
    const std::uint64_t n = truncated_poisson(stream, mass, 1);
    u.resize(static_cast<std::size_t>(n));
    for (auto& x : u) x = stream.uniform_open();
    std::sort(u.begin(), u.end());
    auto invert = make_inverter(true);
    for (double x : u) {
      const std::optional<double> t = invert(x * mass);
      if (!t) break;
      offer(interval.clamp(*t));
      if (out.size() >= cap) break;
    }
    if (!out.empty()) return out;
    ++st.series_retries;
  }
  throw ImpossibleConditionError("thinning: no event accepted after the retry limit; intensity may be zero");
}

template <class Closed>
auto closed_inverter(const Closed& closed) {
  return [&closed](bool) {
    return [&closed](double z) -> std::optional<double> { return closed.inverse(z); };
  };
}

/// Thinning against a regular step majorizer given by its values.
template <class Lambda>
EventSeries thin_step_regular(RngStream& stream, Lambda& lambda, std::span<const double> values,
                              const Interval& interval, const SamplerOptions& opts,
                              ThinningStats* stats) {
  if (interval.empty()) {
    if (opts.at_least_1) throw ImpossibleConditionError("thinning: empty interval");
    return {};
  }
  const RegularStepCumulative cumulative(values, interval);
  const double a = interval.a();
  const double width = interval.length() / static_cast<double>(values.size());
  const std::size_t last = values.size() - 1;
  auto bound = [&](double t) {
    const auto m = static_cast<std::ptrdiff_t>(std::floor((t - a) / width));
    return values[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(m, 0, static_cast<std::ptrdiff_t>(last)))];
  };
  auto make = [&](bool saturate) { return cumulative.cursor(saturate); };
  return thin(stream, lambda, bound, make, cumulative.mass(), interval, opts, stats);
}

}  // namespace detail

/// Thinning (acceptance-rejection): proposals from the majorizer's exact
/// sampler, each kept with probability lambda(Z) / lambda*(Z). With a cap,
/// exits once enough events are accepted. at_least_1 redraws whole series
/// from the zero-truncated proposal process until one is accepted.
///
/// Piecewise majorizers must be defined exactly on `interval`.
template <class Lambda>
EventSeries draw_thinning(RngStream& stream, Lambda&& lambda, const Majorizer& majorizer,
                          const Interval& interval, const SamplerOptions& opts = {},
                          ThinningStats* stats = nullptr) {
  return std::visit(
      [&](const auto& maj) -> EventSeries {
        using M = std::decay_t<decltype(maj)>;
        if constexpr (std::is_same_v<M, PiecewiseConstantRegular>) {
          detail::require_matching_interval(maj.interval(), interval);
          return detail::thin_step_regular(stream, lambda, maj.values(), maj.interval(), opts, stats);
        } else if constexpr (std::is_same_v<M, PiecewiseConstant>) {
          detail::require_matching_interval(maj.interval(), interval);
          const StepCumulative cumulative(maj);
          return detail::thin(stream, lambda, maj, detail::closed_inverter(cumulative), cumulative.mass(),
                              maj.interval(), opts, stats);
        } else if constexpr (std::is_same_v<M, LinearIntensity>) {
          const LinearCumulative cumulative(maj, interval);
          return detail::thin(stream, lambda, maj, detail::closed_inverter(cumulative), cumulative.mass(),
                              interval, opts, stats);
        } else {
          const LogLinearCumulative cumulative(maj, interval);
          return detail::thin(stream, lambda, maj, detail::closed_inverter(cumulative), cumulative.mass(),
                              interval, opts, stats);
        }
      },
      majorizer);
}

template <class Lambda>
EventSeries draw_thinning(RngStream& stream, Lambda&& lambda, const MajorizerSpec& majorizer,
                          const Interval& interval, const SamplerOptions& opts = {},
                          ThinningStats* stats = nullptr) {
  return draw_thinning(stream, std::forward<Lambda>(lambda), Majorizer{majorizer.step}, interval, opts,
                       stats);
}

/// Time transformation: a unit-rate process on (Lambda(a), Lambda(b)]
/// drawn sequentially and mapped through the inverse. With a cap only the
/// first arrivals are drawn and inverted.
inline EventSeries draw_inversion(RngStream& stream, const CumulativeIntensity& cum,
                                  const SamplerOptions& opts = {}) {
  const double lower = cum.lower();
  auto invert = [&](double z) -> std::optional<double> { return cum.inverse(lower + z); };
  return detail::invert_unit_process(stream, cum.mass(), invert, cum.interval(), opts);
}

/// How draw_conditional treats min_events.
enum class ConditionalMode { at_least, exactly };

namespace detail {

/// Sorted Lambda-scale uniforms mapped through the inverse.
inline EventSeries map_order_statistics(RngStream& stream, const CumulativeIntensity& cum,
                                        std::uint64_t n, std::size_t cap) {
  std::vector<double> u(static_cast<std::size_t>(n));
  // 1 - U lies in (0, 1], so every mass lands in (Lambda(a), Lambda(b)].
  for (auto& x : u) x = 1.0 - stream.uniform01();
  keep_earliest(u, cap);
  EventSeries times;
  times.reserve(u.size());
  const double lower = cum.lower();
  const double mass = cum.mass();
  for (double x : u) times.push_back(cum.interval().clamp(cum.inverse(lower + x * mass)));
  return times;
}

}  // namespace detail

/// Order statistics with at least (or exactly) `min_events` events: the
/// count is drawn from the truncated Poisson law (or fixed), then placed
/// as inverted Lambda-scale uniforms.
inline EventSeries draw_conditional(RngStream& stream, const CumulativeIntensity& cum,
                                    std::uint64_t min_events, const SamplerOptions& opts = {},
                                    ConditionalMode mode = ConditionalMode::at_least) {
  if (min_events == 0) throw ArgumentError("draw_conditional: min_events must be positive");
  const double mass = cum.mass();
  if (!(mass > 0.0)) {
    throw ImpossibleConditionError("draw_conditional: Lambda(b) == Lambda(a), no event can occur");
  }
  const std::size_t cap = opts.cap();
  const std::uint64_t n =
      mode == ConditionalMode::exactly ? min_events : truncated_poisson(stream, mass, min_events);
  return detail::map_order_statistics(stream, cum, n, cap);
}

/// Order statistics: N ~ Poisson(Lambda(b) - Lambda(a)), then N sorted
/// inverted uniforms. at_least_1 switches to the conditional sampler.
inline EventSeries draw_orderstats(RngStream& stream, const CumulativeIntensity& cum,
                                   const SamplerOptions& opts = {}) {
  if (opts.at_least_1) return draw_conditional(stream, cum, 1, opts);
  const std::size_t cap = opts.cap();
  const double mass = cum.mass();
  if (!(mass > 0.0)) return {};
  const std::uint64_t n = poisson(stream, mass);
  return detail::map_order_statistics(stream, cum, n, cap);
}

//---------------------------------------------------------------------------//
// Dispatcher
//---------------------------------------------------------------------------//

/// Inputs to draw(); any subset may be given.
struct DrawRequest {
  std::function<double(double)> lambda;
  std::optional<Majorizer> majorizer;
  std::optional<CumulativeIntensity> cumulative;
  std::optional<Interval> interval;
};

enum class Route { orderstats, inversion_numeric, thinning };

inline const char* route_name(Route r) noexcept {
  switch (r) {
    case Route::orderstats: return "orderstats";
    case Route::inversion_numeric: return "inversion";
    case Route::thinning: return "thinning";
  }
  return "unknown";
}

/// Which sampler draw() uses: a cumulative intensity with an inverse goes
/// to order statistics, one without to numeric inversion, and an intensity
/// with a majorizer to thinning.
inline Route route_for(const DrawRequest& req) {
  if (req.cumulative) return req.cumulative->has_inverse() ? Route::orderstats : Route::inversion_numeric;
  if (req.lambda && req.majorizer) return Route::thinning;
  if (req.lambda) throw ArgumentError("draw: thinning needs a majorizer alongside lambda");
  throw ArgumentError("draw: supply a cumulative intensity or lambda with a majorizer");
}

inline EventSeries draw(RngStream& stream, const DrawRequest& req, const SamplerOptions& opts = {}) {
  const Route route = route_for(req);
  if (route != Route::thinning) {
    const CumulativeIntensity& cum = *req.cumulative;
    if (req.interval) detail::require_matching_interval(cum.interval(), *req.interval);
    return route == Route::orderstats ? draw_orderstats(stream, cum, opts) : draw_inversion(stream, cum, opts);
  }
  std::optional<Interval> interval = req.interval;
  if (!interval) {
    if (const auto* p = std::get_if<PiecewiseConstant>(&*req.majorizer)) interval = p->interval();
    if (const auto* p = std::get_if<PiecewiseConstantRegular>(&*req.majorizer)) interval = p->interval();
  }
  if (!interval) throw ArgumentError("draw: an interval is required for a linear or log-linear majorizer");
  return draw_thinning(stream, req.lambda, *req.majorizer, *interval, opts);
}

}  // namespace nhppp
