// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file bench.hpp
/// Wall-time sampling of sampler configurations.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "nhppp/batch.hpp"
#include "nhppp/errors.hpp"
#include "nhppp/illustration.hpp"
#include "nhppp/special_cases.hpp"
#include "nhppp/suite.hpp"

namespace nhppp {

struct Timing {
  std::string name;
  std::size_t reps = 0;
  double median_us = 0.0;
  double q05_us = 0.0;
  double q25_us = 0.0;
  double q75_us = 0.0;
  double q95_us = 0.0;
};

namespace detail {
inline double sorted_quantile(const std::vector<double>& v, double p) {
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}
}  // namespace detail

/// Times `reps` calls of fn(rep) after `warmup` untimed calls.
template <class Fn>
Timing time_reps(const std::string& name, std::size_t reps, Fn&& fn, std::size_t warmup = 3) {
  if (reps == 0) throw ArgumentError("time_reps: reps must be positive");
  for (std::size_t i = 0; i < warmup; ++i) fn(i);
  std::vector<double> us(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn(warmup + i);
    const auto t1 = std::chrono::steady_clock::now();
    us[i] = std::chrono::duration<double, std::micro>(t1 - t0).count();
  }
  std::sort(us.begin(), us.end());
  return {name,
          reps,
          detail::sorted_quantile(us, 0.5),
          detail::sorted_quantile(us, 0.05),
          detail::sorted_quantile(us, 0.25),
          detail::sorted_quantile(us, 0.75),
          detail::sorted_quantile(us, 0.95)};
}

/// One series per rep for every illustration configuration, plus the
/// analytic-versus-Brent inverse and irregular-versus-regular step pairs.
inline std::vector<Timing> bench_illustration(std::size_t reps, bool first_only, std::uint64_t seed) {
  const SamplerOptions opts = first_only ? SamplerOptions::first_only() : SamplerOptions::all();
  std::vector<SamplerConfig> configs = illustration::configs(opts);
  for (auto& c : illustration::configs(opts, /*numeric_inverse=*/true)) {
    if (c.name == "inversion" || c.name == "orderstats") {
      c.name += "-brent";
      configs.push_back(std::move(c));
    }
  }
  for (auto& c : configs) {
    if (c.name == "inversion" || c.name == "orderstats") c.name += "-analytic";
  }
  const PiecewiseConstant step_b = illustration::majorizer_b().step;
  configs.push_back({"step-irregular", [step_b, opts](RngStream& s, ThinningStats*) {
                       return draw_sc_step(s, step_b, opts);
                     }});
  const PiecewiseConstantRegular regular_b = illustration::majorizer_b_regular();
  configs.push_back({"step-regular", [regular_b, opts](RngStream& s, ThinningStats*) {
                       return draw_sc_step_regular(s, regular_b, opts);
                     }});

  std::vector<Timing> out;
  for (const auto& c : configs) {
    out.push_back(time_reps(c.name, reps, [&](std::size_t rep) {
      RngStream stream(seed, rep);
      auto series = c.draw(stream, nullptr);
      asm volatile("" : : "g"(series.data()) : "memory");
    }));
  }
  return out;
}

/// R draws from the regular step majorizer b: the vectorized sampler
/// against a loop over the scalar sampler with the same per-row streams.
struct BatchTiming {
  Timing batch;
  Timing scalar;
  double speedup() const noexcept { return scalar.median_us / batch.median_us; }
};

inline BatchTiming bench_batch(std::size_t rows, std::size_t reps, bool first_only, std::uint64_t seed) {
  if (rows == 0) throw ArgumentError("bench_batch: rows must be positive");
  const SamplerOptions opts = first_only ? SamplerOptions::first_only() : SamplerOptions::all();
  const std::vector<double> values = illustration::majorizer_b().values();
  std::vector<double> data;
  data.reserve(rows * values.size());
  for (std::size_t i = 0; i < rows; ++i) data.insert(data.end(), values.begin(), values.end());
  const RateMatrix rates(rows, values.size(), std::move(data), illustration::interval());

  BatchTiming t;
  t.batch = time_reps(first_only ? "batch-first" : "batch-all", reps, [&](std::size_t rep) {
    RngStream stream(seed, rep);
    EventMatrix m = vdraw_sc_step_regular(stream, rates, opts);
    asm volatile("" : : "g"(&m) : "memory");
  }, 1);
  t.scalar = time_reps(first_only ? "scalar-loop-first" : "scalar-loop-all", reps, [&](std::size_t rep) {
    RngStream stream(seed, rep);
    const std::uint64_t tag = stream();
    std::vector<EventSeries> out(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      RngStream rs = stream.split(i, tag);
      out[i] = draw_sc_step_regular(rs, rates.row(i), rates.interval(), opts);
    }
    asm volatile("" : : "g"(out.data()) : "memory");
  }, 1);
  return t;
}

}  // namespace nhppp
