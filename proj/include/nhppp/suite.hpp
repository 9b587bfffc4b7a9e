// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file suite.hpp
/// Repeated simulation of one sampler configuration and its validation
/// against the theoretical count and event-time laws.
///
/// Run r is driven by RngStream(seed, r), so results do not depend on the
/// number of worker threads.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "nhppp/illustration.hpp"
#include "nhppp/nhppp_general.hpp"
#include "nhppp/rng_stream.hpp"
#include "nhppp/types.hpp"
#include "nhppp/validation.hpp"

namespace nhppp {

/// A named sampler: one series per call, optionally counting proposals.
struct SamplerConfig {
  std::string name;
  std::function<EventSeries(RngStream&, ThinningStats*)> draw;
};

struct Simulation {
  std::vector<EventSeries> runs;
  ThinningStats thinning;

  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> c(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) c[i] = runs[i].size();
    return c;
  }

  std::vector<double> pooled_times() const {
    std::vector<double> t;
    for (const auto& r : runs) t.insert(t.end(), r.begin(), r.end());
    return t;
  }
};

inline Simulation simulate(const SamplerConfig& config, std::uint64_t seed, std::size_t runs,
                           unsigned jobs = 1) {
  Simulation sim;
  sim.runs.resize(runs);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(runs, 1))));
  std::vector<ThinningStats> stats(jobs);
  auto work = [&](unsigned w) {
    for (std::size_t r = w; r < runs; r += jobs) {
      RngStream stream(seed, r);
      sim.runs[r] = config.draw(stream, &stats[w]);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (const auto& s : stats) {
    sim.thinning.proposals += s.proposals;
    sim.thinning.accepted += s.accepted;
    sim.thinning.series_retries += s.series_retries;
  }
  return sim;
}

/// Count and event-time validation of one simulation.
struct SuiteReport {
  std::string name;
  ValidationReport counts;
  std::optional<TimeGofResult> times;
  std::optional<double> acceptance;
};

struct SuiteSettings {
  std::size_t bins = 70;
  std::size_t count_resamples = kDefaultResamples;
  std::size_t time_resamples = 200;
  std::uint64_t bootstrap_seed = 0x5eedULL;
};

inline SuiteReport validate_simulation(const std::string& name, const Simulation& sim, const CumulativeIntensity& cum,
                                       const SuiteSettings& settings = {}) {
  SuiteReport rep;
  rep.name = name;
  const std::vector<std::size_t> counts = sim.counts();
  RngStream boot(settings.bootstrap_seed, 0);
  rep.counts = validate_counts(counts, cum.mass(), &boot, settings.count_resamples);
  const std::vector<double> times = sim.pooled_times();
  if (!times.empty()) {
    RngStream boot_t(settings.bootstrap_seed, 1);
    rep.times = event_time_gof(times, cum, settings.bins, &boot_t, settings.time_resamples);
  }
  if (sim.thinning.proposals > 0) rep.acceptance = sim.thinning.efficiency();
  return rep;
}

namespace illustration {

/// The five reference configurations: thinning with majorizers a, b and
/// c, inversion and order statistics (both with the tabulated inverse).
/// `numeric_inverse` switches the last two to Brent inversion.
inline std::vector<SamplerConfig> configs(const SamplerOptions& opts = {}, bool numeric_inverse = false) {
  std::vector<SamplerConfig> out;
  for (char which : {'a', 'b', 'c'}) {
    const Majorizer maj = majorizer(which);
    out.push_back({std::string("thinning-") + which, [maj, opts](RngStream& s, ThinningStats* st) {
                     return draw_thinning(s, [](double t) { return lambda(t); }, maj, interval(), opts, st);
                   }});
  }
  const CumulativeIntensity cum = numeric_inverse ? cumulative_numeric() : cumulative_tabulated();
  out.push_back({"inversion", [cum, opts](RngStream& s, ThinningStats*) { return draw_inversion(s, cum, opts); }});
  out.push_back({"orderstats", [cum, opts](RngStream& s, ThinningStats*) { return draw_orderstats(s, cum, opts); }});
  return out;
}

}  // namespace illustration

}  // namespace nhppp
