// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file rng_stream.hpp
/// Seedable, splittable uniform random streams and the primitive draws
/// (uniform, exponential, Poisson, truncated Poisson) every sampler uses.
///
/// The generator is Philox4x64-10, a counter-based engine. A stream is
/// identified by a 128-bit key (seed, substream index) and walks a 256-bit
/// counter whose two upper words name a "lane". Lanes let a single stream
/// hand out independent child streams (e.g. one per batch row) without
/// touching its own sequence, so results do not depend on the order in
/// which children are consumed.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "nhppp/errors.hpp"

namespace nhppp {

/// Philox4x64 with 10 rounds (Salmon et al., SC'11).
__extension__ using uint128 = unsigned __int128;

struct Philox4x64 {
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;
  static constexpr int kRounds = 10;

  static constexpr Counter block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < kRounds; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const uint128 p0 = static_cast<uint128>(kMul0) * ctr[0];
      const uint128 p1 = static_cast<uint128>(kMul1) * ctr[2];
      const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
      const auto lo0 = static_cast<std::uint64_t>(p0);
      const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
      const auto lo1 = static_cast<std::uint64_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }
};

/// A deterministic stream of 64-bit words.
///
/// Identical (seed, substream index, lane) triples replay identical
/// sequences. A stream is single-owner; hand independent substreams or
/// splits to concurrent workers. Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t substream_index = 0)
      : key_{seed, substream_index} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (buffer_pos_ == buffer_.size()) refill();
    ++draws_;
    return buffer_[buffer_pos_++];
  }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Independent top-level stream with the same seed.
  RngStream substream(std::uint64_t index) const { return RngStream(key_[0], index); }

  /// Child stream on lane (index, tag). Children of the same parent with
  /// distinct (index, tag) never share counter blocks with each other or
  /// with the parent (which lives on lane (0, 0)).
  RngStream split(std::uint64_t index, std::uint64_t tag = 0) const {
    if (lane_[0] != 0 || lane_[1] != 0) {
      throw ArgumentError("RngStream::split: nested splits are not supported");
    }
    if (index == std::numeric_limits<std::uint64_t>::max()) {
      throw ArgumentError("RngStream::split: lane index out of range");
    }
    RngStream child(key_[0], key_[1]);
    child.lane_ = {index + 1, tag};
    return child;
  }

  std::uint64_t seed() const noexcept { return key_[0]; }
  std::uint64_t substream_index() const noexcept { return key_[1]; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  void refill() noexcept {
    buffer_ = Philox4x64::block({position_lo_, position_hi_, lane_[0], lane_[1]}, key_);
    if (++position_lo_ == 0) ++position_hi_;
    buffer_pos_ = 0;
  }

  Philox4x64::Key key_;
  std::array<std::uint64_t, 2> lane_{0, 0};
  std::uint64_t position_lo_ = 0;
  std::uint64_t position_hi_ = 0;
  Philox4x64::Counter buffer_{};
  std::size_t buffer_pos_ = 4;
  std::uint64_t draws_ = 0;
};

//---------------------------------------------------------------------------//
// Primitive draws
//---------------------------------------------------------------------------//

inline double uniform01(RngStream& stream) noexcept { return stream.uniform01(); }

/// Exponential variate with the given mean; strictly positive.
inline double exponential(RngStream& stream, double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw DomainError("exponential: mean must be positive and finite");
  }
  return -mean * std::log(stream.uniform_open());
}

namespace detail {

// Inversion by sequential search; cheap for small means.
inline std::uint64_t poisson_inversion(RngStream& stream, double mass) noexcept {
  const double u = stream.uniform01();
  double p = std::exp(-mass);
  double cdf = p;
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mass / static_cast<double>(k);
    const double next = cdf + p;
    if (next == cdf) break;  // remaining tail below double resolution
    cdf = next;
  }
  return k;
}

// Transformed rejection with squeeze (Hormann 1993, PTRS).
inline std::uint64_t poisson_ptrs(RngStream& stream, double mass) noexcept {
  const double log_mass = std::log(mass);
  const double b = 0.931 + 2.53 * std::sqrt(mass);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = stream.uniform01() - 0.5;
    const double v = stream.uniform01();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mass + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = -mass + k * log_mass - std::lgamma(k + 1.0);
    if (lhs <= rhs) return static_cast<std::uint64_t>(k);
  }
}

// Inverse CDF on the pmf renormalized to {m, m+1, ...}. Terms are kept
// relative to p(m) so tiny tail masses do not underflow.
inline std::uint64_t truncated_poisson_inversion(RngStream& stream, double mass,
                                                 std::uint64_t min_events) noexcept {
  auto for_each_term = [&](auto&& visit) {
    double term = 1.0;
    double total = 0.0;
    for (std::uint64_t k = min_events;; ++k) {
      total += term;
      if (visit(k, term, total)) return total;
      const double kk = static_cast<double>(k);
      if (kk > mass && term < 1e-17 * total) return total;
      term *= mass / (kk + 1.0);
    }
  };
  const double total = for_each_term([](std::uint64_t, double, double) { return false; });
  const double target = stream.uniform01() * total;
  std::uint64_t result = min_events;
  for_each_term([&](std::uint64_t k, double, double cumulative) {
    result = k;
    return cumulative > target;
  });
  return result;
}

}  // namespace detail

/// Poisson variate with mean `rate_mass`.
inline std::uint64_t poisson(RngStream& stream, double rate_mass) {
  if (!(rate_mass >= 0.0) || !std::isfinite(rate_mass)) {
    throw DomainError("poisson: rate mass must be finite and non-negative");
  }
  if (rate_mass == 0.0) return 0;
  if (rate_mass < 10.0) return detail::poisson_inversion(stream, rate_mass);
  return detail::poisson_ptrs(stream, rate_mass);
}

/// Poisson variate conditioned on being at least `min_events`.
///
/// Inverse CDF on the renormalized pmf for small masses (or when the floor
/// sits above the mean, where rejection would stall); rejection from the
/// untruncated law otherwise.
inline std::uint64_t truncated_poisson(RngStream& stream, double rate_mass,
                                       std::uint64_t min_events) {
  if (!(rate_mass >= 0.0) || !std::isfinite(rate_mass)) {
    throw DomainError("truncated_poisson: rate mass must be finite and non-negative");
  }
  if (min_events == 0) return poisson(stream, rate_mass);
  if (rate_mass == 0.0) {
    throw ImpossibleConditionError(
        "truncated_poisson: cannot condition on at least one event when the mass is zero");
  }
  if (rate_mass <= 50.0 || static_cast<double>(min_events) > rate_mass) {
    return detail::truncated_poisson_inversion(stream, rate_mass, min_events);
  }
  for (;;) {
    const std::uint64_t n = poisson(stream, rate_mass);
    if (n >= min_events) return n;
  }
}

}  // namespace nhppp
