// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file batch.hpp
/// Vectorized sampling: one independent series per row of a dense matrix
/// of regular piecewise-constant rates.
///
/// Rows are driven by substreams parent.split(k, tag) keyed by row (or by
/// fixed-size row chunk), where tag is one word drawn from the parent per
/// batch call, so results do not depend on the number of worker threads.
/// Storage is dense; rows padded with NaN.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <sstream>
#include <thread>
#include <type_traits>
#include <vector>

#include "nhppp/errors.hpp"
#include "nhppp/intensity.hpp"
#include "nhppp/nhppp_general.hpp"
#include "nhppp/rng_stream.hpp"
#include "nhppp/special_cases.hpp"
#include "nhppp/types.hpp"

namespace nhppp {

/// R x M row-major rates over M equal bins of a shared interval.
class RateMatrix {
 public:
  RateMatrix(std::size_t rows, std::size_t cols, std::vector<double> data, Interval interval)
      : rows_(rows), cols_(cols), data_(std::move(data)), interval_(interval) {
    if (rows_ == 0 || cols_ == 0) throw DomainError("RateMatrix: need at least one row and one column");
    if (data_.size() != rows_ * cols_) {
      std::ostringstream msg;
      msg << "RateMatrix: expected " << rows_ * cols_ << " entries, got " << data_.size();
      throw DomainError(msg.str());
    }
    if (interval_.empty()) throw DomainError("RateMatrix: empty interval");
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!(data_[i] >= 0.0) || !std::isfinite(data_[i])) {
        std::ostringstream msg;
        msg << "RateMatrix: entry (" << i / cols_ << ", " << i % cols_ << ") = " << data_[i]
            << " is not a finite non-negative rate";
        throw DomainError(msg.str());
      }
    }
  }

  static RateMatrix from_rows(const std::vector<std::vector<double>>& rows, Interval interval) {
    if (rows.empty()) throw DomainError("RateMatrix: need at least one row");
    const std::size_t cols = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) {
        std::ostringstream msg;
        msg << "RateMatrix: row " << i << " has " << rows[i].size() << " values, expected " << cols;
        throw DomainError(msg.str());
      }
      data.insert(data.end(), rows[i].begin(), rows[i].end());
    }
    return RateMatrix(rows.size(), cols, std::move(data), interval);
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Interval& interval() const noexcept { return interval_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  Interval interval_;
};

/// R series packed into a dense R x C matrix, C = longest series, with a
/// NaN suffix on shorter rows. An all-empty batch is R x 0.
class EventMatrix {
 public:
  static constexpr double missing = std::numeric_limits<double>::quiet_NaN();

  EventMatrix() = default;
  EventMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, missing) {}

  static EventMatrix from_rows(const std::vector<EventSeries>& rows) {
    std::size_t cols = 0;
    for (const auto& r : rows) cols = std::max(cols, r.size());
    EventMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  static bool is_missing(double x) noexcept { return std::isnan(x); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  /// Number of events in row i.
  std::size_t row_length(std::size_t i) const noexcept {
    std::size_t n = 0;
    while (n < cols_ && !is_missing((*this)(i, n))) ++n;
    return n;
  }

  EventSeries row(std::size_t i) const {
    const auto first = data_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
    return EventSeries(first, first + static_cast<std::ptrdiff_t>(row_length(i)));
  }

  std::vector<EventSeries> to_rows() const {
    std::vector<EventSeries> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = row(i);
    return out;
  }

  /// Drop all-missing trailing columns.
  void shrink() {
    std::size_t width = 0;
    for (std::size_t i = 0; i < rows_; ++i) width = std::max(width, row_length(i));
    if (width == cols_) return;
    std::vector<double> packed(rows_ * width);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_), width,
                  packed.begin() + static_cast<std::ptrdiff_t>(i * width));
    }
    data_ = std::move(packed);
    cols_ = width;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct BatchOptions {
  unsigned jobs = 1;  ///< worker threads; 0 means hardware concurrency
};

namespace detail {

/// Splits rows into fixed chunks of `chunk` rows; chunk k is driven by
/// parent.split(k, tag) and handed to body(first_row, last_row, stream),
/// possibly on several threads. The exception of the lowest failing chunk
/// is rethrown after all workers stop.
template <class Body>
void for_each_chunk(RngStream& parent, std::size_t rows, std::size_t chunk, const BatchOptions& batch,
                    Body&& body) {
  const std::uint64_t tag = parent();
  const std::size_t chunks = (rows + chunk - 1) / chunk;
  unsigned jobs = batch.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : batch.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, chunks));

  auto run = [&](std::size_t k) {
    RngStream rs = parent.split(k, tag);
    body(k * chunk, std::min(rows, (k + 1) * chunk), rs);
  };
  if (jobs <= 1) {
    for (std::size_t k = 0; k < chunks; ++k) run(k);
    return;
  }

  std::mutex mu;
  std::size_t failed = chunks;
  std::exception_ptr failure;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t k = w; k < chunks; k += jobs) {
        try {
          run(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (k < failed) {
            failed = k;
            failure = std::current_exception();
          }
          return;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// One substream per row: body(row, row_stream).
template <class Body>
void for_each_row(RngStream& parent, std::size_t rows, const BatchOptions& batch, Body&& body) {
  for_each_chunk(parent, rows, 1, batch, [&](std::size_t i, std::size_t, RngStream& rs) { body(i, rs); });
}

[[noreturn]] inline void rethrow_for_row(const Error& e, std::size_t row) {
  std::ostringstream msg;
  msg << "row " << row << ": " << e.what();
  switch (e.kind()) {
    case ErrorKind::impossible_condition: throw ImpossibleConditionError(msg.str());
    case ErrorKind::majorization_violation: throw MajorizationViolation(msg.str());
    case ErrorKind::domain: throw DomainError(msg.str());
    case ErrorKind::numeric: throw NumericError(msg.str());
    case ErrorKind::argument: throw ArgumentError(msg.str());
    case ErrorKind::bracket: throw BracketError(msg.str());
    case ErrorKind::unsupported: throw UnsupportedError(msg.str());
    case ErrorKind::parse: throw ParseError(msg.str());
  }
  throw Error(e.kind(), msg.str());
}

/// First event of a regular step process: one exponential on the Lambda
/// scale and a forward walk over the bins. NaN when there is none.
inline double first_event_step_regular(RngStream& rs, std::span<const double> values, double a,
                                       double b, double width) {
  const double z = -std::log(rs.uniform_open());
  double passed = 0.0;
  const std::size_t m_count = values.size();
  for (std::size_t m = 0; m < m_count; ++m) {
    const double lo = a + width * static_cast<double>(m);
    const double hi = m + 1 == m_count ? b : lo + width;
    const double bin_mass = values[m] * (hi - lo);
    if (values[m] > 0.0 && z <= passed + bin_mass) {
      const double t = std::min(lo + (z - passed) / values[m], hi);
      return t <= a ? std::nextafter(a, b) : t;
    }
    passed += bin_mass;
  }
  return EventMatrix::missing;
}

template <class Fn>
EventMatrix collect_rows(RngStream& stream, std::size_t rows, const BatchOptions& batch, Fn&& fn) {
  std::vector<EventSeries> out(rows);
  for_each_row(stream, rows, batch, [&](std::size_t i, RngStream& rs) {
    try {
      out[i] = fn(i, rs);
    } catch (const Error& e) {
      rethrow_for_row(e, i);
    }
  });
  return EventMatrix::from_rows(out);
}

}  // namespace detail

inline constexpr std::size_t kFirstEventChunk = 4096;

/// Row i distributed as draw_sc_step_regular(rates.row(i), interval).
/// at_most_1 takes a dedicated first-event path: rows share one substream
/// per chunk of kFirstEventChunk rows and write straight into the single
/// output column.
inline EventMatrix vdraw_sc_step_regular(RngStream& stream, const RateMatrix& rates,
                                         const SamplerOptions& opts = {}, const BatchOptions& batch = {}) {
  const Interval& iv = rates.interval();
  if (opts.cap() == 1 && !opts.at_least_1) {
    EventMatrix out(rates.rows(), 1);
    const double width = iv.length() / static_cast<double>(rates.cols());
    detail::for_each_chunk(stream, rates.rows(), kFirstEventChunk, batch,
                           [&](std::size_t first, std::size_t last, RngStream& rs) {
                             for (std::size_t i = first; i < last; ++i) {
                               out(i, 0) = detail::first_event_step_regular(rs, rates.row(i), iv.a(),
                                                                            iv.b(), width);
                             }
                           });
    out.shrink();
    return out;
  }
  return detail::collect_rows(stream, rates.rows(), batch, [&](std::size_t i, RngStream& rs) {
    return draw_sc_step_regular(rs, rates.row(i), iv, opts);
  });
}

/// Zero-truncated rows; a row with zero mass raises an error naming it.
inline EventMatrix vztdraw_sc_step_regular(RngStream& stream, const RateMatrix& rates,
                                           const SamplerOptions& opts = {}, const BatchOptions& batch = {}) {
  return vdraw_sc_step_regular(stream, rates, detail::non_empty(opts), batch);
}

/// Row-wise thinning of step-majorizer proposals. `lambda` is either
/// f(t), shared by all rows, or f(row, t).
template <class Lambda>
EventMatrix vdraw_intensity_step_regular(RngStream& stream, Lambda&& lambda, const RateMatrix& majorizer,
                                         const SamplerOptions& opts = {}, const BatchOptions& batch = {},
                                         ThinningStats* stats = nullptr) {
  const Interval& iv = majorizer.interval();
  std::vector<ThinningStats> row_stats(majorizer.rows());
  EventMatrix out = detail::collect_rows(stream, majorizer.rows(), batch, [&](std::size_t i, RngStream& rs) {
    if constexpr (std::is_invocable_r_v<double, Lambda&, std::size_t, double>) {
      auto row_lambda = [&lambda, i](double t) { return static_cast<double>(lambda(i, t)); };
      return detail::thin_step_regular(rs, row_lambda, majorizer.row(i), iv, opts, &row_stats[i]);
    } else {
      return detail::thin_step_regular(rs, lambda, majorizer.row(i), iv, opts, &row_stats[i]);
    }
  });
  if (stats) {
    for (const auto& s : row_stats) {
      stats->proposals += s.proposals;
      stats->accepted += s.accepted;
      stats->series_retries += s.series_retries;
    }
  }
  return out;
}

template <class Lambda>
EventMatrix vztdraw_intensity_step_regular(RngStream& stream, Lambda&& lambda, const RateMatrix& majorizer,
                                           const SamplerOptions& opts = {}, const BatchOptions& batch = {},
                                           ThinningStats* stats = nullptr) {
  return vdraw_intensity_step_regular(stream, std::forward<Lambda>(lambda), majorizer, detail::non_empty(opts),
                                      batch, stats);
}

}  // namespace nhppp
