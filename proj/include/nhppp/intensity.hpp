// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file intensity.hpp
/// Intensity functions, their cumulative (integrated) intensities and
/// inverses, and the numeric inversion fallback.
///
/// Closed-form cumulatives are measured from the start of their window,
/// so Lambda(a) == 0 and Lambda(b) is the Poisson mass of the window.
/// Every inverse returns the infimum of the preimage, i.e. the left edge
/// when z falls on a zero-intensity plateau.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include "nhppp/errors.hpp"
#include "nhppp/types.hpp"

namespace nhppp {

//---------------------------------------------------------------------------//
// Intensity specifications
//---------------------------------------------------------------------------//

/// lambda(t) = max(alpha + beta t, 0).
struct LinearIntensity {
  double alpha = 0.0;
  double beta = 0.0;

  double operator()(double t) const noexcept { return std::max(alpha + beta * t, 0.0); }
};

/// lambda(t) = exp(alpha + beta t).
struct LogLinearIntensity {
  double alpha = 0.0;
  double beta = 0.0;

  double operator()(double t) const noexcept { return std::exp(alpha + beta * t); }
};

/// Arbitrary non-negative intensity; only usable with thinning or with a
/// user-supplied cumulative intensity.
struct CallableIntensity {
  std::function<double(double)> fn;

  double operator()(double t) const { return fn(t); }
};

namespace detail {

inline void check_rates(std::span<const double> values, const char* who) {
  if (values.empty()) throw DomainError(std::string(who) + ": at least one value required");
  for (std::size_t m = 0; m < values.size(); ++m) {
    if (!(values[m] >= 0.0) || !std::isfinite(values[m])) {
      std::ostringstream msg;
      msg << who << ": value[" << m << "] = " << values[m] << " is not a finite non-negative rate";
      throw DomainError(msg.str());
    }
  }
}

inline void check_breakpoints(std::span<const double> breaks, std::size_t bins, const char* who) {
  if (breaks.size() != bins + 1) {
    std::ostringstream msg;
    msg << who << ": expected " << bins + 1 << " breakpoints for " << bins << " values, got "
        << breaks.size();
    throw DomainError(msg.str());
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!std::isfinite(breaks[i])) throw DomainError(std::string(who) + ": non-finite breakpoint");
    if (i > 0 && !(breaks[i] > breaks[i - 1])) {
      std::ostringstream msg;
      msg << who << ": breakpoints must be strictly increasing (index " << i << ")";
      throw DomainError(msg.str());
    }
  }
}

}  // namespace detail

/// Piecewise-constant intensity on arbitrary breakpoints a_0 < ... < a_M.
/// Bin m covers [a_m, a_{m+1}); the value is zero outside [a_0, a_M].
class PiecewiseConstant {
 public:
  PiecewiseConstant(std::vector<double> values, std::vector<double> breakpoints)
      : values_(std::move(values)), breakpoints_(std::move(breakpoints)) {
    detail::check_rates(values_, "PiecewiseConstant");
    detail::check_breakpoints(breakpoints_, values_.size(), "PiecewiseConstant");
  }

  double operator()(double t) const noexcept {
    if (t < breakpoints_.front() || t > breakpoints_.back()) return 0.0;
    return values_[bin_of(t)];
  }

  /// Index of the bin containing t (clamped to valid bins).
  std::size_t bin_of(double t) const noexcept {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    auto idx = static_cast<std::ptrdiff_t>(it - breakpoints_.begin()) - 1;
    return static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(values_.size()) - 1));
  }

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  std::size_t bins() const noexcept { return values_.size(); }
  Interval interval() const { return {breakpoints_.front(), breakpoints_.back()}; }

 private:
  std::vector<double> values_;
  std::vector<double> breakpoints_;
};

/// Piecewise-constant intensity on M equal-width bins of an interval.
class PiecewiseConstantRegular {
 public:
  PiecewiseConstantRegular(std::vector<double> values, Interval interval)
      : values_(std::move(values)), interval_(interval) {
    detail::check_rates(values_, "PiecewiseConstantRegular");
    if (interval_.empty()) throw DomainError("PiecewiseConstantRegular: empty interval");
  }

  double operator()(double t) const noexcept {
    if (t < interval_.a() || t > interval_.b()) return 0.0;
    return values_[bin_of(t)];
  }

  std::size_t bin_of(double t) const noexcept {
    const double pos = (t - interval_.a()) / width();
    const auto m = static_cast<std::ptrdiff_t>(std::floor(pos));
    return static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(m, 0, static_cast<std::ptrdiff_t>(values_.size()) - 1));
  }

  double width() const noexcept { return interval_.length() / static_cast<double>(values_.size()); }
  const std::vector<double>& values() const noexcept { return values_; }
  const Interval& interval() const noexcept { return interval_; }
  std::size_t bins() const noexcept { return values_.size(); }

  /// The same function with explicit breakpoints.
  PiecewiseConstant to_irregular() const {
    std::vector<double> breaks(values_.size() + 1);
    for (std::size_t m = 0; m <= values_.size(); ++m) {
      breaks[m] = interval_.a() + width() * static_cast<double>(m);
    }
    breaks.back() = interval_.b();
    return {values_, std::move(breaks)};
  }

 private:
  std::vector<double> values_;
  Interval interval_;
};

using IntensitySpec = std::variant<CallableIntensity, PiecewiseConstantRegular, PiecewiseConstant,
                                   LinearIntensity, LogLinearIntensity>;

inline double evaluate(const IntensitySpec& spec, double t) {
  return std::visit([t](const auto& f) { return f(t); }, spec);
}

//---------------------------------------------------------------------------//
// Closed-form cumulative intensities
//---------------------------------------------------------------------------//

/// Piecewise-linear Lambda of a step intensity: cumulative mass table plus
/// binary-search inverse.
class StepCumulative {
 public:
  explicit StepCumulative(const PiecewiseConstant& spec)
      : values_(spec.values()), breakpoints_(spec.breakpoints()), cumulative_(values_.size() + 1) {
    cumulative_[0] = 0.0;
    for (std::size_t m = 0; m < values_.size(); ++m) {
      cumulative_[m + 1] = cumulative_[m] + values_[m] * (breakpoints_[m + 1] - breakpoints_[m]);
    }
  }

  double operator()(double t) const noexcept {
    if (t <= breakpoints_.front()) return 0.0;
    if (t >= breakpoints_.back()) return cumulative_.back();
    auto m = static_cast<std::size_t>(
                 std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) - breakpoints_.begin()) -
             1;
    return cumulative_[m] + values_[m] * (t - breakpoints_[m]);
  }

  double inverse(double z) const noexcept {
    if (z <= 0.0) return breakpoints_.front();
    if (z >= cumulative_.back()) return last_positive_edge();
    // First j with cumulative_[j] >= z; then bin j - 1 has positive rate.
    auto j = static_cast<std::size_t>(
        std::lower_bound(cumulative_.begin() + 1, cumulative_.end(), z) - cumulative_.begin());
    const std::size_t m = j - 1;
    const double t = breakpoints_[m] + (z - cumulative_[m]) / values_[m];
    return std::min(t, breakpoints_[m + 1]);
  }

  double mass() const noexcept { return cumulative_.back(); }
  Interval interval() const { return {breakpoints_.front(), breakpoints_.back()}; }
  const std::vector<double>& table() const noexcept { return cumulative_; }

 private:
  double last_positive_edge() const noexcept {
    std::size_t m = values_.size();
    while (m > 0 && values_[m - 1] == 0.0) --m;
    return breakpoints_[m];
  }

  std::vector<double> values_;
  std::vector<double> breakpoints_;
  std::vector<double> cumulative_;
};

/// Cumulative intensity of a regular step function. Bin edges come from
/// index arithmetic; only the rate values are referenced, not copied.
class RegularStepCumulative {
 public:
  RegularStepCumulative(std::span<const double> values, const Interval& interval)
      : values_(values), a_(interval.a()), b_(interval.b()),
        width_(interval.length() / static_cast<double>(values.size())) {}

  double edge(std::size_t m) const noexcept {
    return m == values_.size() ? b_ : a_ + width_ * static_cast<double>(m);
  }

  double operator()(double t) const noexcept {
    if (t <= a_) return 0.0;
    double total = 0.0;
    for (std::size_t m = 0; m < values_.size(); ++m) {
      const double hi = edge(m + 1);
      if (t < hi) return total + values_[m] * (t - edge(m));
      total += values_[m] * (hi - edge(m));
    }
    return total;
  }

  double mass() const noexcept {
    double total = 0.0;
    for (std::size_t m = 0; m < values_.size(); ++m) total += values_[m] * (edge(m + 1) - edge(m));
    return total;
  }

  /// Forward-only inverter for non-decreasing z. Walks the bins once, so a
  /// whole series costs O(M + N) with no search and no table.
  class Cursor {
   public:
    Cursor(const RegularStepCumulative& owner, bool saturate)
        : owner_(&owner), saturate_(saturate) {}

    /// Returns the time for mass z. Past the total mass it returns nullopt,
    /// or, when saturating, the right edge of the last positive bin (used
    /// when z is known to lie inside the mass up to rounding).
    std::optional<double> operator()(double z) noexcept {
      const auto& v = owner_->values_;
      while (bin_ < v.size()) {
        const double lo = owner_->edge(bin_);
        const double hi = owner_->edge(bin_ + 1);
        const double bin_mass = v[bin_] * (hi - lo);
        if (v[bin_] > 0.0) {
          if (z <= passed_ + bin_mass) return std::min(lo + (z - passed_) / v[bin_], hi);
          last_positive_edge_ = hi;
        }
        passed_ += bin_mass;
        ++bin_;
      }
      if (saturate_ && last_positive_edge_) return last_positive_edge_;
      return std::nullopt;
    }

   private:
    const RegularStepCumulative* owner_;
    bool saturate_;
    std::size_t bin_ = 0;
    double passed_ = 0.0;
    std::optional<double> last_positive_edge_;
  };

  Cursor cursor(bool saturate = false) const noexcept { return Cursor(*this, saturate); }

  std::span<const double> values() const noexcept { return values_; }

 private:
  std::span<const double> values_;
  double a_;
  double b_;
  double width_;
};

/// Quadratic Lambda of the clamped linear intensity max(alpha + beta t, 0).
class LinearCumulative {
 public:
  LinearCumulative(const LinearIntensity& spec, const Interval& interval)
      : spec_(spec), a_(interval.a()), b_(interval.b()) {
    if (!std::isfinite(spec.alpha) || !std::isfinite(spec.beta)) {
      throw DomainError("LinearIntensity: alpha and beta must be finite");
    }
    support_lo_ = a_;
    support_hi_ = b_;
    if (spec.beta > 0.0) {
      support_lo_ = std::clamp(-spec.alpha / spec.beta, a_, b_);
    } else if (spec.beta < 0.0) {
      support_hi_ = std::clamp(-spec.alpha / spec.beta, a_, b_);
    } else if (spec.alpha <= 0.0) {
      support_hi_ = a_;
    }
    rate_lo_ = std::max(spec.alpha + spec.beta * support_lo_, 0.0);
    mass_ = mass_from_support(support_hi_);
  }

  double operator()(double t) const noexcept {
    return mass_from_support(std::clamp(t, support_lo_, support_hi_));
  }

  double inverse(double z) const noexcept {
    if (z <= 0.0) return support_lo_ > a_ ? support_lo_ : a_;
    if (z >= mass_) return support_hi_;
    // Root of rate_lo d + beta d^2 / 2 = z inside the support, written in
    // the cancellation-free form.
    const double disc = std::max(rate_lo_ * rate_lo_ + 2.0 * spec_.beta * z, 0.0);
    const double d = 2.0 * z / (rate_lo_ + std::sqrt(disc));
    return std::min(support_lo_ + d, support_hi_);
  }

  double mass() const noexcept { return mass_; }
  double support_end() const noexcept { return support_hi_; }

 private:
  double mass_from_support(double t) const noexcept {
    const double d = t - support_lo_;
    if (d <= 0.0) return 0.0;
    return rate_lo_ * d + 0.5 * spec_.beta * d * d;
  }

  LinearIntensity spec_;
  double a_;
  double b_;
  double support_lo_;
  double support_hi_;
  double rate_lo_;
  double mass_;
};

/// Exponential Lambda of exp(alpha + beta t) with logarithmic inverse.
/// |beta| below 1e-12 is treated as the constant rate exp(alpha).
class LogLinearCumulative {
 public:
  static constexpr double kFlatSlope = 1e-12;

  LogLinearCumulative(const LogLinearIntensity& spec, const Interval& interval)
      : beta_(spec.beta), a_(interval.a()), b_(interval.b()) {
    if (!std::isfinite(spec.alpha) || !std::isfinite(spec.beta)) {
      throw DomainError("LogLinearIntensity: alpha and beta must be finite");
    }
    flat_ = std::fabs(beta_) < kFlatSlope;
    rate_a_ = flat_ ? std::exp(spec.alpha) : std::exp(spec.alpha + beta_ * a_);
    const double rate_b = flat_ ? rate_a_ : std::exp(spec.alpha + beta_ * b_);
    if (!std::isfinite(rate_a_) || !std::isfinite(rate_b)) {
      throw DomainError("LogLinearIntensity: exp(alpha + beta t) overflows on the interval");
    }
    mass_ = (*this)(b_);
    if (!std::isfinite(mass_)) throw DomainError("LogLinearIntensity: cumulative mass overflows");
  }

  double operator()(double t) const noexcept {
    const double d = std::clamp(t, a_, b_) - a_;
    if (flat_) return rate_a_ * d;
    return rate_a_ * std::expm1(beta_ * d) / beta_;
  }

  double inverse(double z) const noexcept {
    if (z <= 0.0) return a_;
    if (z >= mass_) return b_;
    const double d = flat_ ? z / rate_a_ : std::log1p(beta_ * z / rate_a_) / beta_;
    return std::min(a_ + d, b_);
  }

  double mass() const noexcept { return mass_; }

 private:
  double beta_;
  double a_;
  double b_;
  bool flat_ = false;
  double rate_a_ = 0.0;
  double mass_ = 0.0;
};

//---------------------------------------------------------------------------//
// Numeric inversion
//---------------------------------------------------------------------------//

struct InversionTolerance {
  double relative = 1e-10;  ///< |Lambda(t) - z| <= relative * max(1, |z|)
  int max_iterations = 200;
};

/// Solve Lambda(t) = z on the bracket with Brent's method (bisection,
/// secant and inverse quadratic interpolation). Lambda must be continuous
/// and non-decreasing on the bracket. On a plateau the left edge is
/// returned.
template <class F>
double numeric_inverse(F&& cumulative, double z, const Interval& bracket,
                       InversionTolerance tol = {}) {
  const double ftol = tol.relative * std::max(1.0, std::fabs(z));
  double a = bracket.a();
  double b = bracket.b();
  double fa = cumulative(a) - z;
  double fb = cumulative(b) - z;
  if (!std::isfinite(fa) || !std::isfinite(fb)) {
    throw NumericError("numeric_inverse: cumulative intensity is not finite on the bracket");
  }
  if (fa > ftol || fb < -ftol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "numeric_inverse: target " << z << " outside [" << fa + z << ", " << fb + z << "]";
    throw BracketError(msg.str());
  }
  if (fa >= -ftol) return a;

  // On an exactly flat span the preimage is an interval; walk back to the
  // left edge, i.e. the infimum of {t : Lambda(t) >= z - ftol}.
  const double lo_edge = a;
  auto leftmost = [&](double root) {
    const double probe = root - 1e-9 * std::max(1.0, std::fabs(root));
    if (probe <= lo_edge || cumulative(probe) < cumulative(root)) return root;
    double lo = lo_edge;
    double hi = root;
    for (int i = 0; i < 200; ++i) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      if (cumulative(mid) - z >= -ftol) hi = mid; else lo = mid;
    }
    return hi;
  };

  if (std::fabs(fb) <= ftol) return leftmost(b);

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < tol.max_iterations; ++iter) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double xtol = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b);
    const double xm = 0.5 * (c - b);
    if (std::fabs(fb) <= ftol || std::fabs(xm) <= xtol) return leftmost(b);
    if (std::fabs(e) >= xtol && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(xtol * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > xtol ? d : std::copysign(xtol, xm);
    fb = cumulative(b) - z;
    if (!std::isfinite(fb)) throw NumericError("numeric_inverse: non-finite cumulative intensity");
  }
  throw NumericError("numeric_inverse: no convergence within iteration limit");
}

/// Linear interpolation of the inverse from Lambda tabulated on a regular
/// time grid (clamped outside the table).
class TabulatedInverse {
 public:
  template <class F>
  TabulatedInverse(F&& cumulative, const Interval& interval, double step) {
    if (!(step > 0.0)) throw DomainError("TabulatedInverse: step must be positive");
    const auto n = static_cast<std::size_t>(std::floor(interval.length() / step)) + 1;
    times_.reserve(n + 1);
    masses_.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = interval.a() + step * static_cast<double>(i);
      times_.push_back(t);
      masses_.push_back(cumulative(t));
    }
    if (times_.back() < interval.b()) {
      times_.push_back(interval.b());
      masses_.push_back(cumulative(interval.b()));
    }
    for (std::size_t i = 1; i < masses_.size(); ++i) {
      if (masses_[i] < masses_[i - 1]) {
        throw DomainError("TabulatedInverse: cumulative intensity decreases on the grid");
      }
    }
  }

  double operator()(double z) const noexcept {
    if (z <= masses_.front()) return times_.front();
    if (z >= masses_.back()) {
      auto it = std::lower_bound(masses_.begin(), masses_.end(), masses_.back());
      return times_[static_cast<std::size_t>(it - masses_.begin())];
    }
    const auto j = static_cast<std::size_t>(
        std::lower_bound(masses_.begin(), masses_.end(), z) - masses_.begin());
    const double z0 = masses_[j - 1];
    const double z1 = masses_[j];
    const double w = (z - z0) / (z1 - z0);
    return times_[j - 1] + w * (times_[j] - times_[j - 1]);
  }

  std::size_t size() const noexcept { return times_.size(); }

 private:
  std::vector<double> times_;
  std::vector<double> masses_;
};

//---------------------------------------------------------------------------//
// CumulativeIntensitySpec
//---------------------------------------------------------------------------//

/// Lambda(t) on an interval, with an optional inverse. Without an inverse,
/// inverse() falls back to numeric_inverse on the interval.
class CumulativeIntensity {
 public:
  using Function = std::function<double(double)>;

  CumulativeIntensity(Function cumulative, Interval interval, Function inverse = {},
                      std::optional<std::pair<double, double>> range = std::nullopt,
                      InversionTolerance tol = {})
      : cumulative_(std::move(cumulative)), inverse_(std::move(inverse)), interval_(interval),
        tol_(tol) {
    if (!cumulative_) throw ArgumentError("CumulativeIntensity: cumulative function is required");
    const auto [lo, hi] = range ? *range : std::pair{cumulative_(interval_.a()), cumulative_(interval_.b())};
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw DomainError("CumulativeIntensity: Lambda(a) and Lambda(b) must be finite");
    }
    if (lo > hi) throw DomainError("CumulativeIntensity: Lambda(a) exceeds Lambda(b)");
    lower_ = lo;
    upper_ = hi;
  }

  double operator()(double t) const { return cumulative_(t); }

  /// Time at cumulative mass z in [Lambda(a), Lambda(b)].
  double inverse(double z) const {
    if (inverse_) return inverse_(z);
    return numeric_inverse(cumulative_, z, interval_, tol_);
  }

  bool has_inverse() const noexcept { return static_cast<bool>(inverse_); }
  const Interval& interval() const noexcept { return interval_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double mass() const noexcept { return upper_ - lower_; }
  const InversionTolerance& tolerance() const noexcept { return tol_; }
  const Function& function() const noexcept { return cumulative_; }

  /// Same cumulative intensity with the inverse dropped, forcing the
  /// numeric fallback.
  CumulativeIntensity without_inverse() const {
    return CumulativeIntensity(cumulative_, interval_, {}, std::pair{lower_, upper_}, tol_);
  }

  /// Same cumulative intensity with a different inverse.
  CumulativeIntensity with_inverse(Function inverse) const {
    return CumulativeIntensity(cumulative_, interval_, std::move(inverse), std::pair{lower_, upper_}, tol_);
  }

 private:
  Function cumulative_;
  Function inverse_;
  Interval interval_;
  InversionTolerance tol_;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

namespace detail {

template <class Closed>
CumulativeIntensity wrap_closed_form(Closed closed, const Interval& interval) {
  auto shared = std::make_shared<const Closed>(std::move(closed));
  return CumulativeIntensity([shared](double t) { return (*shared)(t); }, interval,
                             [shared](double z) { return shared->inverse(z); },
                             std::pair{0.0, shared->mass()});
}

inline void require_matching_interval(const Interval& own, const Interval& requested) {
  const double scale = std::max({1.0, std::fabs(own.a()), std::fabs(own.b())});
  if (std::fabs(own.a() - requested.a()) > 1e-12 * scale ||
      std::fabs(own.b() - requested.b()) > 1e-12 * scale) {
    throw ArgumentError("piecewise intensity is defined on a different interval than requested");
  }
}

}  // namespace detail

/// Analytic Lambda and inverse of a closed-form intensity on `interval`.
/// Piecewise variants must be defined exactly on `interval`.
inline CumulativeIntensity cumulative_of(const IntensitySpec& spec, const Interval& interval) {
  return std::visit(
      [&](const auto& s) -> CumulativeIntensity {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, CallableIntensity>) {
          throw UnsupportedError(
              "cumulative_of: no closed form for a callable intensity; supply Lambda or use "
              "thinning");
        } else if constexpr (std::is_same_v<S, PiecewiseConstant>) {
          detail::require_matching_interval(s.interval(), interval);
          return detail::wrap_closed_form(StepCumulative(s), interval);
        } else if constexpr (std::is_same_v<S, PiecewiseConstantRegular>) {
          detail::require_matching_interval(s.interval(), interval);
          return detail::wrap_closed_form(StepCumulative(s.to_irregular()), interval);
        } else if constexpr (std::is_same_v<S, LinearIntensity>) {
          return detail::wrap_closed_form(LinearCumulative(s, interval), interval);
        } else {
          return detail::wrap_closed_form(LogLinearCumulative(s, interval), interval);
        }
      },
      spec);
}

/// Overload for piecewise specs, which carry their own interval.
inline CumulativeIntensity cumulative_of(const PiecewiseConstant& spec) {
  return cumulative_of(IntensitySpec{spec}, spec.interval());
}
inline CumulativeIntensity cumulative_of(const PiecewiseConstantRegular& spec) {
  return cumulative_of(IntensitySpec{spec}, spec.interval());
}

}  // namespace nhppp
