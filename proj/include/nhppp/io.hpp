// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file io.hpp
/// Reading intensity specs and writing event series, event matrices and
/// validation reports.
///
/// Piecewise CSV: rows `t_break,value`, optional header; the value of the
/// last row is empty because it only closes the final bin.
///
/// Spec JSON, one of
///   {"type": "piecewise", "values": [...], "breakpoints": [...]}
///   {"type": "piecewise_regular", "values": [...], "interval": [a, b]}
///   {"type": "linear" | "loglinear", "alpha": x, "beta": y, "interval": [a, b]}
#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "nhppp/batch.hpp"
#include "nhppp/errors.hpp"
#include "nhppp/intensity.hpp"
#include "nhppp/types.hpp"
#include "nhppp/validation.hpp"

namespace nhppp::io {

using json = nlohmann::ordered_json;

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return x;
}

[[noreturn]] inline void parse_fail(const std::string& source, std::size_t line, const std::string& field,
                                    const std::string& what) {
  std::ostringstream msg;
  msg << source << ": line " << line << ", field '" << field << "': " << what;
  throw ParseError(msg.str());
}

}  // namespace detail

/// Comma-separated doubles, e.g. a flag value "1,2,3".
inline std::vector<double> parse_list(std::string_view text, const std::string& field) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    const auto x = detail::parse_number(item);
    if (!x) {
      throw ParseError("field '" + field + "': '" + std::string(detail::trim(item)) + "' is not a number");
    }
    out.push_back(*x);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline PiecewiseConstant read_piecewise_csv(std::istream& in, const std::string& source = "<csv>") {
  std::vector<double> breaks, values;
  std::string line;
  std::size_t lineno = 0;
  bool closed = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const std::size_t comma = text.find(',');
    if (comma == std::string_view::npos) detail::parse_fail(source, lineno, "value", "expected 't_break,value'");
    const std::string_view t_text = text.substr(0, comma);
    const std::string_view v_text = detail::trim(text.substr(comma + 1));
    const auto t = detail::parse_number(t_text);
    if (!t) {
      if (breaks.empty() && !closed && lineno == 1) continue;  // header
      detail::parse_fail(source, lineno, "t_break", "'" + std::string(detail::trim(t_text)) + "' is not a number");
    }
    if (closed) detail::parse_fail(source, lineno, "t_break", "rows after the closing breakpoint");
    breaks.push_back(*t);
    if (v_text.empty()) {
      closed = true;
      continue;
    }
    const auto v = detail::parse_number(v_text);
    if (!v) detail::parse_fail(source, lineno, "value", "'" + std::string(v_text) + "' is not a number");
    values.push_back(*v);
  }
  if (!closed) detail::parse_fail(source, lineno, "value", "last row must close the final bin with an empty value");
  try {
    return PiecewiseConstant(std::move(values), std::move(breaks));
  } catch (const DomainError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

/// A parsed spec and, when the spec carries one, its interval.
struct ParsedSpec {
  IntensitySpec spec;
  std::optional<Interval> interval;
};

namespace detail {

inline double number_field(const json& j, const char* key, const std::string& source) {
  if (!j.contains(key)) throw ParseError(source + ": missing field '" + key + "'");
  if (!j[key].is_number()) throw ParseError(source + ": field '" + key + "' must be a number");
  return j[key].get<double>();
}

inline std::vector<double> array_field(const json& j, const char* key, const std::string& source) {
  if (!j.contains(key)) throw ParseError(source + ": missing field '" + key + "'");
  const json& a = j[key];
  if (!a.is_array()) throw ParseError(source + ": field '" + key + "' must be an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) {
      throw ParseError(source + ": field '" + key + "[" + std::to_string(i) + "]' must be a number");
    }
    out.push_back(a[i].get<double>());
  }
  return out;
}

inline Interval interval_field(const json& j, const std::string& source) {
  const auto v = array_field(j, "interval", source);
  if (v.size() != 2) throw ParseError(source + ": field 'interval' must be [a, b]");
  try {
    return {v[0], v[1]};
  } catch (const DomainError& e) {
    throw ParseError(source + ": field 'interval': " + e.what());
  }
}

}  // namespace detail

inline ParsedSpec spec_from_json(const json& j, const std::string& source = "<json>") {
  if (!j.is_object()) throw ParseError(source + ": spec must be a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) throw ParseError(source + ": missing string field 'type'");
  const std::string type = j["type"].get<std::string>();
  try {
    if (type == "piecewise") {
      PiecewiseConstant s(detail::array_field(j, "values", source), detail::array_field(j, "breakpoints", source));
      return {s, s.interval()};
    }
    if (type == "piecewise_regular") {
      PiecewiseConstantRegular s(detail::array_field(j, "values", source), detail::interval_field(j, source));
      return {s, s.interval()};
    }
    if (type == "linear" || type == "loglinear") {
      const double alpha = detail::number_field(j, "alpha", source);
      const double beta = detail::number_field(j, "beta", source);
      std::optional<Interval> iv;
      if (j.contains("interval")) iv = detail::interval_field(j, source);
      if (type == "linear") return {LinearIntensity{alpha, beta}, iv};
      return {LogLinearIntensity{alpha, beta}, iv};
    }
  } catch (const DomainError& e) {
    throw ParseError(source + ": " + e.what());
  }
  throw ParseError(source + ": field 'type': unknown spec type '" + type + "'");
}

inline ParsedSpec parse_spec_json(std::string_view text, const std::string& source = "<json>") {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  return spec_from_json(j, source);
}

/// Reads a .json spec or a piecewise .csv table.
inline ParsedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  const bool is_csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (is_csv) {
    PiecewiseConstant s = read_piecewise_csv(in, path);
    return {s, s.interval()};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_json(buf.str(), path);
}

//---------------------------------------------------------------------------//
// Event output
//---------------------------------------------------------------------------//

/// Long format `run_id,event_index,time`, event_index from 1.
inline void write_events_csv(std::ostream& out, const std::vector<EventSeries>& runs, std::size_t first_run = 0) {
  out << "run_id,event_index,time\n";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (std::size_t k = 0; k < runs[r].size(); ++k) {
      out << first_run + r << ',' << k + 1 << ',' << format_double(runs[r][k]) << '\n';
    }
  }
}

inline json events_to_json(const std::vector<EventSeries>& runs) {
  json arr = json::array();
  for (const auto& r : runs) arr.push_back(r);
  return arr;
}

/// One row per series, empty cells for padding.
inline void write_matrix_csv(std::ostream& out, const EventMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

/// Array of arrays; padding is dropped.
inline json matrix_to_json(const EventMatrix& m) { return events_to_json(m.to_rows()); }

//---------------------------------------------------------------------------//
// Reports
//---------------------------------------------------------------------------//

namespace detail {
inline json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
}  // namespace detail

inline json report_to_json(const ValidationReport& r) {
  const CountMetrics& c = r.counts;
  json j;
  j["J"] = c.runs;
  j["N"] = c.theoretical_mass;
  j["sample_mean"] = c.sample_mean;
  j["B_mu"] = c.bias_mean;
  j["B_mu_rel"] = c.rel_bias_mean;
  j["B_mu_rel_percent"] = c.rel_bias_mean_percent;
  j["sample_variance"] = c.sample_variance;
  j["B_V"] = c.bias_var;
  j["B_V_rel"] = c.rel_bias_var;
  j["B_V_rel_percent"] = c.rel_bias_var_percent;
  for (const auto& ci : c.intervals) {
    const std::string key = "CI_" + std::to_string(static_cast<int>(std::lround(ci.level * 100)));
    j[key] = {ci.lower, ci.upper};
  }
  j["chi2"] = r.chi2.statistic;
  j["chi2_df"] = r.chi2.df;
  j["chi2_p"] = r.chi2.p_value;
  j["chi2_lower_tail_p"] = r.chi2.lower_tail_p;
  j["chi2_pearson"] = r.chi2.pearson_statistic;
  j["chi2_pearson_p"] = r.chi2.pearson_p_value;
  j["chi2_L"] = r.chi2.lower_quantile;
  j["chi2_U"] = r.chi2.upper_quantile;
  j["W1"] = r.w1.w1;
  j["W1_p"] = detail::number_or_null(r.w1.p_value);
  return j;
}

inline json time_report_to_json(const TimeGofResult& r) {
  json j;
  j["events"] = r.events;
  j["bins"] = r.chi2.bins;
  j["chi2"] = r.chi2.statistic;
  j["chi2_df"] = r.chi2.df;
  j["chi2_p"] = r.chi2.p_value;
  j["chi2_lower_tail_p"] = r.chi2.lower_tail_p;
  j["chi2_pearson"] = r.chi2.pearson_statistic;
  j["chi2_pearson_p"] = r.chi2.pearson_p_value;
  j["W1"] = r.w1.w1;
  j["W1_p"] = detail::number_or_null(r.w1.p_value);
  return j;
}

inline constexpr const char* kReportCsvHeader =
    "sampler,J,N,sample_mean,B_mu,B_mu_rel,B_mu_rel_percent,sample_variance,B_V,B_V_rel,B_V_rel_percent,"
    "CI_95_lo,CI_95_hi,CI_90_lo,CI_90_hi,CI_75_lo,CI_75_hi,CI_50_lo,CI_50_hi,chi2,chi2_df,chi2_p,"
    "chi2_pearson,chi2_pearson_p,W1,W1_p,time_chi2,time_chi2_p,time_chi2_pearson_p,time_W1,time_W1_p";

inline void write_report_csv_row(std::ostream& out, const std::string& sampler, const ValidationReport& r,
                                 const std::optional<TimeGofResult>& t) {
  const CountMetrics& c = r.counts;
  out << sampler << ',' << c.runs << ',' << format_double(c.theoretical_mass) << ','
      << format_double(c.sample_mean) << ',' << format_double(c.bias_mean) << ','
      << format_double(c.rel_bias_mean) << ',' << format_double(c.rel_bias_mean_percent) << ','
      << format_double(c.sample_variance) << ',' << format_double(c.bias_var) << ','
      << format_double(c.rel_bias_var) << ',' << format_double(c.rel_bias_var_percent);
  for (const auto& ci : c.intervals) out << ',' << ci.lower << ',' << ci.upper;
  out << ',' << format_double(r.chi2.statistic) << ',' << format_double(r.chi2.df) << ','
      << format_double(r.chi2.p_value) << ',' << format_double(r.chi2.pearson_statistic) << ','
      << format_double(r.chi2.pearson_p_value) << ',' << format_double(r.w1.w1) << ','
      << format_double(r.w1.p_value);
  if (t) {
    out << ',' << format_double(t->chi2.statistic) << ',' << format_double(t->chi2.p_value) << ','
        << format_double(t->chi2.pearson_p_value) << ',' << format_double(t->w1.w1) << ','
        << format_double(t->w1.p_value);
  } else {
    out << ",,,,,";
  }
  out << '\n';
}

}  // namespace nhppp::io
