// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

// nhppp: generate event series, validate samplers, benchmark them.
//
// Exit codes: 0 ok, 2 usage, 3 domain/spec/parse, 4 numeric failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nhppp/io.hpp"
#include "nhppp/nhppp.hpp"

namespace {

using nhppp::io::json;
namespace il = nhppp::illustration;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumeric = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("NHPPP_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("NHPPP_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

/// Where the intensity comes from; shared by generate and validate.
struct SpecFlags {
  std::string values;
  std::string breaks;
  std::string interval;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::string spec_file;
  bool illustration = false;
  bool numeric_inverse = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--values", values, "Comma-separated step rates");
    cmd->add_option("--breaks", breaks, "Comma-separated breakpoints (irregular steps)");
    cmd->add_option("--interval", interval, "Interval a,b");
    cmd->add_option("--alpha", alpha, "Linear/log-linear intercept");
    cmd->add_option("--beta", beta, "Linear/log-linear slope");
    cmd->add_option("--spec", spec_file, "Intensity spec file (.json or piecewise .csv)");
    cmd->add_flag("--illustration", illustration, "Benchmark intensity e^{0.2t}(1+sin t) on (0,6pi]");
    cmd->add_flag("--numeric-inverse", numeric_inverse, "Drop the analytic inverse; invert with Brent");
  }
};

std::optional<nhppp::Interval> parse_interval(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto v = nhppp::io::parse_list(text, "interval");
  if (v.size() != 2) throw nhppp::ParseError("field 'interval': expected a,b");
  return nhppp::Interval(v[0], v[1]);
}

/// A closed-form intensity spec resolved from flags.
nhppp::io::ParsedSpec resolve_spec(const SpecFlags& f, const std::string& algo) {
  const int sources = static_cast<int>(!f.values.empty()) + static_cast<int>(!f.spec_file.empty()) +
                      static_cast<int>(f.alpha.has_value() || f.beta.has_value());
  if (sources > 1) throw UsageError("give exactly one of --values, --spec, or --alpha/--beta");
  const std::optional<nhppp::Interval> iv = parse_interval(f.interval);
  if (!f.spec_file.empty()) {
    auto parsed = nhppp::io::load_spec_file(f.spec_file);
    if (iv) parsed.interval = iv;
    return parsed;
  }
  if (!f.values.empty()) {
    auto values = nhppp::io::parse_list(f.values, "values");
    if (!f.breaks.empty()) {
      nhppp::PiecewiseConstant s(std::move(values), nhppp::io::parse_list(f.breaks, "breaks"));
      return {s, s.interval()};
    }
    if (!iv) throw UsageError("--values needs --breaks or --interval");
    nhppp::PiecewiseConstantRegular s(std::move(values), *iv);
    return {s, iv};
  }
  if (f.alpha || f.beta) {
    if (!f.alpha || !f.beta) throw UsageError("--alpha and --beta go together");
    if (algo == "loglinear") return {nhppp::LogLinearIntensity{*f.alpha, *f.beta}, iv};
    if (algo == "linear") return {nhppp::LinearIntensity{*f.alpha, *f.beta}, iv};
    throw UsageError("--alpha/--beta select a closed form; use --algo linear or loglinear, or a --spec file");
  }
  throw UsageError("no intensity given: use --illustration, --spec, --values, or --alpha/--beta");
}

nhppp::Interval require_interval(const nhppp::io::ParsedSpec& p) {
  if (!p.interval) throw UsageError("an interval is required (--interval a,b)");
  return *p.interval;
}

/// Sampler for one run, built from flags. Sampling itself is delegated to
/// the library.
struct GenerateFlags {
  std::string algo;
  SpecFlags spec;
  std::string majorizer = "c";
  std::uint64_t seed = 0;
  std::size_t runs = 1;
  bool at_most_1 = false;
  bool at_least_1 = false;
  std::optional<std::size_t> at_most_k;
  std::optional<std::uint64_t> min_events;
  bool exactly = false;
  bool vectorized = false;
  std::string format = "csv";
  std::string output;
  unsigned jobs = 1;
};

nhppp::SamplerOptions options_of(const GenerateFlags& g) {
  nhppp::SamplerOptions o;
  o.at_most_1 = g.at_most_1;
  o.at_least_1 = g.at_least_1;
  o.at_most_k = g.at_most_k;
  return o;
}

nhppp::SamplerConfig build_sampler(const GenerateFlags& g) {
  const nhppp::SamplerOptions opts = options_of(g);
  if (g.min_events && g.algo != "orderstats") throw UsageError("--min-events is only supported with --algo orderstats");
  if (g.exactly && !g.min_events) throw UsageError("--exactly needs --min-events");
  if (g.min_events && *g.min_events == 0) throw UsageError("--min-events must be positive");
  if (g.spec.illustration && g.algo != "thinning" && g.algo != "inversion" && g.algo != "orderstats") {
    throw UsageError("--illustration works with --algo thinning, inversion or orderstats");
  }

  if (g.algo == "thinning") {
    if (g.spec.illustration) {
      if (g.majorizer.size() != 1) throw UsageError("--majorizer must be a, b or c");
      const nhppp::Majorizer maj = il::majorizer(g.majorizer[0]);
      return {"thinning", [maj, opts](nhppp::RngStream& s, nhppp::ThinningStats* st) {
                return nhppp::draw_thinning(s, [](double t) { return il::lambda(t); }, maj, il::interval(), opts, st);
              }};
    }
    const auto parsed = resolve_spec(g.spec, g.algo);
    const nhppp::Interval iv = require_interval(parsed);
    // A closed-form spec is its own (exact) majorizer.
    const nhppp::Majorizer maj = std::visit(
        [](const auto& s) -> nhppp::Majorizer {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, nhppp::CallableIntensity>) {
            throw UsageError("callable intensities need a majorizer");
          } else {
            return s;
          }
        },
        parsed.spec);
    const nhppp::IntensitySpec spec = parsed.spec;
    return {"thinning", [maj, spec, iv, opts](nhppp::RngStream& s, nhppp::ThinningStats* st) {
              return nhppp::draw_thinning(s, [&spec](double t) { return nhppp::evaluate(spec, t); }, maj, iv, opts,
                                          st);
            }};
  }

  if (g.algo == "inversion" || g.algo == "orderstats") {
    std::shared_ptr<const nhppp::CumulativeIntensity> cum;
    if (g.spec.illustration) {
      cum = std::make_shared<const nhppp::CumulativeIntensity>(g.spec.numeric_inverse ? il::cumulative_numeric()
                                                                                      : il::cumulative_tabulated());
    } else {
      const auto parsed = resolve_spec(g.spec, g.algo);
      auto c = nhppp::cumulative_of(parsed.spec, require_interval(parsed));
      if (g.spec.numeric_inverse) c = c.without_inverse();
      cum = std::make_shared<const nhppp::CumulativeIntensity>(std::move(c));
    }
    if (g.algo == "inversion") {
      return {"inversion", [cum, opts](nhppp::RngStream& s, nhppp::ThinningStats*) {
                return nhppp::draw_inversion(s, *cum, opts);
              }};
    }
    if (g.min_events) {
      const auto mode = g.exactly ? nhppp::ConditionalMode::exactly : nhppp::ConditionalMode::at_least;
      const std::uint64_t m = *g.min_events;
      return {"orderstats", [cum, opts, m, mode](nhppp::RngStream& s, nhppp::ThinningStats*) {
                return nhppp::draw_conditional(s, *cum, m, opts, mode);
              }};
    }
    return {"orderstats", [cum, opts](nhppp::RngStream& s, nhppp::ThinningStats*) {
              return nhppp::draw_orderstats(s, *cum, opts);
            }};
  }

  const auto parsed = resolve_spec(g.spec, g.algo);
  if (g.algo == "step") {
    if (const auto* reg = std::get_if<nhppp::PiecewiseConstantRegular>(&parsed.spec)) {
      const nhppp::PiecewiseConstantRegular s = *reg;
      return {"step", [s, opts](nhppp::RngStream& st, nhppp::ThinningStats*) {
                return nhppp::draw_sc_step_regular(st, s, opts);
              }};
    }
    if (const auto* irr = std::get_if<nhppp::PiecewiseConstant>(&parsed.spec)) {
      const nhppp::PiecewiseConstant s = *irr;
      return {"step", [s, opts](nhppp::RngStream& st, nhppp::ThinningStats*) {
                return nhppp::draw_sc_step(st, s, opts);
              }};
    }
    throw UsageError("--algo step needs a piecewise-constant intensity");
  }
  if (g.algo == "linear" || g.algo == "loglinear") {
    const nhppp::Interval iv = require_interval(parsed);
    if (const auto* lin = std::get_if<nhppp::LinearIntensity>(&parsed.spec); lin && g.algo == "linear") {
      const nhppp::LinearIntensity s = *lin;
      return {"linear", [s, iv, opts](nhppp::RngStream& st, nhppp::ThinningStats*) {
                return nhppp::draw_sc_linear(st, s.alpha, s.beta, iv, opts);
              }};
    }
    if (const auto* ll = std::get_if<nhppp::LogLinearIntensity>(&parsed.spec); ll && g.algo == "loglinear") {
      const nhppp::LogLinearIntensity s = *ll;
      return {"loglinear", [s, iv, opts](nhppp::RngStream& st, nhppp::ThinningStats*) {
                return nhppp::draw_sc_loglinear(st, s.alpha, s.beta, iv, opts);
              }};
    }
    throw UsageError("--algo " + g.algo + " needs a matching " + g.algo + " spec");
  }
  throw UsageError("unknown --algo " + g.algo);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_generate(const GenerateFlags& g) {
  if (g.runs == 0) throw UsageError("--runs must be at least 1");
  if (g.jobs == 0) throw UsageError("--jobs must be at least 1");
  Output out(g.output);

  if (g.vectorized) {
    if (g.algo != "step") throw UsageError("--vectorized works with --algo step on regular bins");
    const auto parsed = resolve_spec(g.spec, g.algo);
    const auto* reg = std::get_if<nhppp::PiecewiseConstantRegular>(&parsed.spec);
    if (!reg) throw UsageError("--vectorized needs regular bins (--values with --interval)");
    std::vector<double> data;
    for (std::size_t r = 0; r < g.runs; ++r) data.insert(data.end(), reg->values().begin(), reg->values().end());
    const nhppp::RateMatrix rates(g.runs, reg->bins(), std::move(data), reg->interval());
    nhppp::RngStream stream(g.seed, 0);
    nhppp::BatchOptions batch;
    batch.jobs = g.jobs;
    const nhppp::EventMatrix m = nhppp::vdraw_sc_step_regular(stream, rates, options_of(g), batch);
    if (g.format == "json") out.stream() << nhppp::io::matrix_to_json(m).dump() << '\n';
    else if (g.format == "matrix") nhppp::io::write_matrix_csv(out.stream(), m);
    else nhppp::io::write_events_csv(out.stream(), m.to_rows());
    return 0;
  }

  const nhppp::SamplerConfig sampler = build_sampler(g);
  const nhppp::Simulation sim = nhppp::simulate(sampler, g.seed, g.runs, g.jobs);
  if (g.format == "json") {
    out.stream() << nhppp::io::events_to_json(sim.runs).dump() << '\n';
  } else if (g.format == "matrix") {
    nhppp::io::write_matrix_csv(out.stream(), nhppp::EventMatrix::from_rows(sim.runs));
  } else {
    nhppp::io::write_events_csv(out.stream(), sim.runs);
  }
  return 0;
}

struct ValidateFlags {
  SpecFlags spec;
  std::size_t runs = 10000;
  std::string algo = "all";
  std::size_t bins = 70;
  std::size_t resamples = nhppp::kDefaultResamples;
  std::size_t time_resamples = 200;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  unsigned jobs = 1;
};

int cmd_validate(const ValidateFlags& v) {
  if (v.runs < 2) throw UsageError("--runs must be at least 2 for validation");
  if (v.bins < 2) throw UsageError("--bins must be at least 2");
  if (v.jobs == 0) throw UsageError("--jobs must be at least 1");

  std::vector<nhppp::SamplerConfig> configs;
  std::shared_ptr<const nhppp::CumulativeIntensity> cum;
  if (v.spec.illustration) {
    configs = il::configs({}, v.spec.numeric_inverse);
    cum = std::make_shared<const nhppp::CumulativeIntensity>(il::cumulative_tabulated());
  } else {
    const auto parsed = resolve_spec(v.spec, "validate");
    const nhppp::Interval iv = require_interval(parsed);
    cum = std::make_shared<const nhppp::CumulativeIntensity>(nhppp::cumulative_of(parsed.spec, iv));
    const nhppp::Majorizer maj = std::visit(
        [](const auto& s) -> nhppp::Majorizer {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, nhppp::CallableIntensity>) {
            throw UsageError("callable intensities cannot be validated from the command line");
          } else {
            return s;
          }
        },
        parsed.spec);
    const nhppp::IntensitySpec spec = parsed.spec;
    configs.push_back({"thinning", [maj, spec, iv](nhppp::RngStream& s, nhppp::ThinningStats* st) {
                         return nhppp::draw_thinning(s, [&spec](double t) { return nhppp::evaluate(spec, t); }, maj,
                                                     iv, {}, st);
                       }});
    const auto numeric = std::make_shared<const nhppp::CumulativeIntensity>(cum->without_inverse());
    configs.push_back({"inversion", [numeric](nhppp::RngStream& s, nhppp::ThinningStats*) {
                         return nhppp::draw_inversion(s, *numeric);
                       }});
    configs.push_back({"orderstats", [cum](nhppp::RngStream& s, nhppp::ThinningStats*) {
                         return nhppp::draw_orderstats(s, *cum);
                       }});
  }
  if (v.algo != "all") {
    std::vector<nhppp::SamplerConfig> chosen;
    for (auto& c : configs) {
      if (c.name == v.algo) chosen.push_back(c);
    }
    if (chosen.empty()) throw UsageError("--algo " + v.algo + " is not available for this intensity");
    configs = std::move(chosen);
  }

  nhppp::SuiteSettings settings;
  settings.bins = v.bins;
  settings.count_resamples = v.resamples;
  settings.time_resamples = v.time_resamples;
  settings.bootstrap_seed = v.seed ^ 0x9E3779B97F4A7C15ULL;

  json doc;
  doc["seed"] = v.seed;
  doc["runs"] = v.runs;
  doc["theoretical_mass"] = cum->mass();
  if (v.runs < 1000) {
    doc["note"] = "fewer than 1000 runs: tail bins are sparse and p-values coarse; use tolerances accordingly";
  }
  Output out(v.output);
  if (v.format == "csv") out.stream() << nhppp::io::kReportCsvHeader << ",acceptance\n";
  json samplers = json::array();
  for (const auto& c : configs) {
    const nhppp::Simulation sim = nhppp::simulate(c, v.seed, v.runs, v.jobs);
    const nhppp::SuiteReport rep = nhppp::validate_simulation(c.name, sim, *cum, settings);
    if (v.format == "csv") {
      std::ostringstream row;
      nhppp::io::write_report_csv_row(row, c.name, rep.counts, rep.times);
      std::string line = row.str();
      line.pop_back();
      out.stream() << line << ',' << (rep.acceptance ? nhppp::io::format_double(*rep.acceptance) : "") << '\n';
      continue;
    }
    json s;
    s["sampler"] = c.name;
    s["counts"] = nhppp::io::report_to_json(rep.counts);
    if (rep.times) s["times"] = nhppp::io::time_report_to_json(*rep.times);
    if (rep.acceptance) s["acceptance"] = *rep.acceptance;
    samplers.push_back(s);
  }
  if (v.format != "csv") {
    doc["samplers"] = samplers;
    out.stream() << doc.dump(2) << '\n';
  }
  return 0;
}

struct BenchFlags {
  std::size_t reps = 200;
  bool first_only = false;
  std::size_t batch = 0;
  std::size_t batch_reps = 5;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_bench(const BenchFlags& b) {
  if (b.reps == 0 || b.batch_reps == 0) throw UsageError("--reps and --batch-reps must be positive");
  Output out(b.output);
  std::ostream& os = out.stream();
  os << "config,first_only,reps,median_us,q05_us,q25_us,q75_us,q95_us\n";
  auto row = [&](const nhppp::Timing& t) {
    os << t.name << ',' << (b.first_only ? 1 : 0) << ',' << t.reps << ',' << nhppp::io::format_double(t.median_us)
       << ',' << nhppp::io::format_double(t.q05_us) << ',' << nhppp::io::format_double(t.q25_us) << ','
       << nhppp::io::format_double(t.q75_us) << ',' << nhppp::io::format_double(t.q95_us) << '\n';
  };
  for (const auto& t : nhppp::bench_illustration(b.reps, b.first_only, b.seed)) row(t);
  if (b.batch > 0) {
    const nhppp::BatchTiming t = nhppp::bench_batch(b.batch, b.batch_reps, b.first_only, b.seed);
    row(t.batch);
    row(t.scalar);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate non-homogeneous Poisson point processes"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool seed_given = false;

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Draw event series");
  generate->add_option("--algo", gen.algo, "thinning|inversion|orderstats|step|linear|loglinear")
      ->required()
      ->check(CLI::IsMember({"thinning", "inversion", "orderstats", "step", "linear", "loglinear"}));
  gen.spec.add(generate);
  generate->add_option("--majorizer", gen.majorizer, "Illustration majorizer a|b|c")
      ->check(CLI::IsMember({"a", "b", "c"}));
  generate->add_option("--runs", gen.runs, "Number of series");
  generate->add_flag("--at-most-1", gen.at_most_1, "Return only the first event");
  generate->add_flag("--at-least-1", gen.at_least_1, "Condition on at least one event");
  generate->add_option("--at-most-k", gen.at_most_k, "Return only the k earliest events");
  generate->add_option("--min-events", gen.min_events, "Condition on at least m events (orderstats)");
  generate->add_flag("--exactly", gen.exactly, "With --min-events m, draw exactly m events");
  generate->add_flag("--vectorized", gen.vectorized, "Use the batch sampler (regular steps)");
  generate->add_option("--format", gen.format, "csv|json|matrix")->check(CLI::IsMember({"csv", "json", "matrix"}));
  generate->add_option("--output", gen.output, "Output file (default stdout)");
  generate->add_option("--jobs", gen.jobs, "Worker threads");

  ValidateFlags val;
  auto* validate = app.add_subcommand("validate", "Validate samplers against the theoretical laws");
  val.spec.add(validate);
  validate->add_option("--runs", val.runs, "Number of simulated series per sampler");
  validate->add_option("--algo", val.algo, "all or one sampler name");
  validate->add_option("--bins", val.bins, "Event-time bins");
  validate->add_option("--resamples", val.resamples, "Bootstrap resamples for the count W1 p-value");
  validate->add_option("--time-resamples", val.time_resamples, "Bootstrap resamples for the event-time W1 p-value");
  validate->add_option("--format", val.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  validate->add_option("--output", val.output, "Output file (default stdout)");
  validate->add_option("--jobs", val.jobs, "Worker threads");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the samplers on the illustration intensity");
  bench_cmd->add_option("--reps", bench.reps, "Timed series per configuration");
  bench_cmd->add_flag("--first-only", bench.first_only, "Draw only the first event");
  bench_cmd->add_option("--batch", bench.batch, "Also time R-row batch sampling against a scalar loop");
  bench_cmd->add_option("--batch-reps", bench.batch_reps, "Timed batches");
  bench_cmd->add_option("--output", bench.output, "Output file (default stdout)");

  for (auto* cmd : {generate, validate, bench_cmd}) {
    cmd->add_option("--seed", seed, "Seed (default $NHPPP_SEED or 1)")->each([&](const std::string&) {
      seed_given = true;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (!seed_given) seed = default_seed();
    if (generate->parsed()) {
      gen.seed = seed;
      return cmd_generate(gen);
    }
    if (validate->parsed()) {
      val.seed = seed;
      return cmd_validate(val);
    }
    bench.seed = seed;
    return cmd_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nhppp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case nhppp::ErrorKind::numeric: return kExitNumeric;
      case nhppp::ErrorKind::argument: return kExitUsage;
      default: return kExitDomain;
    }
  }
}
