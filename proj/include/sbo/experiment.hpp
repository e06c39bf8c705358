#pragma once

#include "sbo/problems.hpp"
#include "sbo/solvers.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sbo {

/// Flat "key = value" file with dotted keys; '#' starts a comment.
struct Config {
  std::vector<std::pair<std::string, std::string>> entries;
  /// Directory relative paths inside the file are resolved against.
  std::string base_dir = ".";

  std::optional<std::string> get(const std::string& key) const;
};

Config parse_config(std::istream& in, std::string base_dir = ".");
Config load_config(const std::string& path);

enum class SolverKind { IrIsta, RIstaConst, RVfista, IprVfista, FistaBaseline };

std::string to_string(SolverKind kind);

struct ExperimentConfig {
  InstanceSpec instance;
  SolverKind solver = SolverKind::IrIsta;
  std::int64_t K = 1000;
  std::optional<double> p;
  double eta_bar = 1.0;
  int a = 2;
  std::optional<double> gamma;
  /// "auto", "weak_sharp" or a number.
  std::string eta = "auto";
  double box_lower = -10.0;
  double box_upper = 10.0;
  std::int64_t inner_budget_cap = 50'000'000;
  bool check_outer_step = true;
  /// "ones", "unit" (1/‖1‖) or "zeros"; empty picks "unit" for the
  /// ball-constrained model and "ones" otherwise.
  std::string x0;
  /// fista_baseline only: which level to minimize.
  std::string target = "lower";

  std::string output_dir = ".";
  std::int64_t trace_every = 0;
  int trace_points = 200;
  bool record_time = false;
  std::vector<std::string> plots;
};

/// Validates every key before anything is computed; ConfigError names the
/// offending key.
ExperimentConfig parse_experiment(const Config& cfg);

struct NamedFit {
  std::string metric;
  RateFit fit;
};

struct ExperimentResult {
  ExperimentConfig config;
  RunReport report;
  std::vector<NamedFit> fits;
  std::string provenance;
  std::int64_t wall_ns = 0;
};

/// Builds the instance, runs the solver and fits rates for every metric with
/// enough positive samples. Pass `problem` to reuse an already built instance.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const BilevelProblem* problem = nullptr);

inline constexpr const char* kTraceHeader =
    "k,eta,theta,f_bar,h_bar,infeas,subopt,dist_xstar_sq,dist_lower,residual_sq,elapsed_ns";

void write_trace_csv(std::ostream& out, const IterateTrace& trace);
std::string trace_csv(const IterateTrace& trace);

/// Column names accepted by trace_samples: the CSV columns plus "abs_subopt"
/// and "subopt_envelope", the upper envelope max_{j ≥ k} max(subopt_j, 0).
/// The suboptimality bound is one-sided, so only overshoot is enveloped.
std::vector<MetricSample> trace_samples(const IterateTrace& trace, const std::string& metric);

/// (k, value) pairs of one CSV column; rows with an empty field are skipped.
/// Throws ConfigError when the column is missing.
std::vector<MetricSample> read_csv_column(std::istream& in, const std::string& metric);

void write_report(std::ostream& out, const ExperimentResult& res);

struct PlotOptions {
  bool logx = false;
  bool logy = false;
  int width = 640;
  int height = 400;
};

/// Screen coordinates of the plotted polyline, in order.
struct PlotGeometry {
  std::vector<std::pair<double, double>> points;
  std::string svg;
};

/// Throws ConfigError when fewer than two plottable points remain.
PlotGeometry render_svg(const std::vector<MetricSample>& samples, const std::string& metric, PlotOptions opts);

/// One row of a rates suite: "config,metric,expected,tolerance[,label[,window]]".
/// `config` is a config path (optionally "path@K=a;b;c" for a sweep over K
/// that fits the final values) or "selftest:power" for a synthetic 7/k series.
/// `expected` is a slope, or "<=s" for an upper bound.
struct RateRow {
  std::string config;
  std::string metric;
  std::string expected;
  double tolerance = 0.0;
  std::string label;
  std::optional<RateWindow> window;
  int line = 0;
};

struct RateOutcome {
  RateRow row;
  bool pass = false;
  std::optional<RateFit> fit;
  std::string message;
};

std::vector<RateRow> parse_rate_suite(std::istream& in);
RateOutcome evaluate_rate_row(const RateRow& row, const std::string& base_dir);
std::vector<RateOutcome> run_rate_suite(const std::vector<RateRow>& rows, const std::string& base_dir, int threads);

}  // namespace sbo
