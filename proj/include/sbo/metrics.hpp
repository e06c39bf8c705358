#pragma once

#include "sbo/bilevel.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sbo {

// Error metrics. Each returns nullopt when the instance lacks the reference
// data the metric needs.

/// h̄(x) − h̄* (signed).
std::optional<double> infeasibility(const BilevelProblem& p, const Vector& x);

/// f̄(x) − f̄* (signed; negative values are legitimate for infeasible x).
std::optional<double> suboptimality(const BilevelProblem& p, const Vector& x);

/// ‖x − Π_{X*_h̄}[x]‖₂.
std::optional<double> dist_to_lower_set(const BilevelProblem& p, const Vector& x);

/// ‖x − x*‖₂².
std::optional<double> dist_to_optimum_sq(const BilevelProblem& p, const Vector& x);

/// ‖G_{1/γ̂}(x)‖₂ with G(x) = (x − Π_{X*_h̄}[x − γ̂∇f(x)])/γ̂. The residual is
/// only meaningful for 0 < γ̂ < 1/L_f; that bound is checked unless
/// `check_step` is false.
std::optional<double> residual_norm(const BilevelProblem& p, const Vector& x, double gamma_hat,
                                    bool check_step = true);

/// One row of an iterate trace. Optional fields are empty when the metric is
/// unavailable for the instance or the solver.
struct TraceRecord {
  std::int64_t k = 0;
  double eta = 0.0;
  std::optional<double> theta;
  double f_bar = 0.0;
  double h_bar = 0.0;
  std::optional<double> infeas;
  std::optional<double> subopt;
  std::optional<double> dist_xstar_sq;
  std::optional<double> dist_lower;
  std::optional<double> residual_sq;
  std::optional<std::int64_t> elapsed_ns;
};

struct IterateTrace {
  std::vector<TraceRecord> records;
};

/// Evaluates every metric available for `x`. The residual is computed only
/// when `gamma_hat` is given.
TraceRecord evaluate_record(const BilevelProblem& p, const Vector& x, std::int64_t k, double eta,
                            std::optional<double> theta = {}, std::optional<double> gamma_hat = {},
                            bool check_step = true);

struct MetricSample {
  std::int64_t k = 0;
  double value = 0.0;
};

struct RateWindow {
  double k_min = 1.0;
  double k_max = 1e300;
};

/// Least-squares line through (ln k, ln value).
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  RateWindow window;
  int samples = 0;
};

/// Fits over samples with value > 0 and k inside the window. Throws
/// sbo::Error when fewer than `min_samples` qualify.
RateFit fit_rate(std::span<const MetricSample> samples, RateWindow window, int min_samples = 5);

/// Default window [K/10, K].
RateWindow default_window(std::int64_t K);

}  // namespace sbo
