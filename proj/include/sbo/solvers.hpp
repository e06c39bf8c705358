#pragma once

#include "sbo/bilevel.hpp"
#include "sbo/metrics.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sbo {

enum class ScheduleKind {
  /// η_k = η_{0,u}/(η_{0,l} + k), η_{0,u} = 1/(γμ_f), η_{0,l} = 2L_f/μ_f.
  Diminishing,
  /// η = (p+1)·ln K/(γ·μ_f·K); needs K/ln K ≥ 2(p+1)L_f/μ_f.
  ConstantIsta,
  /// η = ((L_h + η̄L_f)/μ_f)·((p+1)·ln K/K)²; needs (K/ln K)² ≥ (L_h+η̄L_f)(p+1)²/(μ_f·η̄).
  ConstantVfista,
  /// User-supplied constant η.
  Fixed,
};

struct RegularizationSchedule {
  ScheduleKind kind = ScheduleKind::Diminishing;
  double p = 1.0;
  std::int64_t horizon = 0;
  double eta_bar = 1.0;
  double eta = 0.0;

  static RegularizationSchedule diminishing() { return {}; }
  static RegularizationSchedule constant_ista(double p, std::int64_t K) {
    return {ScheduleKind::ConstantIsta, p, K, 1.0, 0.0};
  }
  static RegularizationSchedule constant_vfista(double p, double eta_bar, std::int64_t K) {
    return {ScheduleKind::ConstantVfista, p, K, eta_bar, 0.0};
  }
  static RegularizationSchedule fixed(double eta) { return {ScheduleKind::Fixed, 0.0, 0, 1.0, eta}; }
};

std::string to_string(ScheduleKind kind);

/// Throws ConfigError naming the violated inequality.
void validate_schedule(const RegularizationSchedule& s, double gamma, double L_f, double L_h, double mu_f);

/// η_k for the diminishing rule, or the constant η of the other rules.
double schedule_eta(const RegularizationSchedule& s, std::int64_t k, double gamma, double L_f, double L_h,
                    double mu_f);

/// Running weighted average of IR-ISTA iterates:
///   x̄_{k+1} = (Γ_k x̄_k + η_kθ_k x_{k+1})/Γ_{k+1},  Γ_{k+1} = Γ_k + η_kθ_k,
///   θ_{k+1} = θ_k/(1 − η_{k+1}γμ_f),  θ_0 = 1/(1 − η_0γμ_f),  Γ_0 = 0.
/// θ and Γ share a power-of-two scale so geometric growth cannot overflow.
class AveragingState {
 public:
  AveragingState(Vector x0, double eta0, double gamma, double mu_f);

  void advance(double eta_k, const Vector& x_next, double eta_next);

  /// θ_k after k advances (may be +inf once the unscaled value overflows).
  double theta() const;
  /// Γ_k = Σ_{j<k} θ_jη_j.
  double Gamma() const;
  const Vector& average() const { return average_; }

 private:
  double gamma_mu_;
  double theta_;
  double Gamma_ = 0.0;
  int scale_ = 0;
  Vector average_;
};

/// Per-iteration hook used by tests and diagnostics.
struct IterationView {
  std::int64_t k = 0;              // iteration just completed produces x_{k+1}
  const Vector* x_next = nullptr;  // x_{k+1}
  const Vector* average = nullptr; // x̄_{k+1} (IR-ISTA only)
  double eta = 0.0;                // η_k
  double theta = 0.0;              // θ_k (IR-ISTA only)
  const Vector* y_next = nullptr;  // y_{k+1} (R-VFISTA only)
};
using IterationObserver = std::function<void(const IterationView&)>;

struct SolverConfig {
  /// nullopt means "auto": 0.5/L_h for IR-ISTA, 1/(L_h + ηL_f) for R-VFISTA.
  std::optional<double> gamma;
  std::int64_t iterations = 1000;
  RegularizationSchedule schedule;
  /// Trace every `trace_every` iterations; 0 selects a geometric grid of
  /// `trace_points` iterations.
  std::int64_t trace_every = 0;
  int trace_points = 200;
  std::optional<Vector> x0;
  bool record_time = false;
  std::uint64_t seed = 0;
  IterationObserver observer;
};

struct NcConfig {
  int a = 2;
  double eta_bar = 1.0;
  std::int64_t iterations = 16;
  /// Box B; both empty means [−10, 10]ⁿ.
  Vector box_lower;
  Vector box_upper;
  std::optional<Vector> x0;
  /// Upper bound on Σ_k (k+1)^a.
  std::int64_t inner_budget_cap = 50'000'000;
  /// Enforce γ̂ = 1/√K ≤ 1/(2L_f). Turning this off is a diagnostic escape
  /// hatch only; the convergence theory does not cover such runs.
  bool check_outer_step = true;
  std::int64_t trace_every = 1;
  bool record_time = false;
};

struct RunReport {
  std::string solver;
  /// Returned iterate: x̄_K (IR-ISTA), x_K (R-VFISTA, baseline), x̂_K (IPR-VFISTA).
  Vector x;
  /// IPR-VFISTA: iterate of minimal residual over k ∈ [⌊K/2⌋, K−1].
  std::optional<Vector> x_best;
  std::optional<std::int64_t> best_index;
  std::optional<double> best_residual;
  IterateTrace trace;
  std::int64_t iterations = 0;
  std::int64_t inner_iterations = 0;
  double gamma = 0.0;
  double eta0 = 0.0;
  std::optional<double> kappa;
  std::optional<double> momentum;
  std::optional<double> Gamma_K;
  std::optional<double> theta_last;
  bool diverged = false;
  std::string diagnostic;
  std::int64_t elapsed_ns = 0;
  /// Resolved parameter echo, in insertion order.
  std::vector<std::pair<std::string, std::string>> resolved;
};

/// Iteration indices to trace, sorted and unique, always containing 0 and K.
std::vector<std::int64_t> trace_schedule(std::int64_t K, std::int64_t every, int points);

/// Step size picked when SolverConfig::gamma is unset.
double auto_gamma_ir_ista(const BilevelProblem& p, const RegularizationSchedule& s);

/// Iteratively regularized ISTA (diminishing η) and R-ISTA (constant η).
RunReport solve_ir_ista(const BilevelProblem& p, const SolverConfig& cfg);

/// Regularized VFISTA with constant η and momentum (√κ_η − 1)/(√κ_η + 1).
RunReport solve_r_vfista(const BilevelProblem& p, const SolverConfig& cfg);

/// Inexactly projected regularized VFISTA for a smooth, possibly nonconvex
/// upper objective.
RunReport solve_ipr_vfista(const BilevelProblem& p, const NcConfig& cfg);

/// Inner-loop regularization η_k = 16(L_h + η̄)(ln J_k/J_k)², with ln J_k
/// floored at ln 2 so that J_0 = 1 does not give η_0 = 0.
double ipr_inner_eta(std::int64_t J, double L_h, double eta_bar);

/// J_k = (k+1)^a.
std::int64_t ipr_inner_budget(std::int64_t k, int a);

struct BaselineResult {
  Vector x;
  double value = 0.0;
};

/// Plain FISTA on one composite objective, tracking the best iterate.
/// Throws DivergenceError on a non-finite iterate.
BaselineResult solve_fista_baseline(const CompositeObjective& obj, std::int64_t K, double gamma, const Vector& x0);

/// η = α/(2‖g*‖) from the instance's weak-sharp (m = 1) reference data.
double weak_sharp_eta(const BilevelProblem& p);

/// Projection onto argmin h̄ approximated by R-VFISTA on (h̄, ½‖· − x‖²).
Projector approximate_projector(const CompositeObjective& lower, double eta = 1e-6,
                                std::int64_t iterations = 100'000);

}  // namespace sbo
