#pragma once

#include "sbo/functions.hpp"
#include "sbo/numerics.hpp"
#include "sbo/prox.hpp"

#include <functional>
#include <optional>
#include <string>

namespace sbo {

/// smooth + nonsmooth; f̄ = f + ω_f for the upper level, h̄ = h + ω_h for the
/// lower level.
struct CompositeObjective {
  SmoothPtr smooth;
  ProxTerm nonsmooth;

  double value(const Vector& x) const { return smooth->value(x) + nonsmooth.value(x); }
  Index dimension() const { return smooth->dimension(); }
};

struct WeakSharp {
  double alpha = 1.0;
  /// Growth order m ≥ 1 (m = 2 is quadratic growth).
  double order = 1.0;
};

/// An element g* of ∂f̄(x*), with its norm cached.
struct SubgradientAtOpt {
  Vector g;
  double norm = 0.0;

  explicit SubgradientAtOpt(Vector v) : g(std::move(v)), norm(g.norm()) {}
};

using Projector = std::function<Vector(const Vector&)>;

/// Ground truth attached to an instance. Built by the instance generators and
/// read only by the metrics; solvers never touch it.
struct ReferenceTruth {
  double h_star = 0.0;
  std::optional<double> f_star;
  std::optional<Vector> x_star;
  std::optional<WeakSharp> weak_sharp;
  std::optional<SubgradientAtOpt> subgradient;
  /// Projection onto the lower-level solution set, when available.
  Projector projector;
  bool projector_exact = false;
  /// Accuracy of h_star / f_star; signed metrics may dip below zero by this much.
  double tolerance = 1e-10;
  std::string provenance = "analytic";
};

class BilevelProblem {
 public:
  /// Validates dimensions and builds the combined prox of (ω_h, ω_f); throws
  /// ConfigError for unsupported nonsmooth pairs.
  BilevelProblem(CompositeObjective upper, CompositeObjective lower, std::optional<ReferenceTruth> reference = {});

  const CompositeObjective& upper() const { return upper_; }
  const CompositeObjective& lower() const { return lower_; }
  const CombinedProx& combined_prox() const { return prox_; }
  const std::optional<ReferenceTruth>& reference() const { return reference_; }
  void set_reference(ReferenceTruth ref) { reference_ = std::move(ref); }

  Index dimension() const { return upper_.dimension(); }
  double lipschitz_upper() const { return upper_.smooth->lipschitz(); }
  double lipschitz_lower() const { return lower_.smooth->lipschitz(); }
  double strong_convexity_upper() const { return upper_.smooth->strong_convexity(); }

 private:
  CompositeObjective upper_;
  CompositeObjective lower_;
  CombinedProx prox_;
  std::optional<ReferenceTruth> reference_;
};

/// ḡ_η(x) = h̄(x) + η·f̄(x).
double regularized_value(const BilevelProblem& p, double eta, const Vector& x);

/// ∇h(x) + η·∇f(x) (smooth parts only).
Vector regularized_gradient(const BilevelProblem& p, double eta, const Vector& x);

/// q_η(x) = prox_{γω_η}[x − γ(∇h(x) + η∇f(x))].
Vector q_eta_step(const BilevelProblem& p, double eta, double gamma, const Vector& x);

/// Minimum-norm element of ∂f̄(x*) when ω_f is zero or λ‖·‖₁: coordinates
/// where x* vanishes take the value in [−λ, λ] closest to −∇f(x*)ᵢ.
SubgradientAtOpt min_norm_subgradient(const CompositeObjective& upper, const Vector& x_star);

}  // namespace sbo
