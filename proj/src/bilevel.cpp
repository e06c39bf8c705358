#include "sbo/bilevel.hpp"

#include "sbo/errors.hpp"

#include <cmath>

namespace sbo {

BilevelProblem::BilevelProblem(CompositeObjective upper, CompositeObjective lower,
                               std::optional<ReferenceTruth> reference)
    : upper_(std::move(upper)), lower_(std::move(lower)), reference_(std::move(reference)) {
  if (!upper_.smooth || !lower_.smooth) throw ConfigError("bilevel problem: missing smooth part");
  if (upper_.dimension() != lower_.dimension()) {
    throw ConfigError("bilevel problem: upper dimension " + std::to_string(upper_.dimension()) +
                      " != lower dimension " + std::to_string(lower_.dimension()));
  }
  if (const auto* box = std::get_if<BoxTerm>(&lower_.nonsmooth.kind()); box && box->lower.size() != dimension()) {
    throw ConfigError("bilevel problem: box bounds do not match the dimension");
  }
  prox_ = CombinedProx(lower_.nonsmooth, upper_.nonsmooth);
}

namespace {

void check_args(const BilevelProblem& p, double eta, const Vector& x, const char* op) {
  if (x.size() != p.dimension()) {
    throw ContractViolation(std::string(op) + ": expected length " + std::to_string(p.dimension()) + ", got " +
                            std::to_string(x.size()));
  }
  if (!(eta >= 0.0)) throw ContractViolation(std::string(op) + ": eta must be >= 0");
}

}  // namespace

double regularized_value(const BilevelProblem& p, double eta, const Vector& x) {
  check_args(p, eta, x, "regularized_value");
  const double h = p.lower().value(x);
  return eta == 0.0 ? h : h + eta * p.upper().value(x);
}

Vector regularized_gradient(const BilevelProblem& p, double eta, const Vector& x) {
  check_args(p, eta, x, "regularized_gradient");
  Vector g = p.lower().smooth->gradient(x);
  if (eta != 0.0) g += eta * p.upper().smooth->gradient(x);
  return g;
}

Vector q_eta_step(const BilevelProblem& p, double eta, double gamma, const Vector& x) {
  if (!(gamma > 0.0)) throw ContractViolation("q_eta_step: gamma must be > 0");
  const Vector grad = regularized_gradient(p, eta, x);
  return p.combined_prox()(gamma, eta, x - gamma * grad);
}

SubgradientAtOpt min_norm_subgradient(const CompositeObjective& upper, const Vector& x_star) {
  Vector g = upper.smooth->gradient(x_star);
  if (upper.nonsmooth.is_zero()) return SubgradientAtOpt(std::move(g));
  const auto* l1 = std::get_if<L1Term>(&upper.nonsmooth.kind());
  if (!l1) throw ConfigError("min_norm_subgradient: only zero or l1 upper nonsmooth terms are supported");
  const double lambda = l1->weight;
  for (Index i = 0; i < g.size(); ++i) {
    if (x_star(i) > 0.0) {
      g(i) += lambda;
    } else if (x_star(i) < 0.0) {
      g(i) -= lambda;
    } else {
      // g_i + s with s ∈ [−λ, λ]; pick s to minimize |g_i + s|.
      g(i) = std::copysign(std::max(std::abs(g(i)) - lambda, 0.0), g(i));
    }
  }
  return SubgradientAtOpt(std::move(g));
}

}  // namespace sbo
