#pragma once

#include "sbo/numerics.hpp"

#include <string>
#include <variant>

namespace sbo {

// Closed-form proximal maps. prox_g(x) = argmin_u g(u) + ½‖u − x‖².

/// Coordinatewise soft-threshold sign(xᵢ)·max(|xᵢ| − threshold, 0).
Vector prox_l1(double threshold, const Vector& x);

/// Euclidean projection onto {‖u‖₂ ≤ radius}.
Vector prox_ball(double radius, const Vector& x);

/// Componentwise clamp into [lower, upper].
Vector prox_box(const Vector& lower, const Vector& upper, const Vector& x);

/// prox of delta·Σ log(1 + |uᵢ|/epsilon), valid when √delta ≤ epsilon.
/// Entries with |xᵢ| ≤ delta/epsilon map to 0 (ties included).
Vector prox_logsum(double delta, double epsilon, const Vector& x);

/// Σ log(1 + |xᵢ|/epsilon).
double logsum_value(double epsilon, const Vector& x);

/// Nonsmooth term of a composite objective. Each alternative knows its value
/// and its prox; the tag is inspected when two terms are combined.
struct ZeroTerm {};
struct L1Term {
  double weight = 1.0;
};
struct BallTerm {
  double radius = 1.0;
};
struct BoxTerm {
  Vector lower;
  Vector upper;
};
/// Σ log(1 + |xᵢ|/epsilon); nonconvex, prox defined for γ ≤ epsilon².
struct LogSumTerm {
  double epsilon = 0.1;
};

class ProxTerm {
 public:
  using Kind = std::variant<ZeroTerm, L1Term, BallTerm, BoxTerm, LogSumTerm>;

  ProxTerm() = default;
  ProxTerm(Kind kind);  // NOLINT(google-explicit-constructor)

  static ProxTerm zero() { return ProxTerm(ZeroTerm{}); }
  static ProxTerm l1(double weight) { return ProxTerm(L1Term{weight}); }
  static ProxTerm ball(double radius) { return ProxTerm(BallTerm{radius}); }
  static ProxTerm box(Vector lower, Vector upper) { return ProxTerm(BoxTerm{std::move(lower), std::move(upper)}); }
  static ProxTerm logsum(double epsilon) { return ProxTerm(LogSumTerm{epsilon}); }

  /// Extended-real value; indicators return +inf outside their set.
  double value(const Vector& x) const;

  /// prox_{γ·g}(x), γ > 0.
  Vector prox(double gamma, const Vector& x) const;

  const Kind& kind() const { return kind_; }
  bool is_zero() const { return std::holds_alternative<ZeroTerm>(kind_); }
  bool is_indicator() const;
  std::string describe() const;

 private:
  Kind kind_ = ZeroTerm{};
};

/// prox of γ(ω_h + η·ω_f). Only pairs with an exact closed form are accepted;
/// anything else is rejected with ConfigError at construction.
class CombinedProx {
 public:
  CombinedProx() = default;
  CombinedProx(ProxTerm omega_h, ProxTerm omega_f);

  Vector operator()(double gamma, double eta, const Vector& x) const;

  const ProxTerm& omega_h() const { return omega_h_; }
  const ProxTerm& omega_f() const { return omega_f_; }

 private:
  ProxTerm omega_h_;
  ProxTerm omega_f_;
};

}  // namespace sbo
