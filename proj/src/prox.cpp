#include "sbo/prox.hpp"

#include "sbo/errors.hpp"

#include <cmath>
#include <limits>

namespace sbo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_logsum_params(double delta, double epsilon) {
  if (!(delta > 0.0) || !(epsilon > 0.0)) throw ConfigError("log-sum prox: delta and epsilon must be positive");
  if (std::sqrt(delta) > epsilon) {
    throw ConfigError("log-sum prox: requires sqrt(delta) <= epsilon (delta = " + format_real(delta) +
                      ", epsilon = " + format_real(epsilon) + ")");
  }
}

}  // namespace

Vector prox_l1(double threshold, const Vector& x) {
  if (!(threshold >= 0.0)) throw ContractViolation("prox_l1: threshold must be >= 0");
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) out(i) = sign(x(i)) * std::max(std::abs(x(i)) - threshold, 0.0);
  return out;
}

Vector prox_ball(double radius, const Vector& x) {
  if (!(radius > 0.0)) throw ContractViolation("prox_ball: radius must be > 0");
  const double norm = x.norm();
  if (norm <= radius) return x;
  return (radius / norm) * x;
}

Vector prox_box(const Vector& lower, const Vector& upper, const Vector& x) {
  if (lower.size() != x.size() || upper.size() != x.size()) throw ContractViolation("prox_box: dimension mismatch");
  if ((lower.array() > upper.array()).any()) throw ContractViolation("prox_box: lower > upper");
  return x.cwiseMax(lower).cwiseMin(upper);
}

Vector prox_logsum(double delta, double epsilon, const Vector& x) {
  check_logsum_params(delta, epsilon);
  const double threshold = delta / epsilon;
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x(i));
    if (a <= threshold) {
      out(i) = 0.0;
    } else {
      out(i) = 0.5 * sign(x(i)) * (a - epsilon + std::sqrt((a + epsilon) * (a + epsilon) - 4.0 * delta));
    }
  }
  return out;
}

double logsum_value(double epsilon, const Vector& x) {
  double s = 0.0;
  for (Index i = 0; i < x.size(); ++i) s += std::log1p(std::abs(x(i)) / epsilon);
  return s;
}

ProxTerm::ProxTerm(Kind kind) : kind_(std::move(kind)) {
  std::visit(Overloaded{
                 [](const ZeroTerm&) {},
                 [](const L1Term& t) {
                   if (!(t.weight >= 0.0)) throw ConfigError("l1 term: weight must be >= 0");
                 },
                 [](const BallTerm& t) {
                   if (!(t.radius > 0.0)) throw ConfigError("ball term: radius must be > 0");
                 },
                 [](const BoxTerm& t) {
                   if (t.lower.size() != t.upper.size()) throw ConfigError("box term: bound lengths differ");
                   if ((t.lower.array() > t.upper.array()).any()) throw ConfigError("box term: lower > upper");
                 },
                 [](const LogSumTerm& t) {
                   if (!(t.epsilon > 0.0)) throw ConfigError("log-sum term: epsilon must be > 0");
                 },
             },
             kind_);
}

double ProxTerm::value(const Vector& x) const {
  return std::visit(Overloaded{
                        [](const ZeroTerm&) { return 0.0; },
                        [&](const L1Term& t) { return t.weight * x.lpNorm<1>(); },
                        // Projected points may land a rounding error outside the sphere.
                        [&](const BallTerm& t) { return x.norm() <= t.radius * (1.0 + 1e-12) ? 0.0 : kInf; },
                        [&](const BoxTerm& t) {
                          const bool inside = (x.array() >= t.lower.array()).all() && (x.array() <= t.upper.array()).all();
                          return inside ? 0.0 : kInf;
                        },
                        [&](const LogSumTerm& t) { return logsum_value(t.epsilon, x); },
                    },
                    kind_);
}

Vector ProxTerm::prox(double gamma, const Vector& x) const {
  if (!(gamma > 0.0)) throw ContractViolation("prox: gamma must be > 0");
  return std::visit(Overloaded{
                        [&](const ZeroTerm&) -> Vector { return x; },
                        [&](const L1Term& t) { return prox_l1(gamma * t.weight, x); },
                        [&](const BallTerm& t) { return prox_ball(t.radius, x); },
                        [&](const BoxTerm& t) { return prox_box(t.lower, t.upper, x); },
                        [&](const LogSumTerm& t) { return prox_logsum(gamma, t.epsilon, x); },
                    },
                    kind_);
}

bool ProxTerm::is_indicator() const {
  return std::holds_alternative<BallTerm>(kind_) || std::holds_alternative<BoxTerm>(kind_);
}

std::string ProxTerm::describe() const {
  return std::visit(Overloaded{
                        [](const ZeroTerm&) -> std::string { return "zero"; },
                        [](const L1Term& t) { return "l1(weight=" + format_real(t.weight) + ")"; },
                        [](const BallTerm& t) { return "ball(radius=" + format_real(t.radius) + ")"; },
                        [](const BoxTerm& t) { return "box(n=" + std::to_string(t.lower.size()) + ")"; },
                        [](const LogSumTerm& t) { return "logsum(epsilon=" + format_real(t.epsilon) + ")"; },
                    },
                    kind_);
}

CombinedProx::CombinedProx(ProxTerm omega_h, ProxTerm omega_f)
    : omega_h_(std::move(omega_h)), omega_f_(std::move(omega_f)) {
  const bool l1_pair =
      std::holds_alternative<L1Term>(omega_h_.kind()) && std::holds_alternative<L1Term>(omega_f_.kind());
  if (!(omega_h_.is_zero() || omega_f_.is_zero() || l1_pair)) {
    throw ConfigError("unsupported nonsmooth pair (omega_h = " + omega_h_.describe() + ", omega_f = " +
                      omega_f_.describe() + "): the prox of their sum has no closed form");
  }
}

Vector CombinedProx::operator()(double gamma, double eta, const Vector& x) const {
  if (!(gamma > 0.0)) throw ContractViolation("combined prox: gamma must be > 0");
  if (!(eta >= 0.0)) throw ContractViolation("combined prox: eta must be >= 0");
  if (omega_f_.is_zero() || eta == 0.0) return omega_h_.prox(gamma, x);
  if (omega_h_.is_zero()) {
    // η·ι_C = ι_C for η > 0, so indicators ignore the scaling.
    return omega_f_.is_indicator() ? omega_f_.prox(gamma, x) : omega_f_.prox(gamma * eta, x);
  }
  const double wh = std::get<L1Term>(omega_h_.kind()).weight;
  const double wf = std::get<L1Term>(omega_f_.kind()).weight;
  return prox_l1(gamma * (wh + eta * wf), x);
}

}  // namespace sbo
