#include "sbo/functions.hpp"

#include "sbo/errors.hpp"
#include "sbo/prox.hpp"

#include <cmath>

namespace sbo {

void SmoothFunction::check_dimension(const Vector& x) const {
  if (x.size() != dimension()) {
    throw ContractViolation(describe() + ": expected length " + std::to_string(dimension()) + ", got " +
                            std::to_string(x.size()));
  }
}

LeastSquares::LeastSquares(DenseMatrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() != b_.size()) throw ContractViolation("LeastSquares: A.rows() != b.size()");
  if (A_.size() == 0) throw ContractViolation("LeastSquares: empty matrix");
  spectral_ = A_.isZero(0.0) ? 0.0 : spectral_norm_sq(A_);
  lipschitz_ = kLipschitzInflation * spectral_;
}

double LeastSquares::value(const Vector& x) const {
  check_dimension(x);
  return 0.5 * (A_ * x - b_).squaredNorm();
}

Vector LeastSquares::gradient(const Vector& x) const {
  check_dimension(x);
  return A_.transpose() * (A_ * x - b_);
}

std::string LeastSquares::describe() const {
  return "least_squares(" + std::to_string(A_.rows()) + "x" + std::to_string(A_.cols()) + ")";
}

ScaledSqNorm::ScaledSqNorm(double weight, Vector center) : weight_(weight), center_(std::move(center)) {
  if (!(weight_ > 0.0)) throw ConfigError("scaled squared norm: weight must be > 0");
  require_finite(center_, "scaled squared norm center");
}

double ScaledSqNorm::value(const Vector& x) const {
  check_dimension(x);
  return 0.5 * weight_ * (x - center_).squaredNorm();
}

Vector ScaledSqNorm::gradient(const Vector& x) const {
  check_dimension(x);
  return weight_ * (x - center_);
}

std::string ScaledSqNorm::describe() const { return "scaled_sq_norm(weight=" + format_real(weight_) + ")"; }

MoreauLogSum::MoreauLogSum(double delta, double epsilon, Index n) : delta_(delta), epsilon_(epsilon), n_(n) {
  if (!(delta_ > 0.0) || !(epsilon_ > 0.0)) throw ConfigError("Moreau log-sum: delta and epsilon must be > 0");
  if (std::sqrt(delta_) > epsilon_) {
    throw ConfigError("Moreau log-sum: requires sqrt(delta) <= epsilon (delta = " + format_real(delta_) +
                      ", epsilon = " + format_real(epsilon_) + ")");
  }
  if (n_ < 1) throw ConfigError("Moreau log-sum: dimension must be >= 1");
}

MoreauLogSum::Eval MoreauLogSum::evaluate(const Vector& x) const {
  check_dimension(x);
  const Vector p = prox_logsum(delta_, epsilon_, x);
  const Vector r = x - p;
  return {logsum_value(epsilon_, p) + r.squaredNorm() / (2.0 * delta_), r / delta_};
}

std::string MoreauLogSum::describe() const {
  return "moreau_logsum(delta=" + format_real(delta_) + ", epsilon=" + format_real(epsilon_) + ")";
}

ZeroFunction::ZeroFunction(Index n) : n_(n) {
  if (n_ < 1) throw ConfigError("zero function: dimension must be >= 1");
}

double ZeroFunction::value(const Vector& x) const {
  check_dimension(x);
  return 0.0;
}

Vector ZeroFunction::gradient(const Vector& x) const {
  check_dimension(x);
  return Vector::Zero(n_);
}

double ls_value(const LeastSquares& ls, const Vector& x) { return ls.value(x); }
Vector ls_gradient(const LeastSquares& ls, const Vector& x) { return ls.gradient(x); }
MoreauLogSum::Eval moreau_eval(const MoreauLogSum& m, const Vector& x) { return m.evaluate(x); }

}  // namespace sbo
