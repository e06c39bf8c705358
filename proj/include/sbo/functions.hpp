#pragma once

#include "sbo/numerics.hpp"

#include <memory>
#include <string>

namespace sbo {

/// Smooth function with stored curvature constants. Instances are immutable
/// and shared between problems and solver runs.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;

  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  /// Gradient Lipschitz constant L (already inflated when estimated).
  virtual double lipschitz() const = 0;
  /// Strong convexity modulus μ; 0 for merely convex or nonconvex functions.
  virtual double strong_convexity() const = 0;
  virtual Index dimension() const = 0;
  virtual bool nonconvex() const { return false; }
  virtual std::string describe() const = 0;

 protected:
  void check_dimension(const Vector& x) const;
};

using SmoothPtr = std::shared_ptr<const SmoothFunction>;

/// ½‖Ax − b‖². L = 1.01·λ_max(AᵀA), estimated once at construction.
class LeastSquares final : public SmoothFunction {
 public:
  LeastSquares(DenseMatrix A, Vector b);

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double lipschitz() const override { return lipschitz_; }
  double strong_convexity() const override { return 0.0; }
  Index dimension() const override { return A_.cols(); }
  std::string describe() const override;

  const DenseMatrix& matrix() const { return A_; }
  const Vector& rhs() const { return b_; }
  /// Power-iteration estimate of λ_max(AᵀA) before inflation.
  double spectral_estimate() const { return spectral_; }

 private:
  DenseMatrix A_;
  Vector b_;
  double spectral_ = 0.0;
  double lipschitz_ = 0.0;
};

/// (weight/2)‖x − center‖².
class ScaledSqNorm final : public SmoothFunction {
 public:
  ScaledSqNorm(double weight, Vector center);
  ScaledSqNorm(double weight, Index n) : ScaledSqNorm(weight, Vector::Zero(n)) {}

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double lipschitz() const override { return weight_; }
  double strong_convexity() const override { return weight_; }
  Index dimension() const override { return center_.size(); }
  std::string describe() const override;

  const Vector& center() const { return center_; }

 private:
  double weight_;
  Vector center_;
};

/// Moreau envelope of l(x) = Σ log(1 + |xᵢ|/ε) with parameter δ:
/// M(x) = l(p) + ‖x − p‖²/(2δ), ∇M(x) = (x − p)/δ, p = prox_{δl}(x).
class MoreauLogSum final : public SmoothFunction {
 public:
  static constexpr double kDefaultDelta = 1e-2;
  static constexpr double kDefaultEpsilon = 1e-1;

  MoreauLogSum(double delta, double epsilon, Index n);

  struct Eval {
    double value;
    Vector gradient;
  };
  Eval evaluate(const Vector& x) const;

  double value(const Vector& x) const override { return evaluate(x).value; }
  Vector gradient(const Vector& x) const override { return evaluate(x).gradient; }
  double lipschitz() const override { return 1.0 / delta_; }
  double strong_convexity() const override { return 0.0; }
  Index dimension() const override { return n_; }
  bool nonconvex() const override { return true; }
  std::string describe() const override;

  double delta() const { return delta_; }
  double epsilon() const { return epsilon_; }

 private:
  double delta_;
  double epsilon_;
  Index n_;
};

class ZeroFunction final : public SmoothFunction {
 public:
  explicit ZeroFunction(Index n);

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double lipschitz() const override { return 0.0; }
  double strong_convexity() const override { return 0.0; }
  Index dimension() const override { return n_; }
  std::string describe() const override { return "zero"; }

 private:
  Index n_;
};

/// Free-function forms of the least-squares and Moreau evaluations.
double ls_value(const LeastSquares& ls, const Vector& x);
Vector ls_gradient(const LeastSquares& ls, const Vector& x);
MoreauLogSum::Eval moreau_eval(const MoreauLogSum& m, const Vector& x);

}  // namespace sbo
