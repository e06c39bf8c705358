#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>

namespace sbo {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

bool all_finite(const Vector& x);

/// Throws ContractViolation when `x` is empty or holds a NaN/Inf.
void require_finite(const Vector& x, std::string_view what);

/// A·x with a dimension check.
Vector matvec(const DenseMatrix& A, const Vector& x);

/// Aᵀ·y with a dimension check.
Vector matvec_t(const DenseMatrix& A, const Vector& y);

struct PowerIterationOptions {
  double tol = 1e-8;
  int max_iter = 5000;
};

/// Largest eigenvalue of AᵀA by power iteration on v ↦ Aᵀ(Av), started from
/// the normalized all-ones vector. Throws ConvergenceError (carrying the best
/// estimate) if `max_iter` is exhausted first.
double spectral_norm_sq(const DenseMatrix& A, PowerIterationOptions opts = {});

/// Safety factor applied to estimated Lipschitz constants before they are
/// used in stepsizes.
inline constexpr double kLipschitzInflation = 1.01;

/// Relative singular-value cutoff used by min_norm_ls.
inline constexpr double kPseudoinverseCutoff = 1e-10;

/// Minimum-norm least-squares solution A†b, singular values below
/// kPseudoinverseCutoff·σ_max treated as zero.
Vector min_norm_ls(const DenseMatrix& A, const Vector& b);

// Text format: "m n" header, then m lines of n reals. Vectors use m = 1.
// Reals are printed in shortest round-trip form.

std::string format_real(double v);
void write_matrix(std::ostream& out, const DenseMatrix& A);
void write_vector(std::ostream& out, const Vector& v);

/// Reads one matrix block; `line` is advanced past it and used for error
/// positions.
DenseMatrix read_matrix(std::istream& in, int& line);
Vector read_vector(std::istream& in, int& line);

/// Seeded generator with platform-independent uniform and normal draws
/// (std::*_distribution output is implementation defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Vector normal_vector(Index n);
  Vector uniform_vector(Index n, double lo, double hi);
  DenseMatrix normal_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sbo
