#include "doctest.h"
#include "sbo/errors.hpp"
#include "sbo/functions.hpp"
#include "sbo/prox.hpp"

#include <cmath>
#include <memory>
#include <vector>

using namespace sbo;

namespace {

DenseMatrix m22(double a, double b, double c, double d) {
  DenseMatrix A(2, 2);
  A << a, b, c, d;
  return A;
}

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

double fd_error(const SmoothFunction& f, const Vector& x) {
  const double h = 1e-6;
  const Vector g = f.gradient(x);
  Vector fd(x.size());
  for (Index j = 0; j < x.size(); ++j) {
    Vector xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    fd(j) = (f.value(xp) - f.value(xm)) / (2 * h);
  }
  return (g - fd).lpNorm<Eigen::Infinity>() / std::max(1.0, g.lpNorm<Eigen::Infinity>());
}

}  // namespace

TEST_SUITE("functions") {
  TEST_CASE("ls_value examples") {
    const Vector x = v2(3, 4);
    CHECK(ls_value(LeastSquares(DenseMatrix::Identity(2, 2), x), x) == 0.0);
    CHECK(ls_value(LeastSquares(DenseMatrix::Identity(2, 2), Vector::Zero(2)), x) == doctest::Approx(12.5));
    CHECK(ls_value(LeastSquares(m22(1, 2, 3, 4), v2(1, 1)), v2(1, 1)) == doctest::Approx(20.0));
  }

  TEST_CASE("ls_gradient examples") {
    const LeastSquares fit(m22(1, 2, 3, 4), v2(3, 7));
    CHECK(ls_gradient(fit, v2(1, 1)).norm() == 0.0);
    const Vector x = v2(-2, 5);
    CHECK(ls_gradient(LeastSquares(DenseMatrix::Identity(2, 2), Vector::Zero(2)), x) == x);
    const LeastSquares ls(m22(1, 2, 3, 4), v2(1, 1));
    CHECK(ls_gradient(ls, v2(1, 1)) == v2(20, 28));
    CHECK(fd_error(ls, v2(1, 1)) <= 1e-5);
  }

  TEST_CASE("least squares Lipschitz constant is inflated once") {
    Vector d(3);
    d << 1, 2, 3;
    const LeastSquares ls(d.asDiagonal(), Vector::Zero(3));
    CHECK(ls.spectral_estimate() == doctest::Approx(9.0).epsilon(1e-8));
    CHECK(ls.lipschitz() == doctest::Approx(9.0 * kLipschitzInflation).epsilon(1e-8));
    CHECK(ls.strong_convexity() == 0.0);
  }

  TEST_CASE("dimension mismatches are rejected") {
    const LeastSquares ls(m22(1, 2, 3, 4), v2(1, 1));
    CHECK_THROWS_AS(ls.value(Vector::Ones(3)), ContractViolation);
    CHECK_THROWS_AS(ls.gradient(Vector::Ones(3)), ContractViolation);
    CHECK_THROWS_AS(LeastSquares(m22(1, 2, 3, 4), Vector::Ones(3)), ContractViolation);
    CHECK_THROWS_AS(ScaledSqNorm(1.0, 2).value(Vector::Ones(3)), ContractViolation);
  }

  TEST_CASE("moreau_eval examples") {
    const MoreauLogSum m(1e-2, 1e-1, 1);
    const auto at0 = moreau_eval(m, Vector::Zero(1));
    CHECK(at0.value == 0.0);
    CHECK(at0.gradient(0) == 0.0);
    const auto e = moreau_eval(m, Vector::Constant(1, 0.05));
    CHECK(e.value == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(e.gradient(0) == doctest::Approx(5.0).epsilon(1e-12));

    // Infimal convolution by brute force: min_u l(u) + (x − u)²/(2δ).
    for (const double x : {0.05, 0.3, -0.7, 1.5}) {
      double best = 1e300;
      for (double u = -3.0; u <= 3.0; u += 1e-5)
        best = std::min(best, std::log(1.0 + std::abs(u) / 0.1) + (x - u) * (x - u) / 0.02);
      CHECK(m.value(Vector::Constant(1, x)) == doctest::Approx(best).epsilon(1e-6));
    }
  }

  TEST_CASE("moreau rejects sqrt(delta) > epsilon") {
    CHECK_THROWS_AS(MoreauLogSum(0.04, 0.1, 3), ConfigError);
    CHECK_NOTHROW(MoreauLogSum(0.01, 0.1, 3));
  }

  TEST_CASE("moreau envelope is below l and even") {
    const MoreauLogSum m(1e-2, 1e-1, 5);
    CHECK(m.nonconvex());
    CHECK(m.lipschitz() == doctest::Approx(100.0));
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
      const Vector x = rng.uniform_vector(5, -2.0, 2.0);
      CHECK(m.value(x) <= logsum_value(0.1, x) + 1e-14);
      Vector flipped = x;
      flipped(i % 5) = -flipped(i % 5);
      CHECK(m.value(flipped) == m.value(x));
    }
  }

  TEST_CASE("finite differences on 20 seeded points per function") {
    Rng rng(101);
    std::vector<std::shared_ptr<SmoothFunction>> fns = {
        std::make_shared<LeastSquares>(rng.normal_matrix(7, 5), rng.normal_vector(7)),
        std::make_shared<ScaledSqNorm>(0.7, rng.normal_vector(5)),
        std::make_shared<MoreauLogSum>(1e-2, 1e-1, 5),
        std::make_shared<ZeroFunction>(5),
    };
    for (const auto& f : fns) {
      CAPTURE(f->describe());
      CHECK(f->strong_convexity() <= f->lipschitz());
      for (int i = 0; i < 20; ++i) CHECK(fd_error(*f, rng.uniform_vector(5, -1.0, 1.0)) <= 1e-5);
    }
  }

  TEST_CASE("scaled sq norm quadratic identity") {
    Rng rng(7);
    const double mu = 2.5;
    const ScaledSqNorm f(mu, rng.normal_vector(4));
    CHECK(f.lipschitz() == mu);
    CHECK(f.strong_convexity() == mu);
    for (int i = 0; i < 20; ++i) {
      const Vector x = rng.normal_vector(4), y = rng.normal_vector(4);
      const double lhs = f.value(x) - f.value(y) - f.gradient(y).dot(x - y);
      CHECK(lhs == doctest::Approx(0.5 * mu * (x - y).squaredNorm()).epsilon(1e-12));
    }
  }

  TEST_CASE("zero function") {
    const ZeroFunction z(3);
    CHECK(z.value(Vector::Ones(3)) == 0.0);
    CHECK(z.gradient(Vector::Ones(3)) == Vector::Zero(3));
    CHECK(z.lipschitz() == 0.0);
    CHECK(z.strong_convexity() == 0.0);
  }
}
