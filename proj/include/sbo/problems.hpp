#pragma once

#include "sbo/bilevel.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sbo {

/// A discretized first-kind Fredholm problem: A x_true ≈ b.
struct LinearSystem {
  DenseMatrix A;
  Vector b;
  Vector x_true;
};

// Ports of phillips.m, baart.m and foxgood.m from Regularization Tools.
LinearSystem gen_phillips(Index n);  // n ≥ 4, n divisible by 4
LinearSystem gen_baart(Index n);     // n ≥ 4, n even
LinearSystem gen_foxgood(Index n);   // n ≥ 4
LinearSystem gen_regtools(std::string_view which, Index n);

/// Name, size, seed and parameters that fully determine an instance.
struct InstanceSpec {
  std::string name;
  Index n = 0;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> params;

  double number(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
};

/// Parses "name:n[:key=value,key=value...]", e.g. "rank_deficient_ls:50:rank=25,seed=1".
InstanceSpec parse_instance_spec(std::string_view text);

/// A·x* = b-solution set, spectrum σᵢ = 1/i for i ≤ rank. h̄ = ½‖Ax − b‖²,
/// f̄ = (μ_f/2)‖x‖² + λ‖x‖₁. The reference carries the exact affine projector,
/// quadratic growth α = σ_rank²/2 and x* (closed form for λ = 0, dual solve
/// with an active-set polish otherwise).
struct RankDeficientOptions {
  double mu_f = 1.0;
  double lambda = 0.0;
  double noise_std = 0.0;
};
BilevelProblem gen_rank_deficient_ls(Index n, Index rank, std::uint64_t seed, RankDeficientOptions opts = {});

/// h̄ = ‖x‖₁ (h = 0), f̄ = ½‖x − c‖². X*_h̄ = {0}, weak sharp of order 1 with α = 1.
BilevelProblem gen_l1_weak_sharp(const Vector& c);
/// Seeded center for gen_l1_weak_sharp: standard normal entries.
Vector weak_sharp_center(Index n, std::uint64_t seed);

/// Convex model on a Regularization Tools system: f̄ = (μ_f/2)‖x‖² + λ‖x‖₁, h̄ = ½‖Ax − b‖².
struct ConvexRegtoolsOptions {
  double mu_f = 1.0;
  double lambda = 1.0;
  /// R-VFISTA budget for the reference-grade f̄*; 0 skips f̄*.
  std::int64_t f_star_iterations = 1'000'000;
  double f_star_eta = 1e-8;
  std::int64_t h_star_iterations = 100'000;
};
BilevelProblem make_convex_regtools(const DenseMatrix& A, const Vector& b, ConvexRegtoolsOptions opts = {});

/// Nonconvex model: f̄ = Moreau envelope of the log-sum penalty, h̄ = ½‖Ax − b‖² over ‖x‖₂ ≤ 1.
struct NonconvexOptions {
  double delta = MoreauLogSum::kDefaultDelta;
  double epsilon = MoreauLogSum::kDefaultEpsilon;
  double radius = 1.0;
  std::int64_t h_star_iterations = 1'000'000;
  double h_star_eta = 1e-8;
  std::int64_t projector_iterations = 100'000;
  double projector_eta = 1e-6;
};
BilevelProblem make_nonconvex_regtools(const DenseMatrix& A, const Vector& b, NonconvexOptions opts = {});
BilevelProblem gen_nonconvex_regtools(Index n, std::string_view which, NonconvexOptions opts = {});

/// h̄* for ½‖Ax − b‖² over a ball: the smaller of a FISTA baseline value and
/// an R-VFISTA run on (h̄, ½‖·‖²) with tiny η.
double ball_ls_reference_value(const DenseMatrix& A, const Vector& b, double radius, std::int64_t iterations,
                               double eta);

/// The feasible start 1/‖1‖ used for the ball-constrained model.
Vector unit_start(Index n);

/// Instance file: "key = value" header, blank line, matrix block, blank line, vector block.
struct InstanceFile {
  std::vector<std::pair<std::string, std::string>> header;
  DenseMatrix A;
  Vector b;

  std::optional<std::string> get(const std::string& key) const;
};

void save_instance(const std::string& path, const InstanceFile& inst);
InstanceFile load_instance(const std::string& path);
void write_instance(std::ostream& out, const InstanceFile& inst);
InstanceFile read_instance(std::istream& in);

/// The (A, b) data behind a spec; ConfigError for instances without a matrix.
InstanceFile generate_instance_file(const InstanceSpec& spec);

/// Builds the bilevel problem described by a spec.
BilevelProblem build_problem(const InstanceSpec& spec);

}  // namespace sbo
