#include "sbo/problems.hpp"

#include "sbo/errors.hpp"
#include "sbo/solvers.hpp"

#include <Eigen/Householder>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

namespace sbo {

namespace {

constexpr double kPi = std::numbers::pi;

void require_size(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("parameter '" + key + "' must be a number, got '" + value + "'");
  }
}

std::int64_t to_integer(const std::string& key, const std::string& value) {
  const double v = to_number(key, value);
  if (v != std::floor(v) || std::abs(v) > 9e15) {
    throw ConfigError("parameter '" + key + "' must be an integer, got '" + value + "'");
  }
  return static_cast<std::int64_t>(v);
}

DenseMatrix orthogonal_factor(Rng& rng, Index n) {
  Eigen::HouseholderQR<DenseMatrix> qr(rng.normal_matrix(n, n));
  return qr.householderQ() * DenseMatrix::Identity(n, n);
}

// Affine solution set {x : V_rᵀx = V_rᵀx_ls}; Π(x) = x − V_rV_rᵀ(x − x_ls).
Projector affine_projector(DenseMatrix Vr, Vector x_ls) {
  return [Vr = std::move(Vr), x_ls = std::move(x_ls)](const Vector& x) -> Vector {
    const Vector d = x - x_ls;
    return x - Vr * (Vr.transpose() * d);
  };
}

struct L1Reference {
  Vector x;
  Vector g;  // Aᵀy ∈ ∂f̄(x*)
  bool certified = false;
};

// min (μ/2)‖x‖² + λ‖x‖₁ s.t. Ax = b via accelerated ascent on the dual
// D(y) = bᵀy − Σ max(|(Aᵀy)ᵢ| − λ, 0)²/(2μ), followed by an active-set
// polish: on the support S with signs s, u = x_S + (λ/μ)s is the min-norm
// solution of A_S u = b + (λ/μ)A_S s. The result is accepted only if it passes
// the full KKT check.
L1Reference l1_constrained_reference(const DenseMatrix& A, const Vector& b, double mu, double lambda,
                                     double sigma_max) {
  const Index n = A.cols();
  const auto primal = [&](const Vector& y) {
    const Vector v = A.transpose() * y;
    return Vector(prox_l1(lambda, v) / mu);
  };
  const double step = mu / (sigma_max * sigma_max);
  Vector y = Vector::Zero(A.rows());
  Vector w = y;
  double t = 1.0;
  L1Reference best;
  for (int round = 0; round < 8; ++round) {
    for (int k = 0; k < 25'000; ++k) {
      const Vector next = w + step * (b - A * primal(w));
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      w = next + ((t - 1.0) / t_next) * (next - y);
      y = next;
      t = t_next;
    }
    const Vector v = A.transpose() * y;
    std::vector<Index> support;
    for (Index i = 0; i < n; ++i)
      if (std::abs(v(i)) > lambda) support.push_back(i);
    if (support.empty()) continue;
    DenseMatrix AS(A.rows(), static_cast<Index>(support.size()));
    Vector s(static_cast<Index>(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j) {
      AS.col(static_cast<Index>(j)) = A.col(support[j]);
      s(static_cast<Index>(j)) = v(support[j]) > 0.0 ? 1.0 : -1.0;
    }
    const Vector u = min_norm_ls(AS, b + (lambda / mu) * (AS * s));
    const Vector xS = u - (lambda / mu) * s;
    Vector x = Vector::Zero(n);
    for (std::size_t j = 0; j < support.size(); ++j) x(support[j]) = xS(static_cast<Index>(j));
    // y with A_Sᵀy = μu; u lies in the row space of A_S.
    const Vector ys = min_norm_ls(AS.transpose(), mu * u);
    const Vector g = A.transpose() * ys;
    bool ok = (A * x - b).norm() <= 1e-10 * std::max(1.0, b.norm());
    for (std::size_t j = 0; j < support.size() && ok; ++j) ok = xS(static_cast<Index>(j)) * s(static_cast<Index>(j)) > 0.0;
    for (Index i = 0; i < n && ok; ++i) {
      if (x(i) != 0.0) {
        ok = std::abs(g(i) - (mu * x(i) + lambda * (x(i) > 0.0 ? 1.0 : -1.0))) <= 1e-9 * std::max(1.0, lambda);
      } else {
        ok = std::abs(g(i)) <= lambda * (1.0 + 1e-9);
      }
    }
    if (ok) return {x, g, true};
    best = {primal(y), A.transpose() * y, false};
  }
  return best;
}

}  // namespace

LinearSystem gen_phillips(Index n) {
  require_size(n >= 4 && n % 4 == 0, "phillips requires n >= 4 divisible by 4 (got " + std::to_string(n) + ")");
  const double h = 12.0 / static_cast<double>(n);
  const Index n4 = n / 4;
  Vector c(n4 + 2);
  for (Index i = 0; i < n4 + 2; ++i) c(i) = std::cos(static_cast<double>(i - 1) * 4.0 * kPi / static_cast<double>(n));
  Vector r1 = Vector::Zero(n);
  const double scale = 9.0 / (h * kPi * kPi);
  for (Index i = 0; i < n4; ++i) r1(i) = h + scale * (2.0 * c(i + 1) - c(i) - c(i + 2));
  r1(n4) = h / 2.0 + scale * (std::cos(4.0 * kPi / static_cast<double>(n)) - 1.0);
  DenseMatrix A(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) A(i, j) = r1(std::abs(i - j));

  Vector b = Vector::Zero(n);
  const double cc = kPi / 3.0;
  const auto F = [cc](double t) {
    return t * (6.0 - std::abs(t) / 2.0) +
           ((3.0 - std::abs(t) / 2.0) * std::sin(cc * t) - 2.0 / cc * (std::cos(cc * t) - 1.0)) / cc;
  };
  for (Index i = n / 2 + 1; i <= n; ++i) {
    const double t1 = -6.0 + static_cast<double>(i) * h;
    const double t2 = t1 - h;
    b(i - 1) = F(t1) - F(t2);
    b(n - i) = b(i - 1);
  }
  b /= std::sqrt(h);

  Vector x = Vector::Zero(n);
  for (Index j = 0; j < n4; ++j) {
    const double g0 = static_cast<double>(j) * h;
    const double g1 = static_cast<double>(j + 1) * h;
    x(2 * n4 + j) = (h + (std::sin(g1 * cc) - std::sin(g0 * cc)) / cc) / std::sqrt(h);
  }
  for (Index j = 0; j < n4; ++j) x(n4 + j) = x(3 * n4 - 1 - j);
  return {std::move(A), std::move(b), std::move(x)};
}

LinearSystem gen_baart(Index n) {
  require_size(n >= 4 && n % 2 == 0, "baart requires n >= 4 and even (got " + std::to_string(n) + ")");
  const double nd = static_cast<double>(n);
  const double hs = kPi / (2.0 * nd);
  const double ht = kPi / nd;
  const double c = 1.0 / (3.0 * std::sqrt(2.0));
  const auto ihs = [hs](Index i) { return static_cast<double>(i) * hs; };
  DenseMatrix A(n, n);
  Vector f3(n);
  for (Index i = 0; i < n; ++i) f3(i) = std::exp(ihs(i + 1)) - std::exp(ihs(i));
  for (Index j = 1; j <= n; ++j) {
    const Vector f1 = f3;
    const double co2 = std::cos((static_cast<double>(j) - 0.5) * ht);
    const double co3 = std::cos(static_cast<double>(j) * ht);
    Vector f2(n);
    for (Index i = 0; i < n; ++i) f2(i) = (std::exp(ihs(i + 1) * co2) - std::exp(ihs(i) * co2)) / co2;
    if (j == n / 2) {
      f3.setConstant(hs);
    } else {
      for (Index i = 0; i < n; ++i) f3(i) = (std::exp(ihs(i + 1) * co3) - std::exp(ihs(i) * co3)) / co3;
    }
    A.col(j - 1) = c * (f1 + 4.0 * f2 + f3);
  }
  Vector si(2 * n);
  for (Index m = 0; m < 2 * n; ++m) {
    const double s = static_cast<double>(m + 1) * 0.5 * hs;
    si(m) = std::sinh(s) / s;
  }
  Vector b(n);
  b(0) = 1.0 + 4.0 * si(0) + si(1);
  for (Index k = 1; k < n; ++k) b(k) = si(2 * k - 1) + 4.0 * si(2 * k) + si(2 * k + 1);
  b *= std::sqrt(hs) / 3.0;
  Vector x(n);
  for (Index i = 0; i < n; ++i) {
    x(i) = -(std::cos(static_cast<double>(i + 1) * ht) - std::cos(static_cast<double>(i) * ht)) / std::sqrt(ht);
  }
  return {std::move(A), std::move(b), std::move(x)};
}

LinearSystem gen_foxgood(Index n) {
  require_size(n >= 4, "foxgood requires n >= 4 (got " + std::to_string(n) + ")");
  const double h = 1.0 / static_cast<double>(n);
  Vector t(n);
  for (Index i = 0; i < n; ++i) t(i) = h * (static_cast<double>(i) + 0.5);
  DenseMatrix A(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) A(i, j) = h * std::sqrt(t(i) * t(i) + t(j) * t(j));
  Vector b(n);
  for (Index i = 0; i < n; ++i) b(i) = (std::pow(1.0 + t(i) * t(i), 1.5) - t(i) * t(i) * t(i)) / 3.0;
  return {std::move(A), std::move(b), std::move(t)};
}

LinearSystem gen_regtools(std::string_view which, Index n) {
  if (which == "phillips") return gen_phillips(n);
  if (which == "baart") return gen_baart(n);
  if (which == "foxgood") return gen_foxgood(n);
  throw ConfigError("unknown test problem '" + std::string(which) + "' (expected phillips, baart or foxgood)");
}

double InstanceSpec::number(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : to_number(key, it->second);
}

std::int64_t InstanceSpec::integer(const std::string& key, std::int64_t fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : to_integer(key, it->second);
}

std::string InstanceSpec::text(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

InstanceSpec parse_instance_spec(std::string_view text) {
  InstanceSpec spec;
  const auto c1 = text.find(':');
  spec.name = trim(text.substr(0, c1));
  if (spec.name.empty()) throw ConfigError("instance spec needs a name: '" + std::string(text) + "'");
  if (c1 == std::string_view::npos) return spec;
  const auto rest = text.substr(c1 + 1);
  const auto c2 = rest.find(':');
  spec.n = to_integer("n", trim(rest.substr(0, c2)));
  if (c2 == std::string_view::npos) return spec;
  std::string_view kv = rest.substr(c2 + 1);
  while (!kv.empty()) {
    const auto comma = kv.find(',');
    const std::string item = trim(kv.substr(0, comma));
    kv = comma == std::string_view::npos ? std::string_view{} : kv.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("instance spec parameter '" + item + "' is not key=value");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(to_integer(key, value));
    } else {
      spec.params[key] = value;
    }
  }
  return spec;
}

BilevelProblem gen_rank_deficient_ls(Index n, Index rank, std::uint64_t seed, RankDeficientOptions opts) {
  if (n < 2 || rank < 1 || rank >= n) {
    throw ConfigError("rank_deficient_ls requires 1 <= rank < n (got n = " + std::to_string(n) +
                      ", rank = " + std::to_string(rank) + ")");
  }
  if (!(opts.mu_f > 0.0) || !(opts.lambda >= 0.0) || !(opts.noise_std >= 0.0)) {
    throw ConfigError("rank_deficient_ls requires mu_f > 0, lambda >= 0, noise_std >= 0");
  }
  Rng rng(seed);
  const DenseMatrix U = orthogonal_factor(rng, n);
  const DenseMatrix V = orthogonal_factor(rng, n);
  Vector sigma(rank);
  for (Index i = 0; i < rank; ++i) sigma(i) = 1.0 / static_cast<double>(i + 1);
  const DenseMatrix Ur = U.leftCols(rank);
  const DenseMatrix Vr = V.leftCols(rank);
  DenseMatrix A = Ur * sigma.asDiagonal() * Vr.transpose();
  const Vector w = rng.normal_vector(n);
  Vector b = A * w;
  double h_star = 0.0;
  if (opts.noise_std > 0.0) {
    b += opts.noise_std * rng.normal_vector(n);
    const Vector r = b - Ur * (Ur.transpose() * b);
    h_star = 0.5 * r.squaredNorm();
  }
  const Vector x_ls = Vr * (sigma.cwiseInverse().asDiagonal() * (Ur.transpose() * b));

  ReferenceTruth ref;
  ref.h_star = h_star;
  ref.projector = affine_projector(Vr, x_ls);
  ref.projector_exact = true;
  ref.weak_sharp = WeakSharp{0.5 * sigma(rank - 1) * sigma(rank - 1), 2.0};
  ref.provenance = "analytic";
  // The affine constraint set uses the noise-free consistent part U_rU_rᵀb.
  const Vector b_range = Ur * (Ur.transpose() * b);
  if (opts.lambda == 0.0) {
    ref.x_star = x_ls;
    ref.subgradient = SubgradientAtOpt(opts.mu_f * x_ls);
  } else {
    const L1Reference l1 = l1_constrained_reference(A, b_range, opts.mu_f, opts.lambda, 1.0);
    ref.x_star = l1.x;
    ref.subgradient = SubgradientAtOpt(l1.g);
    if (!l1.certified) {
      ref.tolerance = 1e-8;
      ref.provenance = "dual-solve";
    } else {
      ref.provenance = "dual-solve+kkt";
    }
  }
  ref.f_star = 0.5 * opts.mu_f * ref.x_star->squaredNorm() + opts.lambda * ref.x_star->lpNorm<1>();

  CompositeObjective upper{std::make_shared<ScaledSqNorm>(opts.mu_f, n),
                           opts.lambda > 0.0 ? ProxTerm::l1(opts.lambda) : ProxTerm::zero()};
  CompositeObjective lower{std::make_shared<LeastSquares>(std::move(A), std::move(b)), ProxTerm::zero()};
  return BilevelProblem(std::move(upper), std::move(lower), std::move(ref));
}

Vector weak_sharp_center(Index n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("l1_weak_sharp requires n >= 1");
  Rng rng(seed);
  return rng.normal_vector(n);
}

BilevelProblem gen_l1_weak_sharp(const Vector& c) {
  require_finite(c, "l1_weak_sharp center");
  const Index n = c.size();
  ReferenceTruth ref;
  ref.h_star = 0.0;
  ref.f_star = 0.5 * c.squaredNorm();
  ref.x_star = Vector::Zero(n);
  ref.weak_sharp = WeakSharp{1.0, 1.0};
  ref.subgradient = SubgradientAtOpt(-c);
  ref.projector = [n](const Vector&) -> Vector { return Vector::Zero(n); };
  ref.projector_exact = true;
  CompositeObjective upper{std::make_shared<ScaledSqNorm>(1.0, c), ProxTerm::zero()};
  CompositeObjective lower{std::make_shared<ZeroFunction>(n), ProxTerm::l1(1.0)};
  return BilevelProblem(std::move(upper), std::move(lower), std::move(ref));
}

BilevelProblem make_convex_regtools(const DenseMatrix& A, const Vector& b, ConvexRegtoolsOptions opts) {
  if (A.rows() != b.size()) throw ConfigError("instance matrix and right-hand side disagree in size");
  if (!(opts.mu_f > 0.0) || !(opts.lambda >= 0.0)) throw ConfigError("convex model requires mu_f > 0, lambda >= 0");
  const Index n = A.cols();
  Eigen::JacobiSVD<DenseMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > kPseudoinverseCutoff * s(0)) ++r;
  const Vector x_ls = min_norm_ls(A, b);

  auto lower_fn = std::make_shared<LeastSquares>(A, b);
  CompositeObjective lower{lower_fn, ProxTerm::zero()};
  double h_star = lower_fn->value(x_ls);
  if (opts.h_star_iterations > 0 && lower_fn->lipschitz() > 0.0) {
    const auto base = solve_fista_baseline(lower, opts.h_star_iterations, 1.0 / lower_fn->lipschitz(), Vector::Zero(n));
    h_star = std::min(h_star, base.value);
  }
  ReferenceTruth ref;
  ref.h_star = h_star;
  ref.tolerance = 1e-8;
  ref.projector = affine_projector(svd.matrixV().leftCols(r), x_ls);
  ref.projector_exact = false;
  ref.provenance = "baseline";
  CompositeObjective upper{std::make_shared<ScaledSqNorm>(opts.mu_f, n),
                           opts.lambda > 0.0 ? ProxTerm::l1(opts.lambda) : ProxTerm::zero()};
  BilevelProblem p(upper, lower, ref);
  if (opts.f_star_iterations > 0) {
    SolverConfig cfg;
    cfg.schedule = RegularizationSchedule::fixed(opts.f_star_eta);
    cfg.iterations = opts.f_star_iterations;
    cfg.trace_every = opts.f_star_iterations;
    cfg.x0 = x_ls;
    const BilevelProblem bare(upper, lower);
    const RunReport rep = solve_r_vfista(bare, cfg);
    if (rep.diverged) throw DivergenceError("reference-grade R-VFISTA run diverged");
    ref.f_star = upper.value(rep.x);
    ref.x_star = rep.x;
    ref.provenance = "reference-grade r_vfista eta=" + format_real(opts.f_star_eta) +
                     " K=" + std::to_string(opts.f_star_iterations);
    p.set_reference(ref);
  }
  return p;
}

Vector unit_start(Index n) { return Vector::Ones(n) / std::sqrt(static_cast<double>(n)); }

double ball_ls_reference_value(const DenseMatrix& A, const Vector& b, double radius, std::int64_t iterations,
                               double eta) {
  auto ls = std::make_shared<LeastSquares>(A, b);
  const CompositeObjective lower{ls, ProxTerm::ball(radius)};
  const Index n = A.cols();
  const Vector x0 = radius * unit_start(n);
  double best = lower.value(x0);
  if (ls->lipschitz() > 0.0) {
    best = std::min(best, solve_fista_baseline(lower, iterations, 1.0 / ls->lipschitz(), x0).value);
    const BilevelProblem reg(CompositeObjective{std::make_shared<ScaledSqNorm>(1.0, n), ProxTerm::zero()}, lower);
    SolverConfig cfg;
    cfg.schedule = RegularizationSchedule::fixed(eta);
    cfg.iterations = iterations;
    cfg.trace_every = iterations;
    cfg.x0 = x0;
    const RunReport rep = solve_r_vfista(reg, cfg);
    if (!rep.diverged) best = std::min(best, lower.value(rep.x));
  }
  return best;
}

BilevelProblem make_nonconvex_regtools(const DenseMatrix& A, const Vector& b, NonconvexOptions opts) {
  if (A.rows() != b.size()) throw ConfigError("instance matrix and right-hand side disagree in size");
  if (!(opts.radius > 0.0)) throw ConfigError("nonconvex model requires a positive ball radius");
  const Index n = A.cols();
  // MoreauLogSum validates √δ ≤ ε.
  auto upper_fn = std::make_shared<MoreauLogSum>(opts.delta, opts.epsilon, n);
  CompositeObjective lower{std::make_shared<LeastSquares>(A, b), ProxTerm::ball(opts.radius)};
  ReferenceTruth ref;
  ref.h_star = ball_ls_reference_value(A, b, opts.radius, opts.h_star_iterations, opts.h_star_eta);
  ref.tolerance = 1e-8;
  ref.projector = approximate_projector(lower, opts.projector_eta, opts.projector_iterations);
  ref.projector_exact = false;
  ref.provenance = "baseline; approximate projector";
  return BilevelProblem(CompositeObjective{upper_fn, ProxTerm::zero()}, lower, std::move(ref));
}

BilevelProblem gen_nonconvex_regtools(Index n, std::string_view which, NonconvexOptions opts) {
  const LinearSystem sys = gen_regtools(which, n);
  return make_nonconvex_regtools(sys.A, sys.b, opts);
}

std::optional<std::string> InstanceFile::get(const std::string& key) const {
  for (const auto& [k, v] : header)
    if (k == key) return v;
  return std::nullopt;
}

void write_instance(std::ostream& out, const InstanceFile& inst) {
  for (const auto& [k, v] : inst.header) out << k << " = " << v << '\n';
  out << '\n';
  write_matrix(out, inst.A);
  out << '\n';
  write_vector(out, inst.b);
}

InstanceFile read_instance(std::istream& in) {
  InstanceFile inst;
  int line = 0;
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) break;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value', got '" + text + "'", line);
    const std::string key = trim(std::string_view(text).substr(0, eq));
    if (key.empty()) throw ParseError("empty parameter name", line);
    inst.header.emplace_back(key, trim(std::string_view(text).substr(eq + 1)));
  }
  inst.A = read_matrix(in, line);
  const int vec_line = line + 1;
  inst.b = read_vector(in, line);
  if (inst.b.size() != inst.A.rows()) {
    throw ParseError("right-hand side has length " + std::to_string(inst.b.size()) + " but the matrix has " +
                         std::to_string(inst.A.rows()) + " rows",
                     vec_line);
  }
  if (const auto n = inst.get("n")) {
    if (*n != std::to_string(inst.A.cols())) {
      throw ParseError("header n = " + *n + " disagrees with the matrix width " + std::to_string(inst.A.cols()), 0);
    }
  }
  while (std::getline(in, text)) {
    ++line;
    if (!trim(text).empty()) throw ParseError("unexpected trailing content", line);
  }
  return inst;
}

void save_instance(const std::string& path, const InstanceFile& inst) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file '" + path + "'");
  write_instance(out, inst);
  if (!out) throw Error("failed writing instance file '" + path + "'");
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file '" + path + "'");
  return read_instance(in);
}

namespace {

ConvexRegtoolsOptions convex_options(const InstanceSpec& s) {
  ConvexRegtoolsOptions o;
  o.mu_f = s.number("mu_f", o.mu_f);
  o.lambda = s.number("lambda", o.lambda);
  o.f_star_iterations = s.integer("f_star_iterations", o.f_star_iterations);
  o.f_star_eta = s.number("f_star_eta", o.f_star_eta);
  o.h_star_iterations = s.integer("h_star_iterations", o.h_star_iterations);
  return o;
}

NonconvexOptions nonconvex_options(const InstanceSpec& s) {
  NonconvexOptions o;
  o.delta = s.number("delta", o.delta);
  o.epsilon = s.number("epsilon", o.epsilon);
  o.radius = s.number("radius", o.radius);
  o.h_star_iterations = s.integer("h_star_iterations", o.h_star_iterations);
  o.h_star_eta = s.number("h_star_eta", o.h_star_eta);
  o.projector_iterations = s.integer("projector_iterations", o.projector_iterations);
  o.projector_eta = s.number("projector_eta", o.projector_eta);
  return o;
}

Index require_n(const InstanceSpec& s) {
  if (s.n < 1) throw ConfigError("instance '" + s.name + "' needs n >= 1");
  return s.n;
}

}  // namespace

InstanceFile generate_instance_file(const InstanceSpec& spec) {
  InstanceFile f;
  f.header.emplace_back("name", spec.name);
  f.header.emplace_back("n", std::to_string(spec.n));
  if (spec.seed) f.header.emplace_back("seed", std::to_string(*spec.seed));
  for (const auto& [k, v] : spec.params) f.header.emplace_back(k, v);
  if (spec.name == "phillips" || spec.name == "baart" || spec.name == "foxgood") {
    LinearSystem sys = gen_regtools(spec.name, require_n(spec));
    f.A = std::move(sys.A);
    f.b = std::move(sys.b);
  } else if (spec.name == "nonconvex") {
    LinearSystem sys = gen_regtools(spec.text("which", "phillips"), require_n(spec));
    f.A = std::move(sys.A);
    f.b = std::move(sys.b);
  } else if (spec.name == "rank_deficient_ls") {
    const BilevelProblem p = build_problem(spec);
    const auto* ls = dynamic_cast<const LeastSquares*>(p.lower().smooth.get());
    f.A = ls->matrix();
    f.b = ls->rhs();
  } else if (spec.name == "l1_weak_sharp") {
    throw ConfigError("l1_weak_sharp has no matrix data to write (h = 0, lower level is ||x||_1)");
  } else {
    throw ConfigError("unknown instance '" + spec.name + "'");
  }
  return f;
}

BilevelProblem build_problem(const InstanceSpec& spec) {
  const std::string& name = spec.name;
  if (name == "rank_deficient_ls") {
    const Index n = require_n(spec);
    RankDeficientOptions o;
    o.mu_f = spec.number("mu_f", o.mu_f);
    o.lambda = spec.number("lambda", o.lambda);
    o.noise_std = spec.number("noise_std", o.noise_std);
    return gen_rank_deficient_ls(n, spec.integer("rank", n / 2), spec.seed.value_or(0), o);
  }
  if (name == "l1_weak_sharp") return gen_l1_weak_sharp(weak_sharp_center(require_n(spec), spec.seed.value_or(0)));
  if (name == "phillips" || name == "baart" || name == "foxgood") {
    const LinearSystem sys = gen_regtools(name, require_n(spec));
    return make_convex_regtools(sys.A, sys.b, convex_options(spec));
  }
  if (name == "nonconvex") return gen_nonconvex_regtools(require_n(spec), spec.text("which", "phillips"), nonconvex_options(spec));
  if (name == "file") {
    const auto path = spec.params.find("file");
    if (path == spec.params.end()) throw ConfigError("instance 'file' needs instance.file = <path>");
    const InstanceFile f = load_instance(path->second);
    const std::string model = spec.text("model", "convex");
    if (model == "convex") return make_convex_regtools(f.A, f.b, convex_options(spec));
    if (model == "nonconvex") return make_nonconvex_regtools(f.A, f.b, nonconvex_options(spec));
    throw ConfigError("instance.model must be convex or nonconvex, got '" + model + "'");
  }
  throw ConfigError("unknown instance '" + name +
                    "' (expected rank_deficient_ls, l1_weak_sharp, phillips, baart, foxgood, nonconvex or file)");
}

}  // namespace sbo
