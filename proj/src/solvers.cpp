#include "sbo/solvers.hpp"

#include "sbo/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>

namespace sbo {

namespace {

using Clock = std::chrono::steady_clock;

// θ and Γ are rescaled by 2^-kRescaleBits whenever θ passes this bound.
constexpr int kRescaleBits = 600;
const double kRescaleAt = std::ldexp(1.0, kRescaleBits);

std::string fmt(double v) { return format_real(v); }

std::int64_t elapsed_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

void require_strongly_convex_upper(const BilevelProblem& p, const char* solver) {
  if (p.upper().smooth->nonconvex()) {
    throw ConfigError(std::string(solver) + " requires a strongly convex upper objective; " +
                      p.upper().smooth->describe() + " is nonconvex");
  }
  if (!(p.strong_convexity_upper() > 0.0)) {
    throw ConfigError(std::string(solver) + " requires mu_f > 0 for the upper smooth part");
  }
}

Vector initial_point(const std::optional<Vector>& x0, Index n) {
  if (!x0) return Vector::Ones(n);
  if (x0->size() != n) {
    throw ConfigError("x0 has length " + std::to_string(x0->size()) + ", problem dimension is " + std::to_string(n));
  }
  require_finite(*x0, "x0");
  return *x0;
}

class Tracer {
 public:
  Tracer(std::vector<std::int64_t> points, bool record_time)
      : points_(std::move(points)), record_time_(record_time), start_(Clock::now()) {}

  bool due(std::int64_t k) const { return next_ < points_.size() && points_[next_] == k; }

  void add(IterateTrace& trace, TraceRecord r) {
    if (record_time_) r.elapsed_ns = elapsed_since(start_);
    trace.records.push_back(std::move(r));
    ++next_;
  }

  Clock::time_point start() const { return start_; }

 private:
  std::vector<std::int64_t> points_;
  std::size_t next_ = 0;
  bool record_time_;
  Clock::time_point start_;
};

void mark_diverged(RunReport& rep, std::int64_t k) {
  rep.diverged = true;
  rep.diagnostic = "non-finite iterate at k = " + std::to_string(k) + "; last finite record retained";
}

// One accelerated R-VFISTA step: x ← q_η(y), y ← x + β(x − x_prev).
// Returns false when the new iterate is not finite (x and y left untouched).
bool vfista_step(const BilevelProblem& p, double eta, double gamma, double beta, Vector& x, Vector& y) {
  Vector next = q_eta_step(p, eta, gamma, y);
  if (!all_finite(next)) return false;
  y = next + beta * (next - x);
  x = std::move(next);
  return true;
}

}  // namespace

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Diminishing:
      return "diminishing";
    case ScheduleKind::ConstantIsta:
      return "constant_ista";
    case ScheduleKind::ConstantVfista:
      return "constant_vfista";
    case ScheduleKind::Fixed:
      return "fixed";
  }
  return "?";
}

void validate_schedule(const RegularizationSchedule& s, double gamma, double L_f, double L_h, double mu_f) {
  if (!(mu_f > 0.0)) throw ConfigError("regularization schedule requires mu_f > 0");
  switch (s.kind) {
    case ScheduleKind::Diminishing:
      if (!(gamma > 0.0)) throw ConfigError("diminishing schedule requires gamma > 0");
      // η_{0,l} = 2L_f/μ_f > 1 keeps θ_k finite; it holds whenever L_f ≥ μ_f.
      if (!(2.0 * L_f > mu_f)) {
        throw ConfigError("diminishing schedule requires eta_{0,l} = 2 L_f/mu_f > 1 (got L_f = " + fmt(L_f) +
                          ", mu_f = " + fmt(mu_f) + ")");
      }
      return;
    case ScheduleKind::ConstantIsta: {
      if (!(gamma > 0.0)) throw ConfigError("constant regularization requires gamma > 0");
      if (!(s.p > 0.0)) throw ConfigError("constant regularization requires p > 0 (got " + fmt(s.p) + ")");
      if (s.horizon <= 1) throw ConfigError("constant regularization requires K > 1");
      const double K = static_cast<double>(s.horizon);
      const double lhs = K / std::log(K);
      const double rhs = 2.0 * (s.p + 1.0) * L_f / mu_f;
      if (lhs < rhs) {
        throw ConfigError("constant regularization condition K/ln(K) >= 2(p+1)L_f/mu_f violated: " + fmt(lhs) +
                          " < " + fmt(rhs));
      }
      return;
    }
    case ScheduleKind::ConstantVfista: {
      if (!(s.p > 2.0)) throw ConfigError("accelerated constant regularization requires p > 2 (got " + fmt(s.p) + ")");
      if (!(s.eta_bar > 0.0)) throw ConfigError("accelerated constant regularization requires eta_bar > 0");
      if (s.horizon <= 1) throw ConfigError("accelerated constant regularization requires K > 1");
      const double K = static_cast<double>(s.horizon);
      const double r = K / std::log(K);
      const double lhs = r * r;
      const double rhs = (L_h + s.eta_bar * L_f) * (s.p + 1.0) * (s.p + 1.0) / (mu_f * s.eta_bar);
      if (lhs < rhs) {
        throw ConfigError("accelerated constant regularization condition (K/ln K)^2 >= (L_h + eta_bar L_f)(p+1)^2/"
                          "(mu_f eta_bar) violated: " +
                          fmt(lhs) + " < " + fmt(rhs));
      }
      return;
    }
    case ScheduleKind::Fixed:
      if (!(s.eta > 0.0) || !std::isfinite(s.eta)) throw ConfigError("fixed regularization requires eta > 0");
      return;
  }
}

double schedule_eta(const RegularizationSchedule& s, std::int64_t k, double gamma, double L_f, double L_h,
                    double mu_f) {
  validate_schedule(s, gamma, L_f, L_h, mu_f);
  switch (s.kind) {
    case ScheduleKind::Diminishing: {
      const double eta0u = 1.0 / (gamma * mu_f);
      const double eta0l = 2.0 * L_f / mu_f;
      return eta0u / (eta0l + static_cast<double>(k));
    }
    case ScheduleKind::ConstantIsta: {
      const double K = static_cast<double>(s.horizon);
      return (s.p + 1.0) * std::log(K) / (gamma * mu_f * K);
    }
    case ScheduleKind::ConstantVfista: {
      const double K = static_cast<double>(s.horizon);
      const double r = (s.p + 1.0) * std::log(K) / K;
      return ((L_h + s.eta_bar * L_f) / mu_f) * r * r;
    }
    case ScheduleKind::Fixed:
      return s.eta;
  }
  return 0.0;
}

AveragingState::AveragingState(Vector x0, double eta0, double gamma, double mu_f)
    : gamma_mu_(gamma * mu_f), theta_(1.0 / (1.0 - eta0 * gamma * mu_f)), average_(std::move(x0)) {
  if (!(eta0 * gamma_mu_ < 1.0)) throw ConfigError("averaging requires eta_0 gamma mu_f < 1");
}

void AveragingState::advance(double eta_k, const Vector& x_next, double eta_next) {
  const double w = eta_k * theta_;
  const double Gamma_next = Gamma_ + w;
  average_ = (Gamma_ * average_ + w * x_next) / Gamma_next;
  Gamma_ = Gamma_next;
  const double denom = 1.0 - eta_next * gamma_mu_;
  if (!(denom > 0.0)) throw ConfigError("averaging requires eta_k gamma mu_f < 1 at every k");
  theta_ /= denom;
  if (theta_ > kRescaleAt) {
    theta_ = std::ldexp(theta_, -kRescaleBits);
    Gamma_ = std::ldexp(Gamma_, -kRescaleBits);
    scale_ += kRescaleBits;
  }
}

double AveragingState::theta() const { return std::ldexp(theta_, scale_); }

double AveragingState::Gamma() const { return std::ldexp(Gamma_, scale_); }

std::vector<std::int64_t> trace_schedule(std::int64_t K, std::int64_t every, int points) {
  std::vector<std::int64_t> ks{0};
  if (every > 0) {
    for (std::int64_t k = every; k < K; k += every) ks.push_back(k);
  } else if (points > 1 && K > 1) {
    const double top = std::log(static_cast<double>(K));
    for (int i = 0; i < points; ++i) {
      const double k = std::round(std::exp(top * i / (points - 1)));
      ks.push_back(static_cast<std::int64_t>(k));
    }
  }
  ks.push_back(K);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  while (!ks.empty() && ks.back() > K) ks.pop_back();
  return ks;
}

double auto_gamma_ir_ista(const BilevelProblem& p, const RegularizationSchedule& s) {
  const double L_h = p.lipschitz_lower();
  const double L_f = p.lipschitz_upper();
  if (s.kind == ScheduleKind::Fixed) {
    if (L_h > 0.0) return std::min(0.5 / L_h, 1.0 / (L_h + s.eta * L_f));
    return 0.5 / (s.eta * L_f);
  }
  // With the diminishing or constant-ISTA rule η_0γL_f ≤ ½, so γ ≤ 0.5/L_h
  // already implies γ ≤ 1/(L_h + η_0L_f).
  if (L_h > 0.0) return 0.5 / L_h;
  return 1.0 / L_f;
}

RunReport solve_ir_ista(const BilevelProblem& p, const SolverConfig& cfg) {
  require_strongly_convex_upper(p, "ir_ista");
  const auto& s = cfg.schedule;
  if (s.kind == ScheduleKind::ConstantVfista) {
    throw ConfigError("ir_ista accepts the diminishing, constant-ISTA or fixed schedule");
  }
  if (cfg.iterations < 1) throw ConfigError("ir_ista requires K >= 1");
  const double L_f = p.lipschitz_upper();
  const double L_h = p.lipschitz_lower();
  const double mu_f = p.strong_convexity_upper();
  const double gamma = cfg.gamma ? *cfg.gamma : auto_gamma_ir_ista(p, s);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("ir_ista requires gamma > 0");
  const auto eta_at = [&](std::int64_t k) { return schedule_eta(s, k, gamma, L_f, L_h, mu_f); };
  const double eta0 = eta_at(0);
  const double bound = 1.0 / (L_h + eta0 * L_f);
  if (gamma > bound * (1.0 + 1e-12)) {
    throw ConfigError("step size condition gamma <= 1/(L_h + eta_0 L_f) violated: " + fmt(gamma) + " > " +
                      fmt(bound));
  }
  if (s.kind == ScheduleKind::Diminishing && L_h > 0.0 && gamma > 0.5 / L_h * (1.0 + 1e-12)) {
    throw ConfigError("diminishing regularization requires gamma <= 0.5/L_h: " + fmt(gamma) + " > " +
                      fmt(0.5 / L_h));
  }

  RunReport rep;
  rep.solver = s.kind == ScheduleKind::Diminishing ? "ir_ista" : "r_ista_const";
  rep.gamma = gamma;
  rep.eta0 = eta0;
  rep.iterations = cfg.iterations;
  rep.resolved = {{"gamma", fmt(gamma)},
                  {"schedule", to_string(s.kind)},
                  {"eta_0", fmt(eta0)},
                  {"L_f", fmt(L_f)},
                  {"L_h", fmt(L_h)},
                  {"mu_f", fmt(mu_f)}};
  if (s.kind == ScheduleKind::Diminishing) {
    rep.resolved.emplace_back("eta_0u", fmt(1.0 / (gamma * mu_f)));
    rep.resolved.emplace_back("eta_0l", fmt(2.0 * L_f / mu_f));
  } else if (s.kind == ScheduleKind::ConstantIsta) {
    rep.resolved.emplace_back("p", fmt(s.p));
  }

  Vector x = initial_point(cfg.x0, p.dimension());
  AveragingState avg(x, eta0, gamma, mu_f);
  Tracer tracer(trace_schedule(cfg.iterations, cfg.trace_every, cfg.trace_points), cfg.record_time);
  double eta = eta0;
  // Record k holds x̄_k together with the (η_k, θ_k) about to be used.
  if (tracer.due(0)) tracer.add(rep.trace, evaluate_record(p, avg.average(), 0, eta, avg.theta()));
  double theta_prev = avg.theta();
  for (std::int64_t k = 0; k < cfg.iterations; ++k) {
    Vector next = q_eta_step(p, eta, gamma, x);
    if (!all_finite(next)) {
      mark_diverged(rep, k + 1);
      break;
    }
    x = std::move(next);
    const double eta_next = s.kind == ScheduleKind::Diminishing ? eta_at(k + 1) : eta;
    theta_prev = avg.theta();
    avg.advance(eta, x, eta_next);
    if (cfg.observer) cfg.observer(IterationView{k, &x, &avg.average(), eta, theta_prev});
    eta = eta_next;
    if (tracer.due(k + 1)) tracer.add(rep.trace, evaluate_record(p, avg.average(), k + 1, eta, avg.theta()));
  }
  rep.x = avg.average();
  rep.Gamma_K = avg.Gamma();
  rep.theta_last = theta_prev;
  rep.elapsed_ns = elapsed_since(tracer.start());
  return rep;
}

RunReport solve_r_vfista(const BilevelProblem& p, const SolverConfig& cfg) {
  require_strongly_convex_upper(p, "r_vfista");
  const auto& s = cfg.schedule;
  if (s.kind != ScheduleKind::ConstantVfista && s.kind != ScheduleKind::Fixed) {
    throw ConfigError("r_vfista accepts the accelerated constant schedule or a fixed eta");
  }
  if (cfg.iterations < 1) throw ConfigError("r_vfista requires K >= 1");
  const double L_f = p.lipschitz_upper();
  const double L_h = p.lipschitz_lower();
  const double mu_f = p.strong_convexity_upper();
  const double eta = schedule_eta(s, 0, 1.0, L_f, L_h, mu_f);
  const double gamma = 1.0 / (L_h + eta * L_f);
  if (cfg.gamma && std::abs(*cfg.gamma - gamma) > 1e-12 * gamma) {
    throw ConfigError("r_vfista requires gamma = 1/(L_h + eta L_f) = " + fmt(gamma) + " exactly; got " +
                      fmt(*cfg.gamma));
  }
  const double kappa = (L_h + eta * L_f) / (eta * mu_f);
  const double rk = std::sqrt(kappa);
  const double beta = (rk - 1.0) / (rk + 1.0);

  RunReport rep;
  rep.solver = "r_vfista";
  rep.gamma = gamma;
  rep.eta0 = eta;
  rep.kappa = kappa;
  rep.momentum = beta;
  rep.iterations = cfg.iterations;
  rep.resolved = {{"gamma", fmt(gamma)}, {"schedule", to_string(s.kind)}, {"eta", fmt(eta)},
                  {"kappa", fmt(kappa)}, {"momentum", fmt(beta)},           {"L_f", fmt(L_f)},
                  {"L_h", fmt(L_h)},     {"mu_f", fmt(mu_f)}};
  if (s.kind == ScheduleKind::ConstantVfista) {
    rep.resolved.emplace_back("p", fmt(s.p));
    rep.resolved.emplace_back("eta_bar", fmt(s.eta_bar));
  }

  Vector x = initial_point(cfg.x0, p.dimension());
  Vector y = x;
  Tracer tracer(trace_schedule(cfg.iterations, cfg.trace_every, cfg.trace_points), cfg.record_time);
  if (tracer.due(0)) tracer.add(rep.trace, evaluate_record(p, x, 0, eta));
  for (std::int64_t k = 0; k < cfg.iterations; ++k) {
    if (!vfista_step(p, eta, gamma, beta, x, y)) {
      mark_diverged(rep, k + 1);
      break;
    }
    if (cfg.observer) cfg.observer(IterationView{k, &x, nullptr, eta, 0.0, &y});
    if (tracer.due(k + 1)) tracer.add(rep.trace, evaluate_record(p, x, k + 1, eta));
  }
  rep.x = x;
  rep.elapsed_ns = elapsed_since(tracer.start());
  return rep;
}

std::int64_t ipr_inner_budget(std::int64_t k, int a) {
  double J = std::pow(static_cast<double>(k + 1), a);
  if (J > 9e18) throw ConfigError("inner budget (k+1)^a overflows");
  return static_cast<std::int64_t>(std::llround(J));
}

double ipr_inner_eta(std::int64_t J, double L_h, double eta_bar) {
  const double Jd = static_cast<double>(J);
  const double lnJ = std::max(std::log(Jd), std::log(2.0));
  const double r = lnJ / Jd;
  return 16.0 * (L_h + eta_bar) * r * r;
}

RunReport solve_ipr_vfista(const BilevelProblem& p, const NcConfig& cfg) {
  if (!p.upper().nonsmooth.is_zero()) {
    throw ConfigError("ipr_vfista requires a smooth upper objective (no omega_f term)");
  }
  if (cfg.a < 2) throw ConfigError("ipr_vfista requires a >= 2 (got " + std::to_string(cfg.a) + ")");
  if (!(cfg.eta_bar > 0.0)) throw ConfigError("ipr_vfista requires eta_bar > 0");
  if (cfg.iterations < 1) throw ConfigError("ipr_vfista requires K >= 1");
  const Index n = p.dimension();
  const double L_f = p.lipschitz_upper();
  const double L_h = p.lipschitz_lower();
  const std::int64_t K = cfg.iterations;
  const double gamma_hat = 1.0 / std::sqrt(static_cast<double>(K));
  if (cfg.check_outer_step && gamma_hat > 1.0 / (2.0 * L_f)) {
    throw ConfigError("outer step condition gamma_hat = 1/sqrt(K) <= 1/(2 L_f) violated: " + fmt(gamma_hat) +
                      " > " + fmt(1.0 / (2.0 * L_f)) + " (needs K >= " + fmt(4.0 * L_f * L_f) + ")");
  }
  const bool default_box = cfg.box_lower.size() == 0 && cfg.box_upper.size() == 0;
  if (!default_box && (cfg.box_lower.size() != n || cfg.box_upper.size() != n)) {
    throw ConfigError("ipr_vfista box bounds must have length " + std::to_string(n));
  }
  const ProxTerm box = default_box ? ProxTerm::box(Vector::Constant(n, -10.0), Vector::Constant(n, 10.0))
                                   : ProxTerm::box(cfg.box_lower, cfg.box_upper);
  std::int64_t total = 0;
  for (std::int64_t k = 0; k < K; ++k) {
    total += ipr_inner_budget(k, cfg.a);
    if (total > cfg.inner_budget_cap) {
      throw ConfigError("inner budget sum_k (k+1)^a exceeds the cap " + std::to_string(cfg.inner_budget_cap));
    }
  }

  RunReport rep;
  rep.solver = "ipr_vfista";
  rep.gamma = gamma_hat;
  rep.eta0 = ipr_inner_eta(ipr_inner_budget(0, cfg.a), L_h, cfg.eta_bar);
  rep.iterations = K;
  rep.inner_iterations = total;
  rep.resolved = {{"gamma_hat", fmt(gamma_hat)}, {"a", std::to_string(cfg.a)}, {"eta_bar", fmt(cfg.eta_bar)},
                  {"L_f", fmt(L_f)},             {"L_h", fmt(L_h)},             {"inner_total", std::to_string(total)},
                  {"outer_step_checked", cfg.check_outer_step ? "true" : "false"}};

  const bool has_projector = p.reference() && p.reference()->projector;
  const std::int64_t window_lo = K / 2;

  Vector x_hat = initial_point(cfg.x0, n);
  Vector x = box.prox(1.0, x_hat);
  Vector y = x;
  Tracer tracer(trace_schedule(K, cfg.trace_every, 0), cfg.record_time);
  double eta_k = rep.eta0;
  for (std::int64_t k = 0; k < K; ++k) {
    const std::int64_t J = ipr_inner_budget(k, cfg.a);
    eta_k = ipr_inner_eta(J, L_h, cfg.eta_bar);
    const bool traced = tracer.due(k);
    const bool in_window = has_projector && k >= window_lo;
    if (traced || in_window) {
      TraceRecord r = evaluate_record(p, x_hat, k, eta_k, std::nullopt, has_projector ? std::optional(gamma_hat)
                                                                                       : std::nullopt,
                                      cfg.check_outer_step);
      if (in_window && r.residual_sq && (!rep.best_residual || std::sqrt(*r.residual_sq) < *rep.best_residual)) {
        rep.best_residual = std::sqrt(*r.residual_sq);
        rep.best_index = k;
        rep.x_best = x_hat;
      }
      if (traced) tracer.add(rep.trace, std::move(r));
    }

    const Vector z = x_hat - gamma_hat * p.upper().smooth->gradient(x_hat);
    if (!all_finite(z)) {
      mark_diverged(rep, k);
      break;
    }
    // Inner problem: R-VFISTA on (h̄, ½‖· − z_k‖²), whose upper part has L = μ = 1.
    const BilevelProblem inner(CompositeObjective{std::make_shared<ScaledSqNorm>(1.0, z), ProxTerm::zero()},
                               p.lower());
    const double gamma_k = 1.0 / (L_h + eta_k);
    const double kappa_k = (L_h + eta_k) / eta_k;
    const double beta_k = (std::sqrt(kappa_k) - 1.0) / (std::sqrt(kappa_k) + 1.0);
    bool finite = true;
    for (std::int64_t j = 0; j < J && finite; ++j) finite = vfista_step(inner, eta_k, gamma_k, beta_k, x, y);
    if (!finite) {
      mark_diverged(rep, k + 1);
      break;
    }
    x_hat = x;
    x = box.prox(1.0, x);
    y = x;
  }
  if (!rep.diverged && tracer.due(K)) {
    tracer.add(rep.trace, evaluate_record(p, x_hat, K, eta_k, std::nullopt,
                                          has_projector ? std::optional(gamma_hat) : std::nullopt,
                                          cfg.check_outer_step));
  }
  rep.x = x_hat;
  rep.elapsed_ns = elapsed_since(tracer.start());
  return rep;
}

BaselineResult solve_fista_baseline(const CompositeObjective& obj, std::int64_t K, double gamma, const Vector& x0) {
  if (!(gamma > 0.0)) throw ConfigError("fista_baseline requires gamma > 0");
  const double L = obj.smooth->lipschitz();
  if (L > 0.0 && gamma > (1.0 / L) * (1.0 + 1e-12)) {
    throw ConfigError("fista_baseline requires gamma <= 1/L: " + fmt(gamma) + " > " + fmt(1.0 / L));
  }
  if (x0.size() != obj.dimension()) throw ContractViolation("fista_baseline: x0 has the wrong length");
  Vector x = x0;
  Vector y = x0;
  double t = 1.0;
  BaselineResult best{x0, obj.value(x0)};
  for (std::int64_t k = 0; k < K; ++k) {
    Vector next = obj.nonsmooth.prox(gamma, y - gamma * obj.smooth->gradient(y));
    if (!all_finite(next)) throw DivergenceError("fista_baseline: non-finite iterate at k = " + std::to_string(k + 1));
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - x);
    x = std::move(next);
    t = t_next;
    const double v = obj.value(x);
    if (v < best.value) {
      best.value = v;
      best.x = x;
    }
  }
  return best;
}

double weak_sharp_eta(const BilevelProblem& p) {
  const auto& ref = p.reference();
  if (!ref || !ref->weak_sharp || !ref->subgradient) {
    throw ConfigError("eta = weak_sharp needs weak-sharp reference data (alpha, m = 1) and a subgradient at x*");
  }
  if (ref->weak_sharp->order != 1.0) {
    throw ConfigError("eta = weak_sharp needs weak sharp minima of order m = 1 (instance has m = " +
                      fmt(ref->weak_sharp->order) + ")");
  }
  if (!(ref->subgradient->norm > 0.0)) throw ConfigError("eta = weak_sharp needs a nonzero subgradient at x*");
  return ref->weak_sharp->alpha / (2.0 * ref->subgradient->norm);
}

Projector approximate_projector(const CompositeObjective& lower, double eta, std::int64_t iterations) {
  return [lower, eta, iterations](const Vector& x) {
    const BilevelProblem proj(CompositeObjective{std::make_shared<ScaledSqNorm>(1.0, x), ProxTerm::zero()}, lower);
    SolverConfig cfg;
    cfg.schedule = RegularizationSchedule::fixed(eta);
    cfg.iterations = iterations;
    cfg.trace_every = iterations;
    cfg.x0 = x;
    RunReport r = solve_r_vfista(proj, cfg);
    if (r.diverged) throw DivergenceError("approximate projector diverged");
    return r.x;
  };
}

}  // namespace sbo
