#include "sbo/metrics.hpp"

#include "sbo/errors.hpp"

#include <cmath>

namespace sbo {

std::optional<double> infeasibility(const BilevelProblem& p, const Vector& x) {
  const auto& ref = p.reference();
  if (!ref) return std::nullopt;
  return p.lower().value(x) - ref->h_star;
}

std::optional<double> suboptimality(const BilevelProblem& p, const Vector& x) {
  const auto& ref = p.reference();
  if (!ref || !ref->f_star) return std::nullopt;
  return p.upper().value(x) - *ref->f_star;
}

std::optional<double> dist_to_lower_set(const BilevelProblem& p, const Vector& x) {
  const auto& ref = p.reference();
  if (!ref || !ref->projector) return std::nullopt;
  return (x - ref->projector(x)).norm();
}

std::optional<double> dist_to_optimum_sq(const BilevelProblem& p, const Vector& x) {
  const auto& ref = p.reference();
  if (!ref || !ref->x_star) return std::nullopt;
  return (x - *ref->x_star).squaredNorm();
}

std::optional<double> residual_norm(const BilevelProblem& p, const Vector& x, double gamma_hat, bool check_step) {
  if (!(gamma_hat > 0.0)) throw ContractViolation("residual_norm: gamma_hat must be > 0");
  const double L_f = p.lipschitz_upper();
  if (check_step && L_f > 0.0 && !(gamma_hat < 1.0 / L_f)) {
    throw ContractViolation("residual_norm: requires gamma_hat < 1/L_f (gamma_hat = " + format_real(gamma_hat) +
                            ", 1/L_f = " + format_real(1.0 / L_f) + ")");
  }
  const auto& ref = p.reference();
  if (!ref || !ref->projector) return std::nullopt;
  const Vector z = x - gamma_hat * p.upper().smooth->gradient(x);
  return (x - ref->projector(z)).norm() / gamma_hat;
}

TraceRecord evaluate_record(const BilevelProblem& p, const Vector& x, std::int64_t k, double eta,
                            std::optional<double> theta, std::optional<double> gamma_hat, bool check_step) {
  TraceRecord r;
  r.k = k;
  r.eta = eta;
  r.theta = theta;
  r.f_bar = p.upper().value(x);
  r.h_bar = p.lower().value(x);
  if (const auto& ref = p.reference()) {
    r.infeas = r.h_bar - ref->h_star;
    if (ref->f_star) r.subopt = r.f_bar - *ref->f_star;
    r.dist_xstar_sq = dist_to_optimum_sq(p, x);
    r.dist_lower = dist_to_lower_set(p, x);
    if (gamma_hat) {
      if (auto g = residual_norm(p, x, *gamma_hat, check_step)) r.residual_sq = (*g) * (*g);
    }
  }
  return r;
}

RateFit fit_rate(std::span<const MetricSample> samples, RateWindow window, int min_samples) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& s : samples) {
    if (s.k < 1 || !(s.value > 0.0) || !std::isfinite(s.value)) continue;
    const double k = static_cast<double>(s.k);
    if (k < window.k_min || k > window.k_max) continue;
    lx.push_back(std::log(k));
    ly.push_back(std::log(s.value));
  }
  const int count = static_cast<int>(lx.size());
  if (count < min_samples || count < 2) {
    throw Error("fit_rate: " + std::to_string(count) + " positive samples in window [" + format_real(window.k_min) +
                ", " + format_real(window.k_max) + "], need " + std::to_string(std::max(min_samples, 2)));
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < count; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= count;
  my /= count;
  double vxx = 0.0, vxy = 0.0, vyy = 0.0;
  for (int i = 0; i < count; ++i) {
    const double dx = lx[i] - mx;
    const double dy = ly[i] - my;
    vxx += dx * dx;
    vxy += dx * dy;
    vyy += dy * dy;
  }
  if (!(vxx > 0.0)) throw Error("fit_rate: all samples share the same k");
  RateFit fit;
  fit.slope = vxy / vxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  fit.window = window;
  fit.samples = count;
  return fit;
}

RateWindow default_window(std::int64_t K) {
  return {static_cast<double>(K) / 10.0, static_cast<double>(K)};
}

}  // namespace sbo
