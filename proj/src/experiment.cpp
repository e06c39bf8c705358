#include "sbo/experiment.hpp"

#include "sbo/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace sbo {

namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + " must be a number, got '" + value + "'");
}

std::int64_t parse_integer(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v != std::floor(v) || std::abs(v) > 9e15) throw ConfigError(key + " must be an integer, got '" + value + "'");
  return static_cast<std::int64_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(key + " must be true or false, got '" + value + "'");
}

const std::map<std::string, std::set<std::string>>& instance_params() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"rank_deficient_ls", {"rank", "mu_f", "lambda", "noise_std"}},
      {"l1_weak_sharp", {}},
      {"phillips", {"mu_f", "lambda", "f_star_iterations", "f_star_eta", "h_star_iterations"}},
      {"baart", {"mu_f", "lambda", "f_star_iterations", "f_star_eta", "h_star_iterations"}},
      {"foxgood", {"mu_f", "lambda", "f_star_iterations", "f_star_eta", "h_star_iterations"}},
      {"nonconvex",
       {"which", "delta", "epsilon", "radius", "h_star_iterations", "h_star_eta", "projector_iterations",
        "projector_eta"}},
      {"file",
       {"file", "model", "mu_f", "lambda", "f_star_iterations", "f_star_eta", "h_star_iterations", "delta",
        "epsilon", "radius", "h_star_eta", "projector_iterations", "projector_eta"}},
  };
  return table;
}

std::string csv_field(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

bool ball_model(const ExperimentConfig& cfg) {
  return cfg.instance.name == "nonconvex" ||
         (cfg.instance.name == "file" && cfg.instance.text("model", "convex") == "nonconvex");
}

Vector start_point(const ExperimentConfig& cfg, Index n) {
  const std::string kind = cfg.x0.empty() ? (ball_model(cfg) ? "unit" : "ones") : cfg.x0;
  if (kind == "ones") return Vector::Ones(n);
  if (kind == "zeros") return Vector::Zero(n);
  return unit_start(n);
}

}  // namespace

std::optional<std::string> Config::get(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  return std::nullopt;
}

Config parse_config(std::istream& in, std::string base_dir) {
  Config cfg;
  cfg.base_dir = std::move(base_dir);
  std::string text;
  int line = 0;
  std::set<std::string> seen;
  while (std::getline(in, text)) {
    ++line;
    const auto hash = text.find('#');
    const std::string body = trim(std::string_view(text).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value', got '" + body + "'", line);
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line);
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", line);
    cfg.entries.emplace_back(std::move(key), std::move(value));
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  const fs::path dir = fs::path(path).parent_path();
  return parse_config(in, dir.empty() ? "." : dir.string());
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::IrIsta:
      return "ir_ista";
    case SolverKind::RIstaConst:
      return "r_ista_const";
    case SolverKind::RVfista:
      return "r_vfista";
    case SolverKind::IprVfista:
      return "ipr_vfista";
    case SolverKind::FistaBaseline:
      return "fista_baseline";
  }
  return "?";
}

ExperimentConfig parse_experiment(const Config& cfg) {
  ExperimentConfig e;
  for (const auto& [key, value] : cfg.entries) {
    if (key.rfind("instance.", 0) == 0) {
      const std::string sub = key.substr(9);
      if (sub == "name") {
        e.instance.name = value;
      } else if (sub == "n") {
        e.instance.n = parse_integer(key, value);
      } else if (sub == "seed") {
        e.instance.seed = static_cast<std::uint64_t>(parse_integer(key, value));
      } else if (sub == "file") {
        const fs::path p(value);
        e.instance.params[sub] = p.is_absolute() ? value : (fs::path(cfg.base_dir) / p).string();
      } else {
        e.instance.params[sub] = value;
      }
    } else if (key == "solver.name") {
      if (value == "ir_ista") {
        e.solver = SolverKind::IrIsta;
      } else if (value == "r_ista_const") {
        e.solver = SolverKind::RIstaConst;
      } else if (value == "r_vfista") {
        e.solver = SolverKind::RVfista;
      } else if (value == "ipr_vfista") {
        e.solver = SolverKind::IprVfista;
      } else if (value == "fista_baseline") {
        e.solver = SolverKind::FistaBaseline;
      } else {
        throw ConfigError("solver.name must be one of ir_ista, r_ista_const, r_vfista, ipr_vfista, fista_baseline; "
                          "got '" + value + "'");
      }
    } else if (key == "solver.K") {
      e.K = parse_integer(key, value);
    } else if (key == "solver.p") {
      e.p = parse_number(key, value);
    } else if (key == "solver.eta_bar") {
      e.eta_bar = parse_number(key, value);
    } else if (key == "solver.a") {
      e.a = static_cast<int>(parse_integer(key, value));
    } else if (key == "solver.gamma") {
      if (value != "auto") e.gamma = parse_number(key, value);
    } else if (key == "solver.eta") {
      if (value != "auto" && value != "weak_sharp") parse_number(key, value);
      e.eta = value;
    } else if (key == "solver.box_lower") {
      e.box_lower = parse_number(key, value);
    } else if (key == "solver.box_upper") {
      e.box_upper = parse_number(key, value);
    } else if (key == "solver.inner_budget_cap") {
      e.inner_budget_cap = parse_integer(key, value);
    } else if (key == "solver.check_outer_step") {
      e.check_outer_step = parse_bool(key, value);
    } else if (key == "solver.x0") {
      if (value != "ones" && value != "unit" && value != "zeros") {
        throw ConfigError("solver.x0 must be ones, unit or zeros; got '" + value + "'");
      }
      e.x0 = value;
    } else if (key == "solver.target") {
      if (value != "lower" && value != "upper") throw ConfigError("solver.target must be lower or upper");
      e.target = value;
    } else if (key == "output.dir") {
      const fs::path p(value);
      e.output_dir = p.is_absolute() ? value : (fs::path(cfg.base_dir) / p).string();
    } else if (key == "output.trace_every") {
      e.trace_every = parse_integer(key, value);
    } else if (key == "output.trace_points") {
      e.trace_points = static_cast<int>(parse_integer(key, value));
    } else if (key == "output.record_time") {
      e.record_time = parse_bool(key, value);
    } else if (key == "output.plots") {
      for (auto& m : split(value, ','))
        if (!m.empty()) e.plots.push_back(m);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  if (e.instance.name.empty()) throw ConfigError("instance.name is required");
  const auto& table = instance_params();
  const auto allowed = table.find(e.instance.name);
  if (allowed == table.end()) {
    throw ConfigError("instance.name '" + e.instance.name +
                      "' is unknown (expected rank_deficient_ls, l1_weak_sharp, phillips, baart, foxgood, nonconvex "
                      "or file)");
  }
  for (const auto& [k, v] : e.instance.params) {
    if (!allowed->second.count(k)) throw ConfigError("instance." + k + " does not apply to " + e.instance.name);
  }
  if (e.instance.name != "file" && e.instance.n < 1) throw ConfigError("instance.n must be >= 1");
  if (e.K < 1) throw ConfigError("solver.K must be >= 1");
  if (e.trace_every < 0) throw ConfigError("output.trace_every must be >= 0");
  if (e.trace_points < 2) throw ConfigError("output.trace_points must be >= 2");
  if (!(e.box_lower < e.box_upper)) throw ConfigError("solver.box_lower must be < solver.box_upper");
  if (e.solver == SolverKind::IrIsta && e.eta != "auto") {
    throw ConfigError("ir_ista uses the diminishing rule; set solver.name = r_ista_const for a constant eta");
  }
  if (e.solver == SolverKind::IprVfista && e.eta != "auto") {
    throw ConfigError("ipr_vfista sets its inner eta_k from solver.eta_bar; solver.eta must be auto");
  }
  static const std::set<std::string> metrics = {"f_bar", "h_bar", "infeas", "subopt", "abs_subopt",
                                                "subopt_envelope", "dist_xstar_sq", "dist_lower",
                                                "residual_sq", "eta", "theta", "elapsed_ns"};
  for (const auto& m : e.plots)
    if (!metrics.count(m)) throw ConfigError("output.plots: unknown metric '" + m + "'");
  return e;
}

namespace {

RunReport dispatch(const ExperimentConfig& e, const BilevelProblem& p) {
  const Vector x0 = start_point(e, p.dimension());
  if (e.solver == SolverKind::IprVfista) {
    NcConfig nc;
    nc.a = e.a;
    nc.eta_bar = e.eta_bar;
    nc.iterations = e.K;
    nc.box_lower = Vector::Constant(p.dimension(), e.box_lower);
    nc.box_upper = Vector::Constant(p.dimension(), e.box_upper);
    nc.x0 = x0;
    nc.inner_budget_cap = e.inner_budget_cap;
    nc.check_outer_step = e.check_outer_step;
    nc.trace_every = e.trace_every > 0 ? e.trace_every : 1;
    nc.record_time = e.record_time;
    return solve_ipr_vfista(p, nc);
  }
  if (e.solver == SolverKind::FistaBaseline) {
    const CompositeObjective& obj = e.target == "lower" ? p.lower() : p.upper();
    const double L = obj.smooth->lipschitz();
    const double gamma = e.gamma ? *e.gamma : (L > 0.0 ? 1.0 / L : 1.0);
    const auto start = std::chrono::steady_clock::now();
    const BaselineResult res = solve_fista_baseline(obj, e.K, gamma, x0);
    RunReport rep;
    rep.solver = "fista_baseline";
    rep.x = res.x;
    rep.gamma = gamma;
    rep.iterations = e.K;
    rep.resolved = {{"gamma", format_real(gamma)}, {"target", e.target}, {"best_value", format_real(res.value)}};
    rep.trace.records.push_back(evaluate_record(p, x0, 0, 0.0));
    rep.trace.records.push_back(evaluate_record(p, res.x, e.K, 0.0));
    rep.elapsed_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }

  SolverConfig sc;
  sc.gamma = e.gamma;
  sc.iterations = e.K;
  sc.trace_every = e.trace_every;
  sc.trace_points = e.trace_points;
  sc.x0 = x0;
  sc.record_time = e.record_time;
  sc.seed = e.instance.seed.value_or(0);
  const auto fixed_eta = [&]() -> std::optional<double> {
    if (e.eta == "auto") return std::nullopt;
    if (e.eta == "weak_sharp") return weak_sharp_eta(p);
    return parse_number("solver.eta", e.eta);
  };
  switch (e.solver) {
    case SolverKind::IrIsta:
      sc.schedule = RegularizationSchedule::diminishing();
      return solve_ir_ista(p, sc);
    case SolverKind::RIstaConst:
      if (auto eta = fixed_eta()) {
        sc.schedule = RegularizationSchedule::fixed(*eta);
      } else {
        sc.schedule = RegularizationSchedule::constant_ista(e.p.value_or(1.0), e.K);
      }
      return solve_ir_ista(p, sc);
    case SolverKind::RVfista:
      if (auto eta = fixed_eta()) {
        sc.schedule = RegularizationSchedule::fixed(*eta);
      } else {
        sc.schedule = RegularizationSchedule::constant_vfista(e.p.value_or(3.0), e.eta_bar, e.K);
      }
      return solve_r_vfista(p, sc);
    default:
      break;
  }
  throw ConfigError("unsupported solver");
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const BilevelProblem* problem) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<BilevelProblem> built;
  if (!problem) {
    built.emplace(build_problem(cfg.instance));
    problem = &*built;
  }
  ExperimentResult res;
  res.config = cfg;
  res.report = dispatch(cfg, *problem);
  res.provenance = problem->reference() ? problem->reference()->provenance : "none";
  for (const char* metric : {"infeas", "subopt_envelope", "dist_xstar_sq", "dist_lower", "residual_sq"}) {
    const auto samples = trace_samples(res.report.trace, metric);
    try {
      res.fits.push_back({metric, fit_rate(samples, default_window(cfg.K))});
    } catch (const Error&) {
      // Too few positive samples in the window; no fit for this metric.
    }
  }
  res.wall_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
  return res;
}

void write_trace_csv(std::ostream& out, const IterateTrace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.k << ',' << format_real(r.eta) << ',' << csv_field(r.theta) << ',' << format_real(r.f_bar) << ','
        << format_real(r.h_bar) << ',' << csv_field(r.infeas) << ',' << csv_field(r.subopt) << ','
        << csv_field(r.dist_xstar_sq) << ',' << csv_field(r.dist_lower) << ',' << csv_field(r.residual_sq) << ',';
    if (r.elapsed_ns) out << *r.elapsed_ns;
    out << '\n';
  }
}

std::string trace_csv(const IterateTrace& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  return out.str();
}

std::vector<MetricSample> trace_samples(const IterateTrace& trace, const std::string& metric) {
  std::vector<MetricSample> out;
  const auto pick = [&](const TraceRecord& r) -> std::optional<double> {
    if (metric == "eta") return r.eta;
    if (metric == "theta") return r.theta;
    if (metric == "f_bar") return r.f_bar;
    if (metric == "h_bar") return r.h_bar;
    if (metric == "infeas") return r.infeas;
    if (metric == "subopt") return r.subopt;
    if (metric == "abs_subopt") {
      if (!r.subopt) return std::nullopt;
      return std::abs(*r.subopt);
    }
    if (metric == "subopt_envelope") {
      if (!r.subopt) return std::nullopt;
      return std::max(*r.subopt, 0.0);
    }
    if (metric == "dist_xstar_sq") return r.dist_xstar_sq;
    if (metric == "dist_lower") return r.dist_lower;
    if (metric == "residual_sq") return r.residual_sq;
    if (metric == "elapsed_ns") {
      if (!r.elapsed_ns) return std::nullopt;
      return static_cast<double>(*r.elapsed_ns);
    }
    throw ConfigError("unknown metric '" + metric + "'");
  };
  for (const auto& r : trace.records)
    if (auto v = pick(r)) out.push_back({r.k, *v});
  if (metric == "subopt_envelope") {
    double running = 0.0;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      running = std::max(running, it->value);
      it->value = running;
    }
  }
  return out;
}

std::vector<MetricSample> read_csv_column(std::istream& in, const std::string& metric) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV");
  const auto header = split(line, ',');
  const auto kcol = std::find(header.begin(), header.end(), "k");
  const auto col = std::find(header.begin(), header.end(), metric);
  if (kcol == header.end()) throw ConfigError("CSV has no 'k' column");
  if (col == header.end()) throw ConfigError("CSV has no column '" + metric + "'");
  const auto ki = static_cast<std::size_t>(kcol - header.begin());
  const auto ci = static_cast<std::size_t>(col - header.begin());
  std::vector<MetricSample> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) throw ParseError("CSV row has the wrong number of fields", row);
    if (fields[ci].empty()) continue;
    out.push_back({parse_integer("k", fields[ki]), parse_number(metric, fields[ci])});
  }
  return out;
}

void write_report(std::ostream& out, const ExperimentResult& res) {
  const auto& e = res.config;
  const auto& r = res.report;
  out << "schema_version = 1\n";
  out << "instance.name = " << e.instance.name << '\n';
  out << "instance.n = " << e.instance.n << '\n';
  if (e.instance.seed) out << "instance.seed = " << *e.instance.seed << '\n';
  for (const auto& [k, v] : e.instance.params) out << "instance." << k << " = " << v << '\n';
  out << "reference.provenance = " << res.provenance << '\n';
  out << "solver.name = " << to_string(e.solver) << '\n';
  out << "solver.K = " << e.K << '\n';
  if (e.p) out << "solver.p = " << format_real(*e.p) << '\n';
  out << "solver.eta_bar = " << format_real(e.eta_bar) << '\n';
  out << "solver.eta = " << e.eta << '\n';
  if (e.solver == SolverKind::IprVfista) {
    out << "solver.a = " << e.a << '\n';
    out << "solver.box_lower = " << format_real(e.box_lower) << '\n';
    out << "solver.box_upper = " << format_real(e.box_upper) << '\n';
  }
  for (const auto& [k, v] : r.resolved) out << "resolved." << k << " = " << v << '\n';
  out << "result.iterations = " << r.iterations << '\n';
  if (r.inner_iterations) out << "result.inner_iterations = " << r.inner_iterations << '\n';
  out << "result.diverged = " << (r.diverged ? "true" : "false") << '\n';
  if (!r.diagnostic.empty()) out << "result.diagnostic = " << r.diagnostic << '\n';
  if (r.Gamma_K) out << "result.Gamma_K = " << format_real(*r.Gamma_K) << '\n';
  if (r.theta_last) out << "result.theta_last = " << format_real(*r.theta_last) << '\n';
  if (r.best_index) out << "result.best_index = " << *r.best_index << '\n';
  if (r.best_residual) out << "result.best_residual_sq = " << format_real(*r.best_residual * *r.best_residual) << '\n';
  if (!r.trace.records.empty()) {
    const auto& last = r.trace.records.back();
    out << "final.k = " << last.k << '\n';
    out << "final.f_bar = " << format_real(last.f_bar) << '\n';
    out << "final.h_bar = " << format_real(last.h_bar) << '\n';
    if (last.infeas) out << "final.infeas = " << format_real(*last.infeas) << '\n';
    if (last.subopt) out << "final.subopt = " << format_real(*last.subopt) << '\n';
    if (last.dist_xstar_sq) out << "final.dist_xstar_sq = " << format_real(*last.dist_xstar_sq) << '\n';
    if (last.dist_lower) out << "final.dist_lower = " << format_real(*last.dist_lower) << '\n';
    if (last.residual_sq) out << "final.residual_sq = " << format_real(*last.residual_sq) << '\n';
  }
  for (const auto& f : res.fits) {
    out << "fit." << f.metric << ".slope = " << format_real(f.fit.slope) << '\n';
    out << "fit." << f.metric << ".r_squared = " << format_real(f.fit.r_squared) << '\n';
    out << "fit." << f.metric << ".window = " << format_real(f.fit.window.k_min) << ':'
        << format_real(f.fit.window.k_max) << '\n';
  }
  out << "x =";
  for (Index i = 0; i < r.x.size(); ++i) out << ' ' << format_real(r.x(i));
  out << '\n';
  out << "wall.solver_ns = " << r.elapsed_ns << '\n';
  out << "wall.total_ns = " << res.wall_ns << '\n';
}

PlotGeometry render_svg(const std::vector<MetricSample>& samples, const std::string& metric, PlotOptions opts) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : samples) {
    double x = static_cast<double>(s.k);
    double y = s.value;
    if (!std::isfinite(y)) continue;
    if (opts.logx) {
      if (x <= 0.0) continue;
      x = std::log10(x);
    }
    if (opts.logy) {
      if (y <= 0.0) continue;
      y = std::log10(y);
    }
    pts.emplace_back(x, y);
  }
  if (pts.size() < 2) throw ConfigError("metric '" + metric + "' has fewer than two plottable points");
  double x0 = pts.front().first, x1 = x0, y0 = pts.front().second, y1 = y0;
  for (const auto& [x, y] : pts) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double left = 70.0, right = 20.0, top = 20.0, bottom = 50.0;
  const double w = opts.width - left - right;
  const double h = opts.height - top - bottom;
  PlotGeometry g;
  for (const auto& [x, y] : pts) {
    const double sx = std::round((left + (x - x0) / (x1 - x0) * w) * 100.0) / 100.0;
    const double sy = std::round((top + (y1 - y) / (y1 - y0) * h) * 100.0) / 100.0;
    g.points.emplace_back(sx, sy);
  }
  const auto label = [](double v, bool log) { return format_real(log ? std::pow(10.0, v) : v); };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\"" << opts.height
      << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << left << "\" y=\"" << opts.height - 28 << "\" font-size=\"11\">" << label(x0, opts.logx)
      << "</text>\n";
  svg << "<text x=\"" << left + w << "\" y=\"" << opts.height - 28 << "\" font-size=\"11\" text-anchor=\"end\">"
      << label(x1, opts.logx) << "</text>\n";
  svg << "<text x=\"" << left - 4 << "\" y=\"" << top + 10 << "\" font-size=\"11\" text-anchor=\"end\">"
      << label(y1, opts.logy) << "</text>\n";
  svg << "<text x=\"" << left - 4 << "\" y=\"" << top + h << "\" font-size=\"11\" text-anchor=\"end\">"
      << label(y0, opts.logy) << "</text>\n";
  svg << "<text x=\"" << left + w / 2 << "\" y=\"" << opts.height - 10 << "\" font-size=\"12\" text-anchor=\"middle\">"
      << (opts.logx ? "k (log)" : "k") << "</text>\n";
  svg << "<text x=\"14\" y=\"" << top + h / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 " << top + h / 2
      << ")\" text-anchor=\"middle\">" << metric << (opts.logy ? " (log)" : "") << "</text>\n";
  svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    if (i) svg << ' ';
    svg << format_real(g.points[i].first) << ',' << format_real(g.points[i].second);
  }
  svg << "\"/>\n</svg>\n";
  g.svg = svg.str();
  return g;
}

std::vector<RateRow> parse_rate_suite(std::istream& in) {
  std::vector<RateRow> rows;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::string body = trim(std::string_view(text).substr(0, text.find('#')));
    if (body.empty()) continue;
    const auto f = split(body, ',');
    if (f.size() < 4 || f.size() > 6) {
      throw ParseError("expected config,metric,expected,tolerance[,label[,window]]", line);
    }
    RateRow r;
    r.config = f[0];
    r.metric = f[1];
    r.expected = f[2];
    r.line = line;
    try {
      r.tolerance = parse_number("tolerance", f[3]);
      const std::string e = r.expected.rfind("<=", 0) == 0 ? r.expected.substr(2) : r.expected;
      parse_number("expected", e);
      if (f.size() >= 5) r.label = f[4];
      if (f.size() == 6 && !f[5].empty()) {
        const auto w = split(f[5], ':');
        if (w.size() != 2) throw ConfigError("window must be kmin:kmax");
        r.window = RateWindow{parse_number("window", w[0]), parse_number("window", w[1])};
      }
    } catch (const ConfigError& err) {
      throw ParseError(err.what(), line);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

RateOutcome evaluate_rate_row(const RateRow& row, const std::string& base_dir) {
  RateOutcome out;
  out.row = row;
  const std::string what = row.label.empty() ? row.metric : row.label;
  try {
    std::vector<MetricSample> samples;
    RateWindow window = row.window.value_or(RateWindow{});
    int min_samples = 5;
    if (row.config == "selftest:power") {
      for (int k = 1; k <= 1000; k = k * 2) samples.push_back({k, 7.0 / k});
    } else {
      std::string path = row.config;
      std::vector<std::int64_t> sweep;
      if (const auto at = path.find("@K="); at != std::string::npos) {
        for (const auto& s : split(path.substr(at + 3), ';')) sweep.push_back(parse_integer("K", s));
        path = path.substr(0, at);
      }
      const fs::path p(path);
      const Config cfg = load_config(p.is_absolute() ? path : (fs::path(base_dir) / p).string());
      ExperimentConfig e = parse_experiment(cfg);
      if (sweep.empty()) {
        const ExperimentResult res = run_experiment(e);
        samples = trace_samples(res.report.trace, row.metric);
        if (!row.window) window = default_window(e.K);
      } else {
        const BilevelProblem prob = build_problem(e.instance);
        for (const auto K : sweep) {
          e.K = K;
          const ExperimentResult res = run_experiment(e, &prob);
          const auto s = trace_samples(res.report.trace, row.metric);
          if (s.empty()) throw Error("metric '" + row.metric + "' unavailable");
          if (row.metric == "residual_sq" && res.report.best_residual) {
            samples.push_back({K, *res.report.best_residual * *res.report.best_residual});
          } else {
            samples.push_back({K, s.back().value});
          }
        }
        min_samples = std::min<int>(5, static_cast<int>(sweep.size()));
      }
    }
    const RateFit fit = fit_rate(samples, window, min_samples);
    out.fit = fit;
    if (row.expected.rfind("<=", 0) == 0) {
      const double bound = parse_number("expected", row.expected.substr(2));
      out.pass = fit.slope <= bound + row.tolerance;
      out.message = what + ": slope " + format_real(fit.slope) + (out.pass ? " <= " : " > ") + format_real(bound);
    } else {
      const double expected = parse_number("expected", row.expected);
      out.pass = std::abs(fit.slope - expected) <= row.tolerance;
      out.message = what + ": slope " + format_real(fit.slope) + ", expected " + format_real(expected) + " +- " +
                    format_real(row.tolerance);
    }
  } catch (const std::exception& err) {
    out.pass = false;
    out.message = what + ": " + err.what();
  }
  return out;
}

std::vector<RateOutcome> run_rate_suite(const std::vector<RateRow>& rows, const std::string& base_dir, int threads) {
  std::vector<RateOutcome> out(rows.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) out[i] = evaluate_rate_row(rows[i], base_dir);
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(rows.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace sbo
