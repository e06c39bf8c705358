// Python bindings: instances, solvers, metrics and the experiment runner.

#include "sbo/errors.hpp"
#include "sbo/experiment.hpp"
#include "sbo/metrics.hpp"
#include "sbo/problems.hpp"
#include "sbo/prox.hpp"
#include "sbo/solvers.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace sbo;

namespace {

py::dict trace_to_dict(const IterateTrace& trace) {
  py::dict out;
  for (const char* col : {"eta", "theta", "f_bar", "h_bar", "infeas", "subopt", "dist_xstar_sq", "dist_lower",
                          "residual_sq"}) {
    py::list values;
    for (const auto& s : trace_samples(trace, col)) values.append(py::make_tuple(s.k, s.value));
    out[col] = values;
  }
  return out;
}

py::dict report_to_dict(const RunReport& r) {
  py::dict d;
  d["solver"] = r.solver;
  d["x"] = r.x;
  d["x_best"] = r.x_best;
  d["best_index"] = r.best_index;
  d["best_residual"] = r.best_residual;
  d["iterations"] = r.iterations;
  d["inner_iterations"] = r.inner_iterations;
  d["gamma"] = r.gamma;
  d["eta0"] = r.eta0;
  d["kappa"] = r.kappa;
  d["momentum"] = r.momentum;
  d["diverged"] = r.diverged;
  d["diagnostic"] = r.diagnostic;
  d["trace"] = trace_to_dict(r.trace);
  d["trace_csv"] = trace_csv(r.trace);
  return d;
}

RegularizationSchedule make_schedule(const std::string& kind, double p, std::int64_t K, double eta_bar,
                                     std::optional<double> eta) {
  if (kind == "diminishing") return RegularizationSchedule::diminishing();
  if (kind == "constant_ista") return RegularizationSchedule::constant_ista(p, K);
  if (kind == "constant_vfista") return RegularizationSchedule::constant_vfista(p, eta_bar, K);
  if (kind == "fixed") {
    if (!eta) throw ConfigError("schedule 'fixed' needs eta");
    return RegularizationSchedule::fixed(*eta);
  }
  throw ConfigError("unknown schedule '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_sbo, m) {
  m.doc() = "Regularized proximal-gradient solvers for simple bilevel optimization";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ContractViolation>(m, "ContractViolation", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  m.def("prox_l1", &prox_l1, py::arg("threshold"), py::arg("x"));
  m.def("prox_ball", &prox_ball, py::arg("radius"), py::arg("x"));
  m.def("prox_box", &prox_box, py::arg("lower"), py::arg("upper"), py::arg("x"));
  m.def("prox_logsum", &prox_logsum, py::arg("delta"), py::arg("epsilon"), py::arg("x"));

  m.def(
      "regtools",
      [](const std::string& which, Index n) {
        const auto sys = gen_regtools(which, n);
        return py::make_tuple(sys.A, sys.b, sys.x_true);
      },
      py::arg("which"), py::arg("n"), "(A, b, x_true) for phillips, baart or foxgood.");

  py::class_<BilevelProblem>(m, "Problem")
      .def_property_readonly("dimension", &BilevelProblem::dimension)
      .def_property_readonly("L_f", &BilevelProblem::lipschitz_upper)
      .def_property_readonly("L_h", &BilevelProblem::lipschitz_lower)
      .def_property_readonly("mu_f", &BilevelProblem::strong_convexity_upper)
      .def("f_bar", [](const BilevelProblem& p, const Vector& x) { return p.upper().value(x); })
      .def("h_bar", [](const BilevelProblem& p, const Vector& x) { return p.lower().value(x); })
      .def("g_eta", [](const BilevelProblem& p, double eta, const Vector& x) { return regularized_value(p, eta, x); })
      .def("q_eta", [](const BilevelProblem& p, double eta, double gamma,
                       const Vector& x) { return q_eta_step(p, eta, gamma, x); })
      .def_property_readonly("h_star",
                             [](const BilevelProblem& p) -> std::optional<double> {
                               if (!p.reference()) return std::nullopt;
                               return p.reference()->h_star;
                             })
      .def_property_readonly("f_star",
                             [](const BilevelProblem& p) -> std::optional<double> {
                               if (!p.reference()) return std::nullopt;
                               return p.reference()->f_star;
                             })
      .def_property_readonly("x_star",
                             [](const BilevelProblem& p) -> std::optional<Vector> {
                               if (!p.reference()) return std::nullopt;
                               return p.reference()->x_star;
                             })
      .def_property_readonly("provenance", [](const BilevelProblem& p) {
        return p.reference() ? p.reference()->provenance : std::string();
      });

  m.def(
      "build_problem", [](const std::string& spec) { return build_problem(parse_instance_spec(spec)); },
      py::arg("spec"), "Builds an instance from 'name:n[:key=value,...]'.");

  m.def("infeasibility", &infeasibility, py::arg("problem"), py::arg("x"));
  m.def("suboptimality", &suboptimality, py::arg("problem"), py::arg("x"));
  m.def("dist_to_lower_set", &dist_to_lower_set, py::arg("problem"), py::arg("x"));
  m.def("dist_to_optimum_sq", &dist_to_optimum_sq, py::arg("problem"), py::arg("x"));
  m.def("residual_norm", &residual_norm, py::arg("problem"), py::arg("x"), py::arg("gamma_hat"),
        py::arg("check_step") = true);

  m.def(
      "fit_rate",
      [](const std::vector<std::pair<std::int64_t, double>>& samples, double k_min, double k_max, int min_samples) {
        std::vector<MetricSample> s;
        for (const auto& [k, v] : samples) s.push_back({k, v});
        const RateFit fit = fit_rate(s, {k_min, k_max}, min_samples);
        py::dict d;
        d["slope"] = fit.slope;
        d["intercept"] = fit.intercept;
        d["r_squared"] = fit.r_squared;
        d["samples"] = fit.samples;
        return d;
      },
      py::arg("samples"), py::arg("k_min") = 1.0, py::arg("k_max") = 1e300, py::arg("min_samples") = 5);

  m.def(
      "solve_ir_ista",
      [](const BilevelProblem& p, std::int64_t K, const std::string& schedule, double p_exp, double eta_bar,
         std::optional<double> eta, std::optional<double> gamma, std::optional<Vector> x0) {
        SolverConfig cfg;
        cfg.iterations = K;
        cfg.schedule = make_schedule(schedule, p_exp, K, eta_bar, eta);
        cfg.gamma = gamma;
        cfg.x0 = std::move(x0);
        py::gil_scoped_release release;
        const RunReport r = solve_ir_ista(p, cfg);
        py::gil_scoped_acquire acquire;
        return report_to_dict(r);
      },
      py::arg("problem"), py::arg("K"), py::arg("schedule") = "diminishing", py::arg("p") = 1.0,
      py::arg("eta_bar") = 1.0, py::arg("eta") = py::none(), py::arg("gamma") = py::none(),
      py::arg("x0") = py::none());

  m.def(
      "solve_r_vfista",
      [](const BilevelProblem& p, std::int64_t K, const std::string& schedule, double p_exp, double eta_bar,
         std::optional<double> eta, std::optional<Vector> x0) {
        SolverConfig cfg;
        cfg.iterations = K;
        cfg.schedule = make_schedule(schedule, p_exp, K, eta_bar, eta);
        cfg.x0 = std::move(x0);
        py::gil_scoped_release release;
        const RunReport r = solve_r_vfista(p, cfg);
        py::gil_scoped_acquire acquire;
        return report_to_dict(r);
      },
      py::arg("problem"), py::arg("K"), py::arg("schedule") = "constant_vfista", py::arg("p") = 1.0,
      py::arg("eta_bar") = 1.0, py::arg("eta") = py::none(), py::arg("x0") = py::none());

  m.def(
      "solve_ipr_vfista",
      [](const BilevelProblem& p, std::int64_t K, int a, double eta_bar, bool check_outer_step,
         std::optional<Vector> x0) {
        NcConfig cfg;
        cfg.iterations = K;
        cfg.a = a;
        cfg.eta_bar = eta_bar;
        cfg.check_outer_step = check_outer_step;
        cfg.x0 = std::move(x0);
        py::gil_scoped_release release;
        const RunReport r = solve_ipr_vfista(p, cfg);
        py::gil_scoped_acquire acquire;
        return report_to_dict(r);
      },
      py::arg("problem"), py::arg("K"), py::arg("a") = 2, py::arg("eta_bar") = 1.0,
      py::arg("check_outer_step") = true, py::arg("x0") = py::none());

  m.def("weak_sharp_eta", &weak_sharp_eta, py::arg("problem"));
  m.def("ipr_inner_eta", &ipr_inner_eta, py::arg("J"), py::arg("L_h"), py::arg("eta_bar"));

  m.def(
      "run_config",
      [](const std::string& text, const std::string& base_dir) {
        std::istringstream in(text);
        const ExperimentConfig cfg = parse_experiment(parse_config(in, base_dir));
        ExperimentResult res;
        {
          py::gil_scoped_release release;
          res = run_experiment(cfg);
        }
        py::dict d = report_to_dict(res.report);
        std::ostringstream rep;
        write_report(rep, res);
        d["report"] = rep.str();
        py::dict fits;
        for (const auto& f : res.fits) fits[py::str(f.metric)] = f.fit.slope;
        d["fits"] = fits;
        return d;
      },
      py::arg("text"), py::arg("base_dir") = ".", "Runs an experiment from config text without writing files.");
}
