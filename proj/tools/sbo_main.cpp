// sbo: run experiments, check rate suites, plot traces, write instances.

#include "sbo/errors.hpp"
#include "sbo/experiment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

int cmd_run(const std::string& config_path) {
  sbo::ExperimentConfig cfg;
  try {
    cfg = sbo::parse_experiment(sbo::load_config(config_path));
  } catch (const sbo::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  sbo::ExperimentResult res;
  try {
    res = sbo::run_experiment(cfg);
  } catch (const sbo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sbo::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sbo::DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kExitDiverged;
  }
  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);
  {
    std::ofstream csv(dir / "trace.csv");
    sbo::write_trace_csv(csv, res.report.trace);
  }
  {
    std::ofstream rep(dir / "report.txt");
    sbo::write_report(rep, res);
  }
  for (const auto& metric : cfg.plots) {
    try {
      const auto samples = sbo::trace_samples(res.report.trace, metric);
      const auto plot = sbo::render_svg(samples, metric, {true, true});
      std::ofstream svg(dir / ("plot_" + metric + ".svg"));
      svg << plot.svg;
    } catch (const sbo::ConfigError& e) {
      std::cerr << "plot skipped: " << e.what() << '\n';
    }
  }
  if (res.report.diverged) {
    std::cerr << "diverged: " << res.report.diagnostic << '\n';
    return kExitDiverged;
  }
  std::cout << "wrote " << (dir / "trace.csv").string() << " (" << res.report.trace.records.size() << " records)\n";
  return kExitOk;
}

int cmd_rates(const std::string& suite_path) {
  std::ifstream in(suite_path);
  if (!in) {
    std::cerr << "cannot open suite '" << suite_path << "'\n";
    return kExitConfig;
  }
  std::vector<sbo::RateRow> rows;
  try {
    rows = sbo::parse_rate_suite(in);
  } catch (const sbo::Error& e) {
    std::cerr << "suite error: " << e.what() << '\n';
    return kExitConfig;
  }
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("SBO_THREADS")) threads = std::max(1, std::atoi(env));
  const fs::path dir = fs::path(suite_path).parent_path();
  const auto outcomes = sbo::run_rate_suite(rows, dir.empty() ? "." : dir.string(), threads);
  bool all = true;
  for (const auto& o : outcomes) {
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << o.message;
    if (o.fit) std::cout << " (r^2 " << sbo::format_real(o.fit->r_squared) << ", " << o.fit->samples << " samples)";
    std::cout << '\n';
  }
  std::cout << (all ? "all rows passed" : "some rows failed") << '\n';
  return all ? kExitOk : kExitFail;
}

int cmd_plot(const std::string& csv_path, const std::string& metric, const std::string& out, bool logx, bool logy) {
  std::ifstream in(csv_path);
  if (!in) {
    std::cerr << "cannot open '" << csv_path << "'\n";
    return kExitConfig;
  }
  try {
    const auto samples = sbo::read_csv_column(in, metric);
    const auto plot = sbo::render_svg(samples, metric, {logx, logy});
    std::ofstream svg(out);
    svg << plot.svg;
    if (!svg) {
      std::cerr << "cannot write '" << out << "'\n";
      return kExitFail;
    }
  } catch (const sbo::Error& e) {
    std::cerr << "plot error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

int cmd_gen(const std::string& spec_text, const std::string& out) {
  try {
    sbo::InstanceSpec spec;
    if (fs::is_regular_file(spec_text)) {
      spec = sbo::parse_experiment(sbo::load_config(spec_text)).instance;
    } else {
      spec = sbo::parse_instance_spec(spec_text);
    }
    sbo::save_instance(out, sbo::generate_instance_file(spec));
  } catch (const sbo::Error& e) {
    std::cerr << "gen error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized proximal-gradient solvers for simple bilevel optimization"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one experiment config; writes trace.csv and report.txt");
  run->add_option("config", config_path, "Config file")->required();

  std::string suite_path;
  auto* rates = app.add_subcommand("rates", "Run a rate-verification suite");
  rates->add_option("suite", suite_path, "Suite file")->required();

  std::string csv_path, metric, out_svg;
  bool logx = false, logy = false;
  auto* plot = app.add_subcommand("plot", "Render one trace column as SVG");
  plot->add_option("csv", csv_path, "Trace CSV")->required();
  plot->add_option("--metric", metric, "Column name")->required();
  plot->add_option("--out", out_svg, "Output SVG")->required();
  plot->add_flag("--logx", logx, "Log-scaled k axis");
  plot->add_flag("--logy", logy, "Log-scaled value axis");

  std::string spec_text, out_file;
  auto* gen = app.add_subcommand("gen", "Write an instance file");
  gen->add_option("spec", spec_text, "name:n[:key=value,...] or a config file")->required();
  gen->add_option("--out", out_file, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (*run) return cmd_run(config_path);
  if (*rates) return cmd_rates(suite_path);
  if (*plot) return cmd_plot(csv_path, metric, out_svg, logx, logy);
  return cmd_gen(spec_text, out_file);
}
