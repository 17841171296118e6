// Command-line driver: single runs, refinement tables and reference checks.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "stabfv/error.hpp"
#include "stabfv/experiment.hpp"

namespace {

using namespace stabfv;

constexpr int kExitValidation = 1;

struct RunArgs {
  int example = 1;
  double dx = 0.01;
  double sigma = 0.5;
  std::string scheme;
  std::optional<double> cfl;
  std::optional<double> T;
  std::optional<int> K;
  std::string out;
  std::string trajectory;
  int workers = 0;
  bool lagged = false;
  bool zero = false;
  std::string feedback = "characteristic";
};

ExampleOverrides overrides_from(const RunArgs& a) {
  ExampleOverrides o;
  if (a.scheme == "upwind") o.scheme = Scheme::Upwind;
  if (a.scheme == "cu") o.scheme = Scheme::CentralUpwind;
  o.cfl = a.cfl;
  o.T = a.T;
  o.K = a.K;
  o.zero_initial_data = a.zero;
  return o;
}

SimulationOptions options_from(const RunArgs& a) {
  SimulationOptions s;
  s.workers = a.workers;
  s.lagged_closure = a.lagged;
  s.cu_feedback = a.feedback == "interior" ? FeedbackTrace::Interior : FeedbackTrace::Characteristic;
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path);
}

int do_run(const RunArgs& a) {
  const auto config = make_example(a.example, a.sigma, a.dx, overrides_from(a));
  const auto opts = options_from(a);
  const auto res = simulate(config, opts);

  TableRow row;
  row.example = config.id;
  row.dx = 1.0 / config.cells;
  row.sigma = config.sigma;
  row.E = res.report.E;
  row.nu_emp = res.report.nu_emp;
  if (config.certified_rate) row.nu_theory = res.report.nu;
  write_text(a.out, format_csv({row}));

  if (!a.trajectory.empty()) {
    std::string text = "t,L,sup,derivative_sup\n";
    const auto& tr = res.trajectory;
    for (std::size_t n = 0; n < tr.size(); ++n) {
      text += format_number(tr.t[n]) + ',' + format_number(tr.L[n]) + ',' + format_number(tr.sup[n]) + ',' +
              format_number(tr.derivative_sup[n]) + '\n';
    }
    write_text(a.trajectory, text);
  }

  std::cerr << "steps=" << res.grid.steps << " dt=" << res.grid.dt << " lambda=" << res.lambda
            << " delta=" << res.delta << " max_sup=" << res.max_sup
            << (res.sup_within_delta ? "" : " (exceeds delta)") << " delta_threshold=" << res.delta_threshold
            << '\n';
  if (!std::isfinite(row.nu_emp)) {
    std::cerr << "warning: initial Lyapunov value is zero; empirical rate undefined\n";
  }
  return 0;
}

std::vector<double> parse_spacings(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      out.push_back(std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1)));
    } else {
      out.push_back(std::stod(s));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary-feedback stabilization experiments for random hyperbolic systems"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run one example and print its table row");
  run->set_config("--config", "", "Flat key=value file with the same keys as the flags");
  run->add_option("--example", run_args.example, "Example id 1..8")->required()->check(CLI::Range(1, 8));
  run->add_option("--dx", run_args.dx, "Mesh spacing (1/dx must be an integer)");
  run->add_option("--sigma", run_args.sigma, "Half-width of the random parameter support");
  run->add_option("--scheme", run_args.scheme, "upwind or cu")->check(CLI::IsMember({"upwind", "cu"}));
  run->add_option("--cfl", run_args.cfl, "CFL number in (0, 1]");
  run->add_option("--T", run_args.T, "Final time");
  run->add_option("--K", run_args.K, "Number of random intervals");
  run->add_option("--out", run_args.out, "CSV destination (default stdout)");
  run->add_option("--trajectory", run_args.trajectory, "Write t, L, sup, derivative sup per step");
  run->add_option("--workers", run_args.workers, "Worker threads (default STABFV_WORKERS or all cores)");
  run->add_flag("--lagged-closure", run_args.lagged, "Feed inflow from the previous time level");
  run->add_flag("--zero-initial-data", run_args.zero, "Replace the initial data by zero");
  run->add_option("--cu-feedback", run_args.feedback, "characteristic or interior")
      ->check(CLI::IsMember({"characteristic", "interior"}));

  int table_example = 1;
  std::string table_out;
  std::vector<std::string> table_dx;
  std::vector<double> table_sigma;
  int table_workers = 0;
  auto* tab = app.add_subcommand("table", "Run the refinement sweep of one example and emit CSV");
  tab->set_config("--config", "", "Flat key=value file with the same keys as the flags");
  tab->add_option("--example", table_example, "Example id 1..8")->required()->check(CLI::Range(1, 8));
  tab->add_option("--out", table_out, "CSV destination (default stdout)");
  tab->add_option("--dx", table_dx, "Mesh spacings, e.g. 1/100 1/200 (default 1/100..1/1600)");
  tab->add_option("--sigma", table_sigma, "Values of sigma (default 0.5 1 2)");
  tab->add_option("--workers", table_workers, "Worker threads");

  std::string report_path;
  std::vector<int> check_examples{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<std::string> check_dx{"1/100"};
  std::vector<double> check_sigma{0.5, 1.0, 2.0};
  int check_workers = 0;
  auto* chk = app.add_subcommand("check", "Compare computed rows with the published tables");
  chk->add_option("--report", report_path, "Write the report here as well as to stdout");
  chk->add_option("--examples", check_examples, "Examples to check (default all)")->check(CLI::Range(1, 8));
  chk->add_option("--dx", check_dx, "Mesh spacings to check (default 1/100)");
  chk->add_option("--sigma", check_sigma, "Values of sigma to check (default 0.5 1 2)");
  chk->add_option("--workers", check_workers, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) return do_run(run_args);

    if (*tab) {
      SimulationOptions opts;
      opts.workers = table_workers;
      const auto dxs = table_dx.empty() ? default_dx_list() : parse_spacings(table_dx);
      const auto sigmas = table_sigma.empty() ? default_sigma_list() : table_sigma;
      const auto rows = table(table_example, dxs, sigmas, reproduction_overrides(table_example), opts);
      write_text(table_out, format_csv(rows));
      return 0;
    }

    if (*chk) {
      SimulationOptions opts;
      opts.workers = check_workers;
      std::vector<TableRow> rows;
      for (int ex : check_examples) {
        auto part = table(ex, parse_spacings(check_dx), check_sigma, reproduction_overrides(ex), opts);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      const auto report = check(rows);
      const auto text = report.render();
      std::cout << text;
      if (!report_path.empty()) write_text(report_path, text);
      return report.exit_code();
    }
  } catch (const BlowUpError& e) {
    std::cerr << "error: solver blow-up: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
