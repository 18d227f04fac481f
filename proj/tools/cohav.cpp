// cohav: regime sweeps, figure data, validation suites and closed-form queries.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cohav/fisher.hpp"
#include "cohav/sweep.hpp"
#include "cohav/sweep_config.hpp"
#include "cohav/validate.hpp"
#include "cohav/zzzz_exact.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kIoError = 2;

struct RunFlags {
  std::string out;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<int> nmax;
};

void add_run_flags(CLI::App* app, RunFlags& f) {
  app->add_option("--out", f.out, "CSV path; fits go to <path>.fits.csv (default: both to stdout)");
  app->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--seed", f.seed, "replaces the configured seed");
  app->add_option("--nmax", f.nmax, "drop grid points with N above this")->check(CLI::PositiveNumber);
}

int run_config(const std::string& text, const RunFlags& f) {
  std::vector<cohav::SweepConfig> sections;
  try {
    sections = cohav::parse_sweep_config(text, f.seed);
  } catch (const cohav::InvalidArgument& e) {
    std::cerr << "cohav: invalid configuration: " << e.what() << "\n";
    return kFailure;
  }
  if (f.workers)
    for (auto& c : sections) c.workers = *f.workers;
  if (f.nmax) cohav::truncate_n(sections, *f.nmax);

  if (!f.out.empty()) {
    // Fail on an unwritable path before spending time on the sweep.
    std::ofstream probe(f.out, std::ios::app);
    if (!probe) {
      std::cerr << "cohav: cannot open '" << f.out << "' for writing\n";
      return kIoError;
    }
  }
  cohav::ScanResult result = cohav::run_sweep(sections);
  if (f.out.empty()) {
    cohav::write_rows_csv(result.rows, std::cout);
    std::cout << "\n";
    cohav::write_fits_csv(result.fits, std::cout);
    return std::cout ? kOk : kIoError;
  }
  try {
    cohav::emit_csv(result, f.out);
  } catch (const cohav::OutputError& e) {
    std::cerr << "cohav: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

int cmd_sweep(const std::string& path, const RunFlags& f) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cohav: cannot read '" << path << "'\n";
    return kIoError;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return run_config(ss.str(), f);
}

int cmd_fig(int fig, const RunFlags& f) {
  const auto& configs = cohav::embedded_configs();
  auto it = configs.find("fig" + std::to_string(fig));
  if (it == configs.end()) {
    std::cerr << "cohav: no built-in configuration for figure " << fig << "\n";
    return kFailure;
  }
  return run_config(it->second, f);
}

int cmd_validate(const std::string& suite, std::uint64_t seed) {
  char s = suite == "all" ? 0 : suite[0];
  auto checks = cohav::run_validation_suites(s, seed);
  bool ok = true;
  for (const auto& c : checks) {
    std::printf("[%c] %s  %s: %.6g (%s)\n", c.suite, c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                c.criterion.c_str());
    ok = ok && c.pass;
  }
  return ok ? kOk : kFailure;
}

struct ExactArgs {
  std::string model, param, quantity = "global";
  int n = 1;
  cohav::ModelSpec spec;
  cohav::StateAngles angles{std::numbers::pi / 3, 3 * std::numbers::pi / 8, std::numbers::pi / 6,
                            5 * std::numbers::pi / 8};
  std::optional<double> beta_th;
};

int cmd_exact(const ExactArgs& a) {
  using namespace cohav;
  ModelSpec spec = a.spec;
  spec.kind = parse_model_kind(a.model);
  Param p = parse_param(a.param);
  spec.validate();
  if (a.n < 1) throw InvalidArgument("N must be >= 1");

  double value = 0.0;
  std::optional<double> log10_value;
  if (spec.kind != ModelKind::zzzz) {
    if (a.quantity != "global" && a.quantity != "local")
      throw UnsupportedModel("quantity '" + a.quantity + "' exists for ZZZZ only");
    std::cerr << "cohav: no closed form for " << a.model << "; numerical value\n";
    value = a.quantity == "global" ? global_qfi_fd(spec, a.n, a.angles, p).value
                                   : local_qfi_fd(spec, a.n, a.angles, p).value;
  } else if (a.beta_th) {
    if (a.quantity != "global") throw UnsupportedModel("thermal probes: global QFI only");
    value = thermal_global_qfi(spec, a.n, *a.beta_th, a.angles.beta, p);
  } else if (a.quantity == "global") {
    value = global_qfi_closed(spec, a.n, a.angles, p);
  } else if (a.quantity == "local") {
    if (p != Param::x) throw UnsupportedModel("closed-form local QFI exists for x only");
    auto r = local_qfi_x_closed(spec, a.n, a.angles);
    value = r.value;
    log10_value = r.log10_value;
  } else {
    X0Variant v = a.quantity == "x0_exact" ? X0Variant::exact_statebad
                  : a.quantity == "x0_pert" ? X0Variant::pert_statebad
                                            : X0Variant::pert_general;
    if (p != Param::x) throw UnsupportedModel("X measurement uncertainty exists for x only");
    auto r = delta_x_X0(spec, a.n, a.angles, v);
    value = r.inverse_squared;
    log10_value = r.log10_inverse_squared;
  }
  std::printf("%.17g\n", value);
  if (log10_value && value == 0.0) std::printf("log10 = %.17g\n", *log10_value);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent averaging: quantum Fisher information of N probes coupled to a bus qubit"};
  app.require_subcommand(1);

  RunFlags sweep_flags, fig_flags;
  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "run a sweep from a configuration file");
  sweep->add_option("config", config_path, "configuration file")->required();
  add_run_flags(sweep, sweep_flags);

  int fig = 0;
  auto* figcmd = app.add_subcommand("fig", "reproduce a figure's data with its built-in configuration");
  figcmd->add_option("figure", fig, "figure number")->required()->check(CLI::Range(2, 6));
  add_run_flags(figcmd, fig_flags);

  std::string suite = "all";
  std::uint64_t validate_seed = 0;
  auto* validate = app.add_subcommand("validate", "run the self-check suites");
  validate->add_option("--suite", suite, "a, b, c, d or all")->check(CLI::IsMember({"a", "b", "c", "d", "all"}));
  validate->add_option("--seed", validate_seed, "seed for the random configurations of suite d");

  ExactArgs ex;
  auto* exact = app.add_subcommand("exact", "one-shot closed-form query (ZZZZ); numerical for other models");
  exact->add_option("model", ex.model, "zzzz, zzxx or zzzx")->required();
  exact->add_option("param", ex.param, "x, omega0 or omega1")->required();
  exact->add_option("--N", ex.n, "number of probes");
  exact->add_option("--quantity", ex.quantity, "global, local, x0_exact, x0_pert or x0_general")
      ->check(CLI::IsMember({"global", "local", "x0_exact", "x0_pert", "x0_general"}));
  exact->add_option("--alpha", ex.angles.alpha, "probe polar angle (default pi/3)");
  exact->add_option("--phi", ex.angles.phi, "probe phase (default 3pi/8)");
  exact->add_option("--beta", ex.angles.beta, "bus polar angle (default pi/6)");
  exact->add_option("--varphi", ex.angles.varphi, "bus phase (default 5pi/8)");
  exact->add_option("--delta", ex.spec.delta, "free-evolution scale (default 1)");
  exact->add_option("--epsilon", ex.spec.epsilon, "coupling scale (default 1)");
  exact->add_option("--omega0", ex.spec.omega0, "bus frequency (default 1)");
  exact->add_option("--omega1", ex.spec.omega1, "probe frequency (default 1)");
  exact->add_option("--x", ex.spec.x, "coupling parameter (default 1)");
  exact->add_option("--t", ex.spec.t, "evolution time (default 1)");
  exact->add_option("--beta-th", ex.beta_th, "thermal probes at this inverse temperature");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return cmd_sweep(config_path, sweep_flags);
    if (*figcmd) return cmd_fig(fig, fig_flags);
    if (*validate) return cmd_validate(suite, validate_seed);
    if (*exact) return cmd_exact(ex);
  } catch (const std::exception& e) {
    std::cerr << "cohav: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
