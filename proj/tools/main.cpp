// mfpt: mean-field perturbation theory for anharmonic and double-well
// oscillators. Exit codes: 0 ok, 2 usage, 3 domain or phase, 4 convergence.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace mfpt;
using mfpt::cli::run_config;

struct raw_options {
  std::string kind = "qaho";
  std::string g = "1";
  unsigned n = 0;
  std::optional<int> orders;
  std::string method = "both";
  std::optional<std::string> gamma, rc;
  std::optional<int> nc;
  std::string epsilon = "0.001";
  std::optional<unsigned> precision;
  std::string format = "text";
  std::string out;
  std::optional<std::string> origin;
  bool strict = false;
  std::string g_grid;
  int basis = 200;
  std::optional<double> basis_omega;
};

unsigned default_precision() {
  if (const char* env = std::getenv("MFPT_PRECISION")) {
    try {
      const long v = std::stol(env);
      if (v >= 10 && v <= 100000) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw parse_error(std::string("MFPT_PRECISION must be an integer >= 10, got '") + env + "'");
  }
  return default_precision_digits;
}

run_config to_config(const raw_options& raw) {
  run_config cfg;
  cfg.kind = parse_kind(raw.kind);
  cfg.g = parse_rational(raw.g);
  cfg.n = raw.n;
  cfg.orders = raw.orders;
  cfg.method = raw.method;
  if (raw.gamma) cfg.gamma = parse_rational(*raw.gamma);
  if (raw.rc) cfg.r_c = parse_rational(*raw.rc);
  cfg.N_c = raw.nc;
  cfg.epsilon = parse_rational(raw.epsilon);
  cfg.precision = raw.precision.value_or(default_precision());
  cfg.format = cli::parse_format(raw.format);
  if (raw.origin) cfg.origin = cli::parse_origin(*raw.origin);
  cfg.strict = raw.strict;
  cfg.g_grid = raw.g_grid;
  cfg.basis = raw.basis;
  cfg.basis_omega = raw.basis_omega;
  return cfg;
}

void add_point_options(CLI::App* app, raw_options& o) {
  app->add_option("--kind", o.kind, "qaho | saho | qdwo")->check(CLI::IsMember({"qaho", "saho", "qdwo"}));
  app->add_option("--g", o.g, "coupling, decimal or p/q");
  app->add_option("--n", o.n, "level n (xi = n + 1/2)");
}

void add_common_options(CLI::App* app, raw_options& o) {
  app->add_option("--precision", o.precision, "working precision in decimal digits (default 100 or MFPT_PRECISION)");
  app->add_option("--format", o.format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app->add_option("--out", o.out, "write the report to this file");
  app->add_option("--origin", o.origin, "energy origin: hamiltonian | well-bottom")
      ->check(CLI::IsMember({"hamiltonian", "well-bottom"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field perturbation theory: series, optimal truncation and Borel summation"};
  app.require_subcommand(1);
  raw_options o;

  auto* solve = app.add_subcommand("solve", "energy at one coupling by MOT and/or Borel summation");
  add_point_options(solve, o);
  add_common_options(solve, o);
  solve->add_option("--orders", o.orders, "highest correction order P");
  solve->add_option("--method", o.method, "mot | borel | both")->check(CLI::IsMember({"mot", "borel", "both"}));
  solve->add_option("--gamma", o.gamma, "Borel exponent (default 1, SAHO 1/2)");
  solve->add_option("--rc", o.rc, "radius of convergence of the Borel series (estimated if absent)");
  solve->add_option("--nc", o.nc, "Borel terms retained (default P-1)");
  solve->add_option("--epsilon", o.epsilon, "upper cutoff 1-eps of the conformal integral");
  solve->add_flag("--strict", o.strict, "fail when Borel partial sums have not settled to 1e-6");

  auto* series = app.add_subcommand("series", "dump E_0..E_P, exact when the gap root is rational");
  add_point_options(series, o);
  add_common_options(series, o);
  series->add_option("--orders", o.orders, "highest correction order P (default 10)");

  auto* table1 = app.add_subcommand("table1", "recompute the 13 benchmark rows against the printed values");
  add_common_options(table1, o);
  table1->add_option("--epsilon", o.epsilon, "upper cutoff 1-eps of the conformal integral");

  auto* sweep = app.add_subcommand("sweep", "E0, E_MOT, E_tot and E_exact over a grid of g");
  add_point_options(sweep, o);
  add_common_options(sweep, o);
  sweep->add_option("--g-grid", o.g_grid, "lo:hi:log|lin:count")->required();
  sweep->add_option("--orders", o.orders, "highest correction order P");
  sweep->add_option("--gamma", o.gamma, "Borel exponent");
  sweep->add_option("--nc", o.nc, "Borel terms retained");
  sweep->add_option("--epsilon", o.epsilon, "upper cutoff 1-eps of the conformal integral");
  sweep->add_option("--basis", o.basis, "oracle basis size N_b");

  auto* oracle = app.add_subcommand("oracle", "exact diagonalization in a harmonic basis");
  add_point_options(oracle, o);
  add_common_options(oracle, o);
  oracle->add_option("--basis", o.basis, "basis size N_b (doubled until converged)");
  oracle->add_option("--basis-omega", o.basis_omega, "basis frequency (default max(1, mean-field omega))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const run_config cfg = to_config(o);
    precision_guard guard(cfg.precision);
    std::ostringstream report;
    if (*solve) {
      cli::write_solve(report, cfg, cli::solve(cfg));
    } else if (*series) {
      cli::run_series(report, cfg);
    } else if (*table1) {
      cli::run_table1(report, cfg);
    } else if (*sweep) {
      cli::run_sweep(report, cfg);
    } else if (*oracle) {
      cli::run_oracle(report, cfg);
    }
    if (o.out.empty()) {
      std::cout << report.str();
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw parse_error("cannot open '" + o.out + "' for writing");
      file << report.str();
    }
    return 0;
  } catch (const non_convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n  r_j:";
    for (double r : e.radius_estimates()) std::cerr << ' ' << r;
    std::cerr << "\n  p_j:";
    for (double p : e.exponent_estimates()) std::cerr << ' ' << p;
    std::cerr << "\n";
    return e.exit_code();
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  }
}
