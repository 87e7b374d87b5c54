#pragma once

// Subcommand implementations for the mfpt tool. Each command writes its
// report to a stream and throws mfpt::error subclasses on failure; main()
// maps those to exit codes.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mfpt/io.hpp"
#include "mfpt/model.hpp"
#include "mfpt/oracle.hpp"
#include "mfpt/reference_table.hpp"
#include "mfpt/resum.hpp"
#include "mfpt/scalar.hpp"
#include "mfpt/series.hpp"

namespace mfpt::cli {

enum class output_format { text, json, csv };

struct run_config {
  oscillator_kind kind = oscillator_kind::qaho;
  rational g = 1;
  unsigned n = 0;
  std::optional<int> orders;
  std::string method = "both";
  std::optional<rational> gamma;
  std::optional<rational> r_c;
  std::optional<int> N_c;
  rational epsilon = rational(1, 1000);
  unsigned precision = default_precision_digits;
  output_format format = output_format::text;
  std::optional<energy_origin> origin;
  bool strict = false;
  std::string g_grid;
  int basis = 200;
  std::optional<double> basis_omega;
};

inline output_format parse_format(const std::string& text) {
  if (text == "text") return output_format::text;
  if (text == "json") return output_format::json;
  if (text == "csv") return output_format::csv;
  throw parse_error("unknown format '" + text + "'");
}

inline energy_origin parse_origin(const std::string& text) {
  if (text == "hamiltonian") return energy_origin::hamiltonian;
  if (text == "well-bottom") return energy_origin::well_bottom;
  throw parse_error("unknown origin '" + text + "' (hamiltonian | well-bottom)");
}

/// Fixed-point text with `places` decimals.
inline std::string fixed(const real& x, int places) {
  return x.str(places, std::ios_base::fixed);
}

inline std::string fixed(double x, int places) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", places, x);
  return buffer;
}

/// Runs fn(0..count-1) on a small thread pool. Results are stored by index,
/// so output order never depends on scheduling. All workers share the
/// caller's MPFR precision.
template <class R>
std::vector<R> parallel_map(std::size_t count, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(count);
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

inline oscillator_spec<rational> spec_of(const run_config& cfg) {
  oscillator_spec<rational> spec{cfg.kind, cfg.g, cfg.n};
  validate(spec);
  return spec;
}

inline oscillator_spec<double> double_spec(const oscillator_spec<rational>& spec) {
  return oscillator_spec<double>{spec.kind, to_double(spec.g), spec.level};
}

// ---------------------------------------------------------------------------
// solve

struct solve_report {
  oscillator_spec<rational> spec;
  correction_series<real> series;
  real offset = 0;
  std::optional<summation_result> mot;
  std::optional<summation_result> borel;
  std::optional<singularity_estimate> estimate;
};

/// Series length used to estimate r_c when it is not supplied.
inline constexpr int estimation_orders = 40;

inline solve_report solve(const run_config& cfg) {
  if (cfg.method != "mot" && cfg.method != "borel" && cfg.method != "both")
    throw parse_error("unknown method '" + cfg.method + "' (mot | borel | both)");
  solve_report rep;
  rep.spec = spec_of(cfg);
  const auto spec = convert_spec<real>(rep.spec);
  const int P = cfg.orders.value_or(std::max(estimation_orders, cfg.N_c.value_or(0) + 1));
  if (P < 3) throw domain_error("--orders must be at least 3");
  rep.series = compute_corrections(spec, P);
  rep.offset = to_real(energy_offset(rep.spec, cfg.origin.value_or(energy_origin::hamiltonian)));

  if (cfg.method != "borel") rep.mot = optimal_truncation(rep.series);
  if (cfg.method != "mot") {
    borel_config bc;
    bc.gamma = cfg.gamma ? to_real(*cfg.gamma) : default_gamma(cfg.kind);
    bc.epsilon = to_real(cfg.epsilon);
    bc.N_c = cfg.N_c.value_or(P - 1);
    bc.require_convergence = cfg.strict;
    if (cfg.r_c) {
      bc.r_c = to_real(*cfg.r_c);
    } else {
      const auto& longer = P >= estimation_orders ? rep.series : compute_corrections(spec, estimation_orders);
      rep.estimate = estimate_singularity(longer, bc.gamma);
      bc.r_c = rep.estimate->r_c;
      bc.p_exp = rep.estimate->p_exp;
    }
    rep.borel = borel_sum(rep.series, bc);
  }
  return rep;
}

inline void write_solve(std::ostream& os, const run_config& cfg, const solve_report& rep) {
  const auto& s = rep.series;
  const real E0 = s.corrections[0] + rep.offset;
  switch (cfg.format) {
    case output_format::json: {
      json out;
      out["kind"] = to_string(rep.spec.kind);
      out["g"] = to_string(rep.spec.g);
      out["n"] = rep.spec.level;
      out["precision"] = working_digits();
      out["origin"] = cfg.origin == energy_origin::well_bottom ? "well-bottom" : "hamiltonian";
      out["omega"] = to_string(s.mf.omega, 20);
      out["h0"] = to_string(s.mf.h0, 20);
      out["E0"] = to_string(E0, 20);
      json corr = json::array();
      for (const auto& e : s.corrections) corr.push_back(to_string(e, 20));
      out["corrections"] = std::move(corr);
      if (rep.mot) {
        json m;
        m["N0"] = rep.mot->order;
        m["E_MOT"] = to_string(real(rep.mot->E_tot + rep.offset), 20);
        m["error_estimate"] = to_string(rep.mot->error_estimate, 3);
        out["mot"] = std::move(m);
      }
      if (rep.borel) {
        summation_result shifted = *rep.borel;
        shifted.E_tot += rep.offset;
        out["borel"] = summation_to_json(shifted, rep.spec, 20);
      }
      if (rep.spec.kind == oscillator_kind::qdwo) out["g_c"] = to_string(critical_coupling(rep.spec.level), 10);
      os << out.dump(2) << "\n";
      break;
    }
    case output_format::csv: {
      os << "kind,g,n,E0,N0,E_MOT,gamma,r_c,N_c,delta_E,E_tot,converged\n";
      os << to_string(rep.spec.kind) << ',' << to_string(rep.spec.g) << ',' << rep.spec.level << ','
         << fixed(E0, 12) << ',';
      if (rep.mot) os << rep.mot->order << ',' << fixed(real(rep.mot->E_tot + rep.offset), 12);
      else os << ',';
      os << ',';
      if (rep.borel) {
        os << fixed(*rep.borel->gamma, 6) << ',' << fixed(*rep.borel->r_c, 6) << ',' << rep.borel->order << ','
           << fixed(rep.borel->delta_E, 12) << ',' << fixed(real(rep.borel->E_tot + rep.offset), 12) << ','
           << (rep.borel->converged ? "true" : "false");
      } else {
        os << ",,,,,";
      }
      os << "\n";
      break;
    }
    case output_format::text: {
      os << "kind " << to_string(rep.spec.kind) << "  g " << to_string(rep.spec.g) << "  n " << rep.spec.level
         << "  precision " << working_digits() << "\n";
      os << "omega " << fixed(s.mf.omega, 12) << "  h0 " << fixed(s.mf.h0, 12) << "  E0 " << fixed(E0, 12) << "\n";
      for (int p = 1; p <= std::min(s.max_order(), 12); ++p)
        os << "  E" << p << " = " << to_string(s.corrections[static_cast<std::size_t>(p)], 12) << "\n";
      if (s.max_order() > 12) os << "  ... through E" << s.max_order() << "\n";
      if (rep.mot)
        os << "MOT    N0 " << rep.mot->order << "  E_MOT " << fixed(real(rep.mot->E_tot + rep.offset), 8) << "\n";
      if (rep.estimate)
        os << "estimate  r_c " << fixed(rep.estimate->r_c, 6) << "  p " << fixed(rep.estimate->p_exp, 6)
           << "  (j=" << rep.estimate->index << ")\n";
      if (rep.borel) {
        const auto& b = *rep.borel;
        os << "Borel  gamma " << fixed(*b.gamma, 6) << "  r_c " << fixed(*b.r_c, 6) << "  N_c " << b.order
           << "  dE " << fixed(b.delta_E, 8) << "  E_tot " << fixed(real(b.E_tot + rep.offset), 8)
           << (b.converged ? "" : "  (partial sums not settled to 1e-6)") << "\n";
      }
      if (rep.spec.kind == oscillator_kind::qdwo)
        os << "g_c " << fixed(critical_coupling(rep.spec.level), 6) << "\n";
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// series

inline void run_series(std::ostream& os, const run_config& cfg) {
  const auto spec = spec_of(cfg);
  const int P = cfg.orders.value_or(10);
  const real offset = to_real(energy_offset(spec, cfg.origin.value_or(energy_origin::hamiltonian)));
  auto emit = [&](const auto& series, bool exact) {
    switch (cfg.format) {
      case output_format::json:
        os << series_to_json(series).dump() << "\n";
        break;
      case output_format::csv:
        os << "order,E\n";
        for (int p = 0; p <= series.max_order(); ++p)
          os << p << ',' << to_string(series.corrections[static_cast<std::size_t>(p)]) << "\n";
        break;
      case output_format::text:
        os << (exact ? "exact rational" : "float") << " series, " << to_string(spec.kind) << " g=" << to_string(spec.g)
           << " n=" << spec.level << "\n";
        for (int p = 0; p <= series.max_order(); ++p)
          os << "E" << p << " = " << to_string(series.corrections[static_cast<std::size_t>(p)]) << "\n";
        break;
    }
  };
  if (offset != 0 && cfg.format != output_format::text)
    throw parse_error("series dumps use the Hamiltonian origin only");
  if (admits_exact_mode(spec)) {
    emit(compute_corrections(spec, P), true);
  } else {
    emit(compute_corrections(convert_spec<real>(spec), P), false);
  }
}

// ---------------------------------------------------------------------------
// oracle

inline diagonalization_result run_oracle_value(const run_config& cfg) {
  const auto spec = spec_of(cfg);
  basis_config basis;
  basis.size = cfg.basis;
  basis.omega = cfg.basis_omega;
  return diagonalize_converged(double_spec(spec), basis, spec.level);
}

inline void run_oracle(std::ostream& os, const run_config& cfg) {
  const auto spec = spec_of(cfg);
  const auto result = run_oracle_value(cfg);
  const double energy = result.energy + to_double(energy_offset(spec, cfg.origin.value_or(energy_origin::hamiltonian)));
  switch (cfg.format) {
    case output_format::json: {
      json out;
      out["kind"] = to_string(spec.kind);
      out["g"] = to_string(spec.g);
      out["n"] = spec.level;
      out["basis"] = result.size;
      out["basis_omega"] = result.omega;
      out["energy"] = fixed(energy, 10);
      out["shift_on_doubling"] = result.shift_on_doubling;
      os << out.dump(2) << "\n";
      break;
    }
    case output_format::csv:
      os << "g,E_exact\n" << to_string(spec.g) << ',' << fixed(energy, 10) << "\n";
      break;
    case output_format::text:
      os << fixed(energy, 10) << "\n";
      break;
  }
}

// ---------------------------------------------------------------------------
// sweep

struct grid {
  double lo = 0, hi = 0;
  bool logarithmic = true;
  int count = 0;
};

inline grid parse_grid(const std::string& text) {
  grid out;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 4) throw parse_error("--g-grid must be lo:hi:log|lin:count");
  out.lo = to_double(parse_rational(parts[0]));
  out.hi = to_double(parse_rational(parts[1]));
  if (parts[2] == "log") out.logarithmic = true;
  else if (parts[2] == "lin") out.logarithmic = false;
  else throw parse_error("grid spacing must be log or lin");
  try {
    out.count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw parse_error("grid count must be an integer");
  }
  if (out.count < 1) throw parse_error("grid count must be positive");
  if (!(out.lo > 0 && out.hi >= out.lo)) throw domain_error("grid needs 0 < lo <= hi");
  return out;
}

/// Grid points as exact decimals printed to 6 significant digits, so the
/// rows do not depend on binary rounding of the spacing.
inline std::vector<rational> grid_points(const grid& gr) {
  std::vector<rational> out;
  for (int i = 0; i < gr.count; ++i) {
    const double t = gr.count == 1 ? 0.0 : static_cast<double>(i) / (gr.count - 1);
    const double g = gr.logarithmic ? gr.lo * std::pow(gr.hi / gr.lo, t) : gr.lo + (gr.hi - gr.lo) * t;
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", g);
    out.push_back(parse_rational(buffer));
  }
  return out;
}

struct sweep_row {
  rational g;
  std::optional<real> E0, E_mot, E_tot;
  std::optional<double> exact;
  std::string note;
};

inline void run_sweep(std::ostream& os, const run_config& cfg) {
  const auto points = grid_points(parse_grid(cfg.g_grid));
  const auto rows = parallel_map<sweep_row>(points.size(), [&](std::size_t i) {
    sweep_row row;
    row.g = points[i];
    run_config c = cfg;
    c.g = points[i];
    c.format = output_format::text;
    std::vector<std::string> notes;
    try {
      auto rep = solve(c);
      row.E0 = rep.series.corrections[0] + rep.offset;
      if (rep.mot) row.E_mot = rep.mot->E_tot + rep.offset;
      if (rep.borel) row.E_tot = rep.borel->E_tot + rep.offset;
    } catch (const error& e) {
      notes.push_back(e.what());
    }
    try {
      row.exact = run_oracle_value(c).energy + to_double(energy_offset(spec_of(c), c.origin.value_or(energy_origin::hamiltonian)));
    } catch (const error& e) {
      notes.push_back(e.what());
    }
    for (const auto& n : notes) row.note += (row.note.empty() ? "" : "; ") + n;
    return row;
  });

  auto cell = [](const std::optional<real>& x) { return x ? fixed(*x, 10) : std::string(); };
  if (cfg.format == output_format::json) {
    json out = json::array();
    for (const auto& r : rows) {
      json j;
      j["g"] = to_string(r.g);
      j["E0"] = cell(r.E0);
      j["E_MOT"] = cell(r.E_mot);
      j["E_tot"] = cell(r.E_tot);
      j["E_exact"] = r.exact ? fixed(*r.exact, 10) : "";
      j["note"] = r.note;
      out.push_back(std::move(j));
    }
    os << out.dump(2) << "\n";
    return;
  }
  os << "g,E0,E_MOT,E_tot,E_exact,note\n";
  for (const auto& r : rows) {
    std::string note = r.note;
    std::replace(note.begin(), note.end(), ',', ';');
    os << to_string(r.g) << ',' << cell(r.E0) << ',' << cell(r.E_mot) << ',' << cell(r.E_tot) << ','
       << (r.exact ? fixed(*r.exact, 10) : "") << ',' << note << "\n";
  }
}

// ---------------------------------------------------------------------------
// table1

struct table_row_result {
  const reference_row* row = nullptr;
  std::optional<int> N0;
  std::optional<real> E_mot, delta_E, E0, E_tot;
  std::optional<double> exact;
  std::vector<real> partial_sums;
  std::string note;
};

/// Series length for a row: enough for the Borel cutoff and for the TLM.
inline int table_orders(const reference_row& row) { return std::max(row.N_c + 1, 12); }

/// Recomputes one row with the row's own gamma, r_c and N_c and the given
/// epsilon. Energies are reported with `origin`.
inline table_row_result compute_table_row(const reference_row& row, energy_origin origin,
                                          const rational& epsilon = rational(1, 1000), bool with_oracle = true) {
  table_row_result out;
  out.row = &row;
  const auto spec = spec_of(row);
  const real offset = to_real(energy_offset(spec, origin));
  std::vector<std::string> notes;
  try {
    const auto series = compute_corrections(convert_spec<real>(spec), table_orders(row));
    out.E0 = series.corrections[0] + offset;
    const auto mot = optimal_truncation(series);
    out.N0 = mot.order;
    out.E_mot = mot.E_tot + offset;
    borel_config bc;
    bc.gamma = to_real(parse_rational(row.gamma));
    bc.r_c = to_real(parse_rational(row.r_c));
    bc.N_c = row.N_c;
    bc.epsilon = to_real(epsilon);
    const auto borel = borel_sum(series, bc);
    out.delta_E = borel.delta_E;
    out.E_tot = borel.E_tot + offset;
    out.partial_sums = borel.partial_sums;
  } catch (const error& e) {
    notes.push_back(e.what());
  }
  if (with_oracle) {
    try {
      out.exact = diagonalize_converged(double_spec(spec), basis_config{}, 0).energy + to_double(offset);
    } catch (const error& e) {
      notes.push_back(e.what());
    }
  }
  for (const auto& n : notes) out.note += (out.note.empty() ? "" : "; ") + n;
  return out;
}

inline std::vector<table_row_result> compute_table(energy_origin origin, const rational& epsilon = rational(1, 1000),
                                                   bool with_oracle = true) {
  return parallel_map<table_row_result>(reference_rows.size(), [&](std::size_t i) {
    return compute_table_row(reference_rows[i], origin, epsilon, with_oracle);
  });
}

/// Tolerance flags, in the row's printed units.
struct row_flags {
  bool N0 = false, E_mot = false, delta_E = false, E0 = false, E_tot_vs_exact = false, E_tot_vs_printed = false,
       exact = false;
};

inline row_flags check_row(const table_row_result& r) {
  row_flags f;
  const auto& row = *r.row;
  if (r.N0) f.N0 = std::abs(*r.N0 - row.N0) <= 1;
  if (r.E_mot) f.E_mot = last_digit_deviation(*r.E_mot, row.E_mot) <= 1 + 1e-9;
  if (r.delta_E) f.delta_E = last_digit_deviation(*r.delta_E, row.delta_E) <= 2 + 1e-9;
  if (r.E0) f.E0 = last_digit_deviation(*r.E0, row.E0) <= 1 + 1e-9;
  if (r.E_tot && r.exact) f.E_tot_vs_exact = std::abs(to_double(*r.E_tot) / *r.exact - 1) < 5e-4;
  if (r.E_tot) f.E_tot_vs_printed = last_digit_deviation(*r.E_tot, row.E_tot) <= 1 + 1e-9;
  if (r.exact) f.exact = last_digit_deviation(real(*r.exact), row.exact) <= 1 + 1e-9;
  return f;
}

inline void run_table1(std::ostream& os, const run_config& cfg) {
  const auto origin = cfg.origin.value_or(energy_origin::well_bottom);
  const auto rows = compute_table(origin, cfg.epsilon);
  auto opt = [](const std::optional<real>& x, int places) { return x ? fixed(*x, places) : std::string("-"); };
  auto percent = [](const std::optional<real>& x, const std::optional<double>& exact) {
    if (!x || !exact) return std::string("-");
    return fixed(100 * std::abs(to_double(*x) / *exact - 1), 4);
  };
  auto mark = [](bool ok) { return ok ? "ok" : "DEV"; };

  if (cfg.format == output_format::json) {
    json out = json::array();
    for (const auto& r : rows) {
      const auto& row = *r.row;
      const auto f = check_row(r);
      json j;
      j["kind"] = to_string(row.kind);
      j["g"] = std::string(row.g);
      j["gamma"] = std::string(row.gamma);
      auto pair = [&](const char* name, const std::string& computed, std::string_view printed, bool ok) {
        j[name] = {{"computed", computed}, {"printed", std::string(printed)}, {"flag", mark(ok)}};
      };
      pair("N0", r.N0 ? std::to_string(*r.N0) : "-", std::to_string(row.N0), f.N0);
      pair("E_MOT", opt(r.E_mot, 6), row.E_mot, f.E_mot);
      j["Er_MOT"] = {{"computed", percent(r.E_mot, r.exact)}, {"printed", std::string(row.er_mot)}};
      j["r_c"] = std::string(row.r_c);
      j["N_c"] = row.N_c;
      pair("delta_E", opt(r.delta_E, 7), row.delta_E, f.delta_E);
      pair("E0", opt(r.E0, 6), row.E0, f.E0);
      pair("E_tot", opt(r.E_tot, 6), row.E_tot, f.E_tot_vs_printed);
      pair("Exact", r.exact ? fixed(*r.exact, 6) : "-", row.exact, f.exact);
      j["Er_tot"] = {{"computed", percent(r.E_tot, r.exact)}, {"printed", std::string(row.er_tot)},
                     {"flag", mark(f.E_tot_vs_exact)}};
      j["note"] = r.note;
      out.push_back(std::move(j));
    }
    os << out.dump(2) << "\n";
    return;
  }

  if (cfg.format == output_format::csv) {
    os << "kind,g,N0,E_MOT,Er_MOT,r_c,N_c,delta_E,E0,E_tot,Exact,Er_tot,"
          "printed_N0,printed_E_MOT,printed_Er_MOT,printed_delta_E,printed_E0,printed_E_tot,printed_Exact,printed_Er_tot,"
          "flag_N0,flag_E_MOT,flag_delta_E,flag_E0,flag_E_tot,flag_Er_tot,flag_Exact,note\n";
    for (const auto& r : rows) {
      const auto& row = *r.row;
      const auto f = check_row(r);
      std::string note = r.note;
      std::replace(note.begin(), note.end(), ',', ';');
      os << to_string(row.kind) << ',' << row.g << ',' << (r.N0 ? std::to_string(*r.N0) : "-") << ','
         << opt(r.E_mot, 6) << ',' << percent(r.E_mot, r.exact) << ',' << row.r_c << ',' << row.N_c << ','
         << opt(r.delta_E, 7) << ',' << opt(r.E0, 6) << ',' << opt(r.E_tot, 6) << ','
         << (r.exact ? fixed(*r.exact, 6) : "-") << ',' << percent(r.E_tot, r.exact) << ',' << row.N0 << ','
         << row.E_mot << ',' << row.er_mot << ',' << row.delta_E << ',' << row.E0 << ',' << row.E_tot << ','
         << row.exact << ',' << row.er_tot << ',' << mark(f.N0) << ',' << mark(f.E_mot) << ','
         << mark(f.delta_E) << ',' << mark(f.E0) << ',' << mark(f.E_tot_vs_printed) << ','
         << mark(f.E_tot_vs_exact) << ',' << mark(f.exact) << ',' << note << "\n";
    }
    return;
  }

  os << "origin " << (origin == energy_origin::well_bottom ? "well-bottom" : "hamiltonian") << ", eps "
     << to_string(cfg.epsilon) << ", precision " << working_digits() << "\n";
  os << "kind  g      gamma   N0      E_MOT            r_c    N_c  dE                   E0               E_tot"
        "            Exact            Er%\n";
  for (const auto& r : rows) {
    const auto& row = *r.row;
    const auto f = check_row(r);
    char line[512];
    std::snprintf(line, sizeof line, "%-5s %-6s %-7s %d/%d%-3s %s/%s%-3s %-6s %-4d %s/%s%-3s %s/%s%-3s %s/%s%-3s %s/%s%-3s %s%s\n",
                  to_string(row.kind), std::string(row.g).c_str(), std::string(row.gamma).c_str(), r.N0.value_or(-1),
                  row.N0, f.N0 ? "" : " !", opt(r.E_mot, 4).c_str(), std::string(row.E_mot).c_str(),
                  f.E_mot ? "" : " !", std::string(row.r_c).c_str(), row.N_c, opt(r.delta_E, 5).c_str(),
                  std::string(row.delta_E).c_str(), f.delta_E ? "" : " !", opt(r.E0, 4).c_str(),
                  std::string(row.E0).c_str(), f.E0 ? "" : " !", opt(r.E_tot, 4).c_str(),
                  std::string(row.E_tot).c_str(), f.E_tot_vs_printed ? "" : " !",
                  r.exact ? fixed(*r.exact, 4).c_str() : "-", std::string(row.exact).c_str(), f.exact ? "" : " !",
                  percent(r.E_tot, r.exact).c_str(), f.E_tot_vs_exact ? "" : " !");
    os << line;
    if (!r.note.empty()) os << "      note: " << r.note << "\n";
  }
  os << "computed/printed; ! marks a cell outside tolerance\n";
}

}  // namespace mfpt::cli
