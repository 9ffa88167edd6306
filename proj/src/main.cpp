/**
 * cpforce -- Casimir-Polder force between a polarizable particle and a plane:
 * an ideal metal, a bare dielectric substrate, a freestanding graphene sheet,
 * or graphene on a substrate, at finite temperature in the large-separation
 * regime.
 *
 * Subcommands: compute (one point), sweep (one axis), figure (preset result
 * tables), crossover (threshold separations).  Output is deterministic CSV.
 *
 * Exit codes: 0 success, 2 flag/usage errors, 3 numerical failures,
 * 4 file errors.
 */

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpforce/force_engine.hpp"
#include "cpforce/graphene_response.hpp"
#include "cpforce/materials.hpp"
#include "cpforce/quadrature.hpp"
#include "cpforce/run_record.hpp"

namespace {

using namespace cpforce;

class FileError : public std::runtime_error {
 public:
  explicit FileError(const std::string& what) : std::runtime_error(what) {}
};

struct CommonFlags {
  double a_um = 5.6;
  double temp_k = 300.0;
  double delta_ev = 0.0;
  double mu_ev = 0.0;
  std::string substrate = "sio2";
  double alpha0_cm3 = 1.0;
  std::string mode = "full";
  double rel_tol = 1e-8;
  bool bare = false;
  std::string out_path;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool with_separation) {
  if (with_separation) {
    cmd->add_option("--a-um", f.a_um, "Separation in micrometers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  cmd->add_option("--temp-k", f.temp_k, "Temperature in kelvin")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--delta-ev", f.delta_ev, "Graphene energy gap in eV")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--mu-ev", f.mu_ev, "Graphene chemical potential in eV")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--substrate", f.substrate,
                  "Substrate: sio2 | vacuum | ideal-metal | table:PATH")
      ->capture_default_str();
  cmd->add_option("--alpha0-cm3", f.alpha0_cm3, "Static polarizability in cm^3")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--mode", f.mode, "Force mode: full | l0 | asymptotic | classical")
      ->capture_default_str();
  cmd->add_option("--rel-tol", f.rel_tol, "Relative tolerance of the adaptive integrals")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--bare", f.bare, "Drop the graphene sheet (bare substrate)");
  cmd->add_option("--out", f.out_path, "Output file (default: stdout)");
}

SubstrateModel make_substrate(const std::string& tag) {
  if (tag == "sio2") return SubstrateModel::builtin_sio2();
  if (tag == "vacuum") return SubstrateModel::vacuum();
  if (tag == "ideal-metal") return SubstrateModel::ideal_metal();
  if (tag.rfind("table:", 0) == 0) return load_permittivity_table(tag.substr(6));
  throw std::invalid_argument("unknown substrate '" + tag +
                              "' (expected sio2 | vacuum | ideal-metal | table:PATH)");
}

Scenario make_scenario(const CommonFlags& f) {
  Scenario s;
  s.separation_a = f.a_um * 1e-6;
  s.temperature_t = f.temp_k;
  s.particle.alpha0 = f.alpha0_cm3;
  return s;
}

NumericsConfig make_config(const CommonFlags& f) {
  NumericsConfig cfg;
  cfg.rel_tol = f.rel_tol;
  return cfg;
}

/** Evaluate one parameter point into a run record. */
RunRecord evaluate_record(const CommonFlags& f, const SubstrateModel& substrate) {
  const Scenario s = make_scenario(f);
  const NumericsConfig cfg = make_config(f);
  std::optional<GrapheneParams> graphene;
  if (!f.bare) graphene = GrapheneParams{f.delta_ev, f.mu_ev};

  const ForceMode mode = force_mode_from_string(f.mode);
  ForceResult r;
  switch (mode) {
    case ForceMode::full:
      r = force_full(s, graphene, substrate, cfg);
      break;
    case ForceMode::l0_only:
      r = force_l0(s, graphene, substrate, cfg);
      break;
    case ForceMode::asymptotic:
      if (!graphene) {
        throw std::invalid_argument("--mode asymptotic requires a graphene coating");
      }
      r = force_asymptotic(s, *graphene);
      break;
    case ForceMode::classical: {
      const double force = force_ideal_metal_classical(s);
      r.mode = ForceMode::classical;
      r.total = r.l0_term = force;
      r.tail_l_ge_1 = 0.0;
      r.dimensionless_total = r.dimensionless_l0 = 6.0;
      r.terms_dimensionless = {6.0};
      break;
    }
  }

  // Reference quantities: deviation from the classical ideal-metal force and
  // the enhancement over the uncoated substrate.
  double s_l0_bare;
  switch (substrate.variant()) {
    case SubstrateModel::Variant::ideal_metal:
      s_l0_bare = 6.0;
      break;
    case SubstrateModel::Variant::vacuum:
      s_l0_bare = 0.0;
      break;
    default:
      s_l0_bare = force_l0(s, std::nullopt, substrate, cfg).dimensionless_l0;
      break;
  }

  RunRecord rec;
  rec.a_um = f.a_um;
  rec.temp_k = f.temp_k;
  rec.delta_ev = f.delta_ev;
  rec.mu_ev = f.mu_ev;
  rec.substrate = f.substrate;
  rec.alpha0_cm3 = f.alpha0_cm3;
  rec.mode = to_string(mode);
  rec.rel_tol = f.rel_tol;
  rec.bare = f.bare;
  rec.force_total_n = r.total;
  rec.force_l0_n = r.l0_term;
  rec.force_tail_n = r.tail_l_ge_1;
  rec.s_total = r.dimensionless_total;
  rec.s_l0 = r.dimensionless_l0;
  rec.delta_vs_ideal = r.dimensionless_l0 / 6.0 - 1.0;
  rec.ratio_vs_bare =
      (s_l0_bare > 0.0) ? r.dimensionless_l0 / s_l0_bare : std::nan("");
  rec.l_max_used = r.l_max_used;
  rec.quad_error_n = r.quad_error_estimate;
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
  return rec;
}

/** Write `content` to f.out_path (or stdout); no partial files on failure. */
void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot open output file '" + path + "'");
  out << content;
  out.flush();
  if (!out) {
    out.close();
    std::remove(path.c_str());
    throw FileError("failed while writing output file '" + path + "'");
  }
}

std::string common_invocation(const std::string& cmd, const CommonFlags& f,
                              bool with_separation) {
  std::string inv = cmd;
  if (with_separation) inv += " --a-um " + format_double(f.a_um);
  inv += " --temp-k " + format_double(f.temp_k);
  inv += " --delta-ev " + format_double(f.delta_ev);
  inv += " --mu-ev " + format_double(f.mu_ev);
  inv += " --substrate " + f.substrate;
  inv += " --alpha0-cm3 " + format_double(f.alpha0_cm3);
  inv += " --mode " + f.mode;
  inv += " --rel-tol " + format_double(f.rel_tol);
  if (f.bare) inv += " --bare";
  return inv;
}

std::vector<double> make_grid(double start, double stop, int count, bool log_spacing) {
  if (count < 2) throw std::invalid_argument("grid needs at least two points");
  if (!(stop > start)) throw std::invalid_argument("grid needs stop > start");
  if (log_spacing && !(start > 0.0)) {
    throw std::invalid_argument("log spacing needs start > 0");
  }
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    g[i] = log_spacing ? start * std::pow(stop / start, t)
                       : start + (stop - start) * t;
  }
  g.front() = start;
  g.back() = stop;
  return g;
}

// ---------------------------------------------------------------------------
// compute

int cmd_compute(const CommonFlags& f) {
  const SubstrateModel substrate = make_substrate(f.substrate);
  const RunRecord rec = evaluate_record(f, substrate);
  write_output(f.out_path, render_csv(common_invocation("compute", f, true), {rec}));
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepFlags {
  std::string axis = "separation";
  double start = 0.0;
  double stop = 0.0;
  int count = 2;
  std::string spacing = "linear";
};

int cmd_sweep(const CommonFlags& f, const SweepFlags& sw) {
  const SubstrateModel substrate = make_substrate(f.substrate);
  const bool log_spacing = [&] {
    if (sw.spacing == "log") return true;
    if (sw.spacing == "linear") return false;
    throw std::invalid_argument("unknown spacing '" + sw.spacing +
                                "' (expected linear | log)");
  }();
  if (sw.axis != "separation" && sw.axis != "delta" && sw.axis != "mu") {
    throw std::invalid_argument("unknown sweep axis '" + sw.axis +
                                "' (expected separation | delta | mu)");
  }

  const std::vector<double> grid = make_grid(sw.start, sw.stop, sw.count, log_spacing);
  std::vector<RunRecord> rows;
  rows.reserve(grid.size());
  for (const double x : grid) {
    CommonFlags point = f;
    if (sw.axis == "separation") {
      point.a_um = x;
    } else if (sw.axis == "delta") {
      point.delta_ev = x;
    } else {
      point.mu_ev = x;
    }
    rows.push_back(evaluate_record(point, substrate));
  }

  std::string inv = common_invocation("sweep", f, sw.axis != "separation");
  inv += " --axis " + sw.axis;
  inv += " --start " + format_double(sw.start);
  inv += " --stop " + format_double(sw.stop);
  inv += " --count " + std::to_string(sw.count);
  inv += " --spacing " + sw.spacing;
  write_output(f.out_path, render_csv(inv, rows));
  return 0;
}

// ---------------------------------------------------------------------------
// figure presets

std::string mu_label(double mu) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.3f", mu);
  return buf;
}

std::string render_table(const std::string& invocation,
                         const std::vector<std::string>& comments,
                         const std::string& header,
                         const std::vector<std::vector<double>>& rows) {
  std::string out = csv_metadata(invocation);
  for (const std::string& c : comments) out += "# " + c + "\n";
  out += header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

/** Static-term enhancement over the bare substrate as a function of the gap. */
std::string figure_ratio_vs_gap(const std::string& name, const std::vector<double>& mus) {
  const double a_um = 6.0;
  CommonFlags f;
  f.a_um = a_um;
  const Scenario s = make_scenario(f);
  const NumericsConfig cfg;
  const SubstrateModel substrate = SubstrateModel::builtin_sio2();

  const double s_bare = force_l0(s, std::nullopt, substrate, cfg).dimensionless_l0;
  const double ratio_ideal = 6.0 / s_bare;

  std::string header = "delta_ev";
  for (const double mu : mus) header += ",ratio_sub_mu_" + mu_label(mu);
  header += ",ratio_ideal_metal";

  std::vector<std::vector<double>> rows;
  for (const double delta : make_grid(0.0, 0.5, 51, false)) {
    std::vector<double> row = {delta};
    for (const double mu : mus) {
      const double s_coated =
          force_l0(s, GrapheneParams{delta, mu}, substrate, cfg).dimensionless_l0;
      row.push_back(s_coated / s_bare);
    }
    row.push_back(ratio_ideal);
    rows.push_back(std::move(row));
  }
  return render_table("figure " + name, {"a_um = " + format_double(a_um),
                      "temp_k = 3.00000000e+02", "substrate = sio2"},
                      header, rows);
}

/** Deviation of the static term from the ideal-metal force vs separation. */
std::string figure_delta_vs_separation(const std::string& name, double delta,
                                       double a_lo, double a_hi, int count,
                                       const std::vector<double>& mus) {
  const NumericsConfig cfg;
  const SubstrateModel substrate = SubstrateModel::builtin_sio2();

  std::string header = "a_um";
  for (const double mu : mus) header += ",delta_f_mu_" + mu_label(mu);

  std::vector<std::vector<double>> rows;
  for (const double a_um : make_grid(a_lo, a_hi, count, true)) {
    CommonFlags f;
    f.a_um = a_um;
    const Scenario s = make_scenario(f);
    std::vector<double> row = {a_um};
    for (const double mu : mus) {
      row.push_back(delta_vs_ideal(s, GrapheneParams{delta, mu}, substrate, cfg));
    }
    rows.push_back(std::move(row));
  }
  return render_table("figure " + name,
                      {"delta_ev = " + format_double(delta),
                       "temp_k = 3.00000000e+02", "substrate = sio2"},
                      header, rows);
}

/** Ratio of the numeric static term to its closed form vs separation. */
std::string figure_asym_ratio(const std::string& name, const std::vector<double>& deltas,
                              const std::vector<double>& mus, double a_lo, double a_hi,
                              int count, bool include_freestanding) {
  const NumericsConfig cfg;
  const SubstrateModel substrate = SubstrateModel::builtin_sio2();
  const SubstrateModel freestanding = SubstrateModel::vacuum();

  std::string header = "a_um";
  for (const double delta : deltas) {
    for (const double mu : mus) {
      const std::string suffix = "_d_" + mu_label(delta) + "_mu_" + mu_label(mu);
      header += ",ratio_sub" + suffix;
      if (include_freestanding) header += ",ratio_free" + suffix;
    }
  }

  std::vector<std::vector<double>> rows;
  for (const double a_um : make_grid(a_lo, a_hi, count, true)) {
    CommonFlags f;
    f.a_um = a_um;
    const Scenario s = make_scenario(f);
    std::vector<double> row = {a_um};
    for (const double delta : deltas) {
      for (const double mu : mus) {
        const GrapheneParams g{delta, mu};
        const double closed = force_asymptotic(s, g).dimensionless_total;
        row.push_back(force_l0(s, g, substrate, cfg).dimensionless_l0 / closed);
        if (include_freestanding) {
          row.push_back(force_l0(s, g, freestanding, cfg).dimensionless_l0 / closed);
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return render_table("figure " + name, {"temp_k = 3.00000000e+02", "substrate = sio2"},
                      header, rows);
}

int cmd_figure(const std::string& name, const std::string& out_path) {
  std::string content;
  if (name == "fig1a") {
    content = figure_ratio_vs_gap(name, {0.0, 0.05, 0.10, 0.15});
  } else if (name == "fig1b") {
    content = figure_ratio_vs_gap(name, {0.15, 0.20, 0.25});
  } else if (name == "fig2") {
    content = figure_delta_vs_separation(name, 0.2, 5.6, 60.0, 60,
                                         {0.0, 0.025, 0.05, 0.075, 0.1});
  } else if (name == "fig3a") {
    content = figure_delta_vs_separation(name, 0.3, 5.6, 60.0, 60,
                                         {0.0, 0.025, 0.05, 0.075, 0.1});
  } else if (name == "fig3b") {
    content = figure_delta_vs_separation(name, 0.3, 60.0, 200.0, 40,
                                         {0.0, 0.025, 0.05, 0.075});
  } else if (name == "fig4") {
    content = figure_asym_ratio(name, {0.15, 0.2}, {0.0}, 5.6, 40.0, 50, true);
  } else if (name == "fig5") {
    content = figure_asym_ratio(name, {0.2}, {0.025, 0.05, 0.075}, 5.6, 60.0, 50, true);
  } else if (name == "fig6a") {
    content = figure_asym_ratio(name, {0.3}, {0.0, 0.025, 0.05, 0.075, 0.1}, 5.6, 100.0,
                                50, false);
  } else if (name == "fig6b") {
    content = figure_asym_ratio(name, {0.3}, {0.15, 0.20, 0.25}, 5.6, 30.0, 40, false);
  } else {
    throw std::invalid_argument(
        "unknown figure '" + name +
        "' (expected fig1a|fig1b|fig2|fig3a|fig3b|fig4|fig5|fig6a|fig6b)");
  }
  write_output(out_path, content);
  return 0;
}

// ---------------------------------------------------------------------------
// crossover

struct CrossoverFlags {
  std::string quantity = "delta-vs-ideal";
  double threshold = 0.01;
  double a_low_um = 1.0;
  double a_high_um = 1000.0;
  std::vector<double> mu_values;
};

int cmd_crossover(const CommonFlags& f, const CrossoverFlags& cf) {
  const SubstrateModel substrate = make_substrate(f.substrate);
  const NumericsConfig cfg = make_config(f);
  const Scenario s = make_scenario(f);

  CrossoverQuery query;
  query.quantity = crossover_quantity_from_string(cf.quantity);
  query.threshold = cf.threshold;
  query.a_low = cf.a_low_um * 1e-6;
  query.a_high = cf.a_high_um * 1e-6;

  std::vector<double> mus = cf.mu_values;
  if (mus.empty()) mus.push_back(f.mu_ev);

  std::string inv = "crossover --quantity " + cf.quantity;
  inv += " --threshold " + format_double(cf.threshold);
  inv += " --a-low-um " + format_double(cf.a_low_um);
  inv += " --a-high-um " + format_double(cf.a_high_um);
  inv += " --delta-ev " + format_double(f.delta_ev);
  for (const double mu : mus) inv += " --mu-ev " + format_double(mu);
  inv += " --substrate " + f.substrate;
  inv += " --temp-k " + format_double(f.temp_k);
  if (f.bare) inv += " --bare";

  std::string content = csv_metadata(inv);
  content += "quantity,threshold,delta_ev,mu_ev,crossover_um,status,value_at_low,value_at_high\n";
  for (const double mu : mus) {
    std::optional<GrapheneParams> graphene;
    if (!f.bare) graphene = GrapheneParams{f.delta_ev, mu};
    std::string status;
    double crossover_um = std::nan("");
    double value_low = std::nan("");
    double value_high = std::nan("");
    try {
      const CrossoverResult r = find_crossover(query, s, graphene, substrate, cfg);
      status = to_string(r.status);
      crossover_um = r.separation_a * 1e6;
      value_low = r.value_at_low;
      value_high = r.value_at_high;
    } catch (const NoStraddleError& e) {
      status = "no-straddle";
      value_low = e.value_at_low;
      value_high = e.value_at_high;
    }
    content += cf.quantity + "," + format_double(cf.threshold) + "," +
               format_double(f.delta_ev) + "," + format_double(mu) + "," +
               format_double(crossover_um) + "," + status + "," +
               format_double(value_low) + "," + format_double(value_high) + "\n";
  }
  write_output(f.out_path, content);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Casimir-Polder force between a polarizable particle and a planar structure\n"
      "(graphene-coated substrate, bare substrate, freestanding graphene, or ideal\n"
      "metal) from the finite-temperature Matsubara sum."};
  app.require_subcommand(1);

  CommonFlags compute_flags;
  CLI::App* compute = app.add_subcommand("compute", "Force at a single parameter point");
  add_common_flags(compute, compute_flags, true);

  CommonFlags sweep_common;
  SweepFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "Force along one parameter axis");
  add_common_flags(sweep, sweep_common, true);
  sweep->add_option("--axis", sweep_flags.axis, "Sweep axis: separation | delta | mu")
      ->capture_default_str();
  sweep->add_option("--start", sweep_flags.start, "Axis start (um for separation, eV otherwise)")
      ->required();
  sweep->add_option("--stop", sweep_flags.stop, "Axis stop")->required();
  sweep->add_option("--count", sweep_flags.count, "Number of grid points (>= 2)")
      ->required()
      ->check(CLI::Range(2, 100000));
  sweep->add_option("--spacing", sweep_flags.spacing, "Grid spacing: linear | log")
      ->capture_default_str();

  std::string figure_name;
  std::string figure_out;
  CLI::App* figure = app.add_subcommand("figure", "Preset result tables");
  figure->add_option("name", figure_name,
                     "Preset: fig1a fig1b fig2 fig3a fig3b fig4 fig5 fig6a fig6b")
      ->required();
  figure->add_option("--out", figure_out, "Output file (default: stdout)");

  CommonFlags crossover_common;
  CrossoverFlags crossover_flags;
  CLI::App* crossover =
      app.add_subcommand("crossover", "Separation where a deviation crosses a threshold");
  add_common_flags(crossover, crossover_common, false);
  crossover->add_option("--quantity", crossover_flags.quantity,
                        "delta-vs-ideal | asym-vs-numeric | l0-vs-full")
      ->capture_default_str();
  crossover->add_option("--threshold", crossover_flags.threshold, "Crossing threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  crossover->add_option("--a-low-um", crossover_flags.a_low_um, "Bracket lower edge, um")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  crossover->add_option("--a-high-um", crossover_flags.a_high_um, "Bracket upper edge, um")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  crossover
      ->add_option("--mu-list-ev", crossover_flags.mu_values,
                   "Chemical potentials in eV (repeatable; defaults to --mu-ev)")
      ->expected(-1);

  compute->callback([&] { cmd_compute(compute_flags); });
  sweep->callback([&] { cmd_sweep(sweep_common, sweep_flags); });
  figure->callback([&] { cmd_figure(figure_name, figure_out); });
  crossover->callback([&] { cmd_crossover(crossover_common, crossover_flags); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const TableFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const QuadratureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
