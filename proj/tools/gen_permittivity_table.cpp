/**
 * Write the built-in fused-silica permittivity to a two-column text table
 * (photon energy in eV, eps at imaginary frequency), log-spaced in energy.
 * The output is accepted by `--substrate table:PATH` and round-trips the
 * built-in model to interpolation accuracy.
 */

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cpforce/materials.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a permittivity table for the built-in SiO2 model"};
  double min_ev = 1e-4;
  double max_ev = 200.0;
  int points = 400;
  std::string out_path;
  app.add_option("--min-ev", min_ev, "Lowest photon energy, eV")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-ev", max_ev, "Highest photon energy, eV")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--points", points, "Number of log-spaced rows")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  app.add_option("--out", out_path, "Output file (default: stdout)");
  CLI11_PARSE(app, argc, argv);

  if (!(max_ev > min_ev)) {
    std::cerr << "error: --max-ev must exceed --min-ev\n";
    return 2;
  }

  const cpforce::SubstrateModel sio2 = cpforce::SubstrateModel::builtin_sio2();
  std::string content;
  content += "# fused-silica permittivity at imaginary frequencies\n";
  content += "# photon_energy_ev  eps\n";
  char buf[64];
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    const double energy = min_ev * std::pow(max_ev / min_ev, t);
    std::snprintf(buf, sizeof(buf), "%.12e %.12e\n", energy, sio2.epsilon_at(energy));
    content += buf;
  }

  if (out_path.empty()) {
    std::cout << content;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open '" << out_path << "'\n";
      return 4;
    }
    out << content;
    if (!out.flush()) {
      std::cerr << "error: failed while writing '" << out_path << "'\n";
      return 4;
    }
  }
  return 0;
}
