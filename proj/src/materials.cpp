#include "cpforce/materials.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cpforce/kinematics.hpp"

namespace cpforce {

namespace {

// Fused-silica oscillator parameters: one infrared and one ultraviolet
// resonance, giving eps(0) = 1 + 1.703 + 1.098 = 3.801.
constexpr double SIO2_C_IR = 1.703;
constexpr double SIO2_OMEGA_IR = 1.88e14;  // rad/s
constexpr double SIO2_C_UV = 1.098;
constexpr double SIO2_OMEGA_UV = 2.033e16;  // rad/s

void check_rows(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 2) {
    throw TableFormatError("permittivity table needs at least two rows");
  }
  double prev_energy = 0.0;
  double prev_eps = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [energy, eps] = rows[i];
    if (!(energy > 0.0) || !std::isfinite(energy)) {
      throw TableFormatError("permittivity table row " + std::to_string(i + 1) +
                             ": photon energy must be finite and > 0");
    }
    if (i > 0 && !(energy > prev_energy)) {
      throw TableFormatError("permittivity table row " + std::to_string(i + 1) +
                             ": photon energies must be strictly increasing");
    }
    if (!(eps >= 1.0) || !std::isfinite(eps)) {
      throw TableFormatError("permittivity table row " + std::to_string(i + 1) +
                             ": eps must be finite and >= 1");
    }
    if (!(eps <= prev_eps)) {
      throw TableFormatError("permittivity table row " + std::to_string(i + 1) +
                             ": eps must be nonincreasing along the imaginary axis");
    }
    prev_energy = energy;
    prev_eps = eps;
  }
}

}  // namespace

SubstrateModel SubstrateModel::ideal_metal() {
  SubstrateModel m;
  m.variant_ = Variant::ideal_metal;
  m.tag_ = "ideal-metal";
  return m;
}

SubstrateModel SubstrateModel::vacuum() {
  SubstrateModel m;
  m.variant_ = Variant::vacuum;
  m.tag_ = "vacuum";
  return m;
}

SubstrateModel SubstrateModel::oscillator(std::vector<OscillatorTerm> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("SubstrateModel::oscillator: need at least one term");
  }
  for (const auto& t : terms) {
    if (!(t.strength > 0.0) || !(t.omega > 0.0)) {
      throw std::invalid_argument(
          "SubstrateModel::oscillator: strengths and frequencies must be > 0");
    }
  }
  SubstrateModel m;
  m.variant_ = Variant::oscillator;
  m.tag_ = "oscillator";
  m.terms_ = std::move(terms);
  return m;
}

SubstrateModel SubstrateModel::tabulated(std::vector<std::pair<double, double>> rows) {
  check_rows(rows);
  SubstrateModel m;
  m.variant_ = Variant::tabulated;
  m.tag_ = "table";
  m.rows_ = std::move(rows);
  std::vector<double> log_energy;
  std::vector<double> eps;
  log_energy.reserve(m.rows_.size());
  eps.reserve(m.rows_.size());
  for (const auto& [energy, value] : m.rows_) {
    log_energy.push_back(std::log(energy));
    eps.push_back(value);
  }
  m.log_energy_interp_ = MonotoneCubic(std::move(log_energy), std::move(eps));
  return m;
}

SubstrateModel SubstrateModel::builtin_sio2() {
  SubstrateModel m = oscillator({{SIO2_C_IR, SIO2_OMEGA_IR}, {SIO2_C_UV, SIO2_OMEGA_UV}});
  m.tag_ = "sio2";
  return m;
}

double SubstrateModel::epsilon_at(double photon_energy_ev) const {
  if (!(photon_energy_ev >= 0.0) || !std::isfinite(photon_energy_ev)) {
    throw std::invalid_argument("epsilon_at: photon energy must be finite and >= 0");
  }
  switch (variant_) {
    case Variant::ideal_metal:
      throw std::invalid_argument(
          "epsilon_at: the ideal metal has no finite permittivity; its reflection "
          "coefficients are exact constants");
    case Variant::vacuum:
      return 1.0;
    case Variant::oscillator: {
      double eps = 1.0;
      for (const auto& t : terms_) {
        const double resonance_ev = HBAR_EV_S * t.omega;
        const double r2 = resonance_ev * resonance_ev;
        eps += t.strength * r2 / (r2 + photon_energy_ev * photon_energy_ev);
      }
      return eps;
    }
    case Variant::tabulated:
      if (photon_energy_ev <= rows_.front().first) return rows_.front().second;
      if (photon_energy_ev >= rows_.back().first) return rows_.back().second;
      return log_energy_interp_(std::log(photon_energy_ev));
  }
  throw std::logic_error("epsilon_at: unknown variant");
}

double SubstrateModel::static_permittivity() const { return epsilon_at(0.0); }

PermittivityValue permittivity(const SubstrateModel& model, int l, const Scenario& s) {
  if (l < 0) throw std::invalid_argument("permittivity: l must be >= 0");
  validate(s);
  if (model.variant() == SubstrateModel::Variant::ideal_metal) {
    return {true, 0.0};
  }
  // hbar*xi_l = 2 pi k_B T l, equivalently zeta_l * hbar c / (2 a).
  const double photon_energy_ev =
      matsubara_zeta(l, s) * HBARC_EV_UM / (2.0 * separation_um(s));
  return {false, model.epsilon_at(photon_energy_ev)};
}

SubstrateModel load_permittivity_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw TableFormatError("cannot open permittivity table '" + path + "'");
  }
  std::vector<std::pair<double, double>> rows;
  std::string line;
  int line_number = 0;
  std::vector<int> row_lines;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n\f\v") == std::string::npos) {
      continue;  // blank or comment-only line
    }
    std::istringstream fields(line);
    double energy = 0.0;
    double eps = 0.0;
    if (!(fields >> energy)) {
      throw TableFormatError(path + ":" + std::to_string(line_number) +
                             ": expected a numeric photon energy in column 1");
    }
    if (!(fields >> eps)) {
      throw TableFormatError(path + ":" + std::to_string(line_number) +
                             ": expected two columns (photon energy eV, eps)");
    }
    std::string extra;
    if (fields >> extra) {
      throw TableFormatError(path + ":" + std::to_string(line_number) +
                             ": expected exactly two columns, got extra field '" + extra +
                             "'");
    }
    rows.emplace_back(energy, eps);
    row_lines.push_back(line_number);
  }
  try {
    SubstrateModel m = SubstrateModel::tabulated(std::move(rows));
    m.set_tag("table:" + path);
    return m;
  } catch (const TableFormatError& err) {
    // Re-map "row N" diagnostics onto source line numbers.
    const std::string what = err.what();
    const std::string marker = "row ";
    const auto pos = what.find(marker);
    if (pos != std::string::npos) {
      std::size_t idx = pos + marker.size();
      std::size_t end = idx;
      while (end < what.size() && std::isdigit(static_cast<unsigned char>(what[end]))) ++end;
      if (end > idx) {
        const int row = std::stoi(what.substr(idx, end - idx));
        if (row >= 1 && static_cast<std::size_t>(row) <= row_lines.size()) {
          // The remainder already starts with ": ", completing "path:N: ...".
          throw TableFormatError(path + ":" + std::to_string(row_lines[row - 1]) +
                                 what.substr(end));
        }
      }
    }
    throw TableFormatError(path + ": " + what);
  }
}

}  // namespace cpforce
