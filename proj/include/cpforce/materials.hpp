#pragma once

/**
 * Substrate dielectric models evaluated along the imaginary frequency axis.
 *
 * Supported variants: an ideal metal (handled symbolically -- its reflection
 * coefficients are exact constants, never a large float), vacuum (eps = 1),
 * a sum of undamped oscillators eps(i xi) = 1 + sum_j C_j w_j^2/(w_j^2 + xi^2),
 * and a tabulated model interpolated monotonically in log photon energy and
 * clamped to the endpoint values outside the table.
 */

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpforce/interpolation.hpp"
#include "cpforce/types.hpp"

namespace cpforce {

/** Thrown when a permittivity table file is malformed. */
class TableFormatError : public std::runtime_error {
 public:
  explicit TableFormatError(const std::string& what) : std::runtime_error(what) {}
};

/** One undamped oscillator: contributes C w^2 / (w^2 + xi^2). */
struct OscillatorTerm {
  double strength = 0.0;  // C_j, dimensionless (> 0)
  double omega = 0.0;     // resonance angular frequency, rad/s (> 0)
};

class SubstrateModel {
 public:
  enum class Variant { ideal_metal, vacuum, oscillator, tabulated };

  static SubstrateModel ideal_metal();
  static SubstrateModel vacuum();
  static SubstrateModel oscillator(std::vector<OscillatorTerm> terms);

  /** rows are (photon energy hbar*xi in eV, eps) with strictly increasing
      positive energies, eps >= 1 and eps nonincreasing. */
  static SubstrateModel tabulated(std::vector<std::pair<double, double>> rows);

  /** Two-oscillator fused-silica (SiO2) model with eps(0) = 3.801. */
  static SubstrateModel builtin_sio2();

  Variant variant() const { return variant_; }

  /** eps(i xi) at photon energy hbar*xi in eV; rejects the ideal metal. */
  double epsilon_at(double photon_energy_ev) const;

  /** eps(0); rejects the ideal metal (its response is symbolic). */
  double static_permittivity() const;

  /** Short lowercase tag used in run records ("ideal-metal", "vacuum", ...). */
  const std::string& tag() const { return tag_; }
  void set_tag(std::string tag) { tag_ = std::move(tag); }

 private:
  SubstrateModel() = default;

  Variant variant_ = Variant::vacuum;
  std::string tag_ = "vacuum";
  std::vector<OscillatorTerm> terms_;
  std::vector<std::pair<double, double>> rows_;
  MonotoneCubic log_energy_interp_;
};

/** Permittivity at Matsubara index l, or the symbolic ideal-metal marker. */
struct PermittivityValue {
  bool is_ideal_metal = false;
  double epsilon_l = 1.0;  // meaningful only when !is_ideal_metal
};

/**
 * eps at the l-th Matsubara frequency of the scenario: the photon energy is
 * hbar*xi_l = 2 pi k_B T l.  l = 0 returns the static permittivity.
 */
PermittivityValue permittivity(const SubstrateModel& model, int l, const Scenario& s);

/**
 * Parse a whitespace-separated two-column (photon energy eV, eps) text file.
 * '#' starts a comment; blank lines are ignored.  Errors carry the offending
 * line number.
 */
SubstrateModel load_permittivity_table(const std::string& path);

}  // namespace cpforce
