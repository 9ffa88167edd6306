#pragma once

/**
 * Domain value types shared by every module: the graphene sheet parameters,
 * the polarizable particle, and the geometric/thermal scenario.
 *
 * Scenario quantities are in SI units (meters, kelvin); particle
 * polarizabilities are in cm^3 as is conventional for atomic response data.
 */

#include <utility>
#include <vector>

#include "cpforce/constants.hpp"

namespace cpforce {

/** Energy gap and chemical potential of the graphene coating. */
struct GrapheneParams {
  double delta = 0.0;                  // energy gap, eV (>= 0)
  double mu = 0.0;                     // chemical potential, eV (>= 0)
  double vf_ratio = DEFAULT_VF_RATIO;  // Fermi velocity / speed of light
};

/**
 * Polarizable particle.  `dynamic_table` optionally lists the polarizability
 * along the imaginary frequency axis as (photon energy in eV, alpha in cm^3)
 * rows with strictly increasing energies; the first row must start at zero
 * energy and reproduce `alpha0`.  An empty table means the static value is
 * used at all frequencies.
 */
struct Particle {
  double alpha0 = 1.0;  // static polarizability, cm^3 (> 0)
  std::vector<std::pair<double, double>> dynamic_table;
};

/** One evaluation point of the force formulas. */
struct Scenario {
  double separation_a = 5.6e-6;  // particle--plane separation, m (> 0)
  double temperature_t = 300.0;  // temperature, K (> 0)
  Particle particle;
};

/** Throw std::invalid_argument when a field is out of range. */
void validate(const GrapheneParams& g);
void validate(const Particle& p);
void validate(const Scenario& s);

}  // namespace cpforce
