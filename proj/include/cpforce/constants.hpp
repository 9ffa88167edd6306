#pragma once

/**
 * Physical constants (CODATA 2018) and thermal-energy helpers.
 *
 * The numerical core works with separations in micrometers and energies in
 * electronvolts; forces are reported in newtons.  Every unit conversion in
 * the library goes through the constants defined here.
 */

namespace cpforce {

inline constexpr double KB_EV_PER_K = 8.617333262e-5;           // Boltzmann constant, eV/K
inline constexpr double HBARC_EV_UM = 0.1973269804;             // hbar*c, eV*um
inline constexpr double HBAR_EV_S = 6.582119569e-16;            // hbar, eV*s
inline constexpr double FINE_STRUCTURE_ALPHA = 7.2973525693e-3; // dimensionless
inline constexpr double EV_J = 1.602176634e-19;                 // 1 eV in J (exact)
inline constexpr double DEFAULT_VF_RATIO = 1.0 / 300.0;         // graphene Fermi velocity / c

/** Thermal energy k_B*T in eV. */
inline double kt_ev(double temperature_k) { return KB_EV_PER_K * temperature_k; }

/** Thermal energy k_B*T in J. */
inline double kt_j(double temperature_k) { return KB_EV_PER_K * temperature_k * EV_J; }

}  // namespace cpforce
