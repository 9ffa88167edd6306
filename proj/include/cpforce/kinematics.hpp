#pragma once

/**
 * Dimensionless kinematic variables of the scattering geometry.
 *
 * With separation a, temperature T and Matsubara index l, the force integrals
 * run over a dimensionless momentum variable y >= zeta_l, where
 *   zeta_l = 4 pi a k_B T l / (hbar c)
 * is the dimensionless Matsubara frequency.  Every response quantity is
 * expressed through the bundle computed here.
 */

#include "cpforce/types.hpp"

namespace cpforce {

/** Per-(l, y) dimensionless factors feeding the response integrands. */
struct KinematicFactors {
  double zeta_l = 0.0;  // dimensionless Matsubara frequency
  double y = 0.0;       // dimensionless momentum variable, y >= zeta_l
  double p_l = 0.0;     // sqrt(vf^2 (y^2 - zeta_l^2) + zeta_l^2)
  double d_l = 0.0;     // gap parameter 2 a Delta / (hbar c p_l)
  double b_l = 0.0;     // thermal parameter hbar c p_l / (4 a k_B T)
};

/** Separation in micrometers. */
double separation_um(const Scenario& s);

/**
 * Dimensionless Matsubara frequency, exactly linear in l (so that
 * matsubara_zeta(2, s) == 2 * matsubara_zeta(1, s) holds bitwise).
 */
double matsubara_zeta(int l, const Scenario& s);

/**
 * The factor bundle at one (l, y) point.  Throws std::invalid_argument for
 * y < zeta_l, negative l, or out-of-range scenario parameters.
 *
 * Limiting cases are exact: at zeta_l = 0, p_l = vf * y; at y = zeta_l,
 * p_l = zeta_l; and d_l * b_l == Delta / (2 k_B T) independent of (l, y).
 */
KinematicFactors kinematic_factors(int l, double y, const Scenario& s,
                                   const GrapheneParams& g);

/** Same bundle at an arbitrary (not necessarily Matsubara) zeta >= 0. */
KinematicFactors kinematic_factors_at_zeta(double zeta, double y, const Scenario& s,
                                           const GrapheneParams& g);

}  // namespace cpforce
