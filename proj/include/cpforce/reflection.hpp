#pragma once

/**
 * TM/TE reflection coefficients of the planar structure at imaginary
 * Matsubara frequencies: a substrate of permittivity eps_l, optionally coated
 * by a graphene sheet whose response enters through the polarization bundle.
 *
 * Everything is evaluated in the reduced form pi/(y^2 - zeta_l^2), which is
 * finite at y = zeta_l and removes the 0/0 the textbook expressions develop
 * there.  Bounds (for physical inputs): 0 <= r_tm <= 1 and -1 <= r_te <= 0.
 * The ideal metal yields the exact constants (1, -1) for every (l, y).
 */

#include <string>

#include "cpforce/graphene_response.hpp"
#include "cpforce/materials.hpp"

namespace cpforce {

struct ReflectionPair {
  double r_tm = 0.0;
  double r_te = 0.0;
};

/**
 * Coefficients at (zeta_l, y >= zeta_l).  A default-constructed
 * PolarizationPoint (all zeros) gives the bare-substrate Fresnel values; a
 * unit permittivity with a nonzero response gives the freestanding sheet.
 */
ReflectionPair reflection_coeffs(double zeta_l, double y, const PermittivityValue& eps,
                                 const PolarizationPoint& pol);

/** Same algebra with the reduced responses supplied as raw numbers. */
ReflectionPair reflection_coeffs_raw(double zeta_l, double y, double epsilon_l,
                                     double pi00_reduced, double pi_te_reduced);

/**
 * TM coefficient of the static (l = 0) term from the unreduced response:
 * (eps0 y + pi00 - y) / (eps0 y + pi00 + y).  Increasing in both pi00 and
 * eps0; equals (eps0 - 1)/(eps0 + 1) for a bare substrate.
 */
double r_tm_zero(double y, double epsilon0, double pi00_zero);

/**
 * Large-response approximation 1 - 2 y / pi00_at_one of the static TM
 * coefficient at y = 1.  When `warning` is non-null and pi00_at_one is not
 * at least 10 (epsilon0_hint + 1), a diagnostic explaining the loss of
 * accuracy is written to it.
 */
double r_tm_zero_approx(double y, double pi00_at_one, std::string* warning = nullptr,
                        double epsilon0_hint = 3.801);

}  // namespace cpforce
