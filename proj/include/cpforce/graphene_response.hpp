#pragma once

/**
 * Finite-temperature polarization response of a gapped, doped graphene sheet
 * along the imaginary frequency axis, in the dimensionless form entering the
 * reflection coefficients: the density-density component pi00 and the
 * transverse combination pi_te.
 *
 * Both are nonnegative, even in the chemical potential, vanish at y = zeta_l
 * like y^2 - zeta_l^2 (the `*_reduced` fields carry the finite ratio), and
 * decrease to zero as the gap grows.  The l = 0 component has a dedicated
 * evaluation that is exact in the static limit; the l >= 1 components share a
 * single general-frequency form, also exposed directly so its zeta -> 0
 * continuity with the static specialization can be tested.
 */

#include <string>

#include "cpforce/numerics.hpp"
#include "cpforce/types.hpp"

namespace cpforce {

/** Polarization response at one (l, y) point. */
struct PolarizationPoint {
  double pi00 = 0.0;          // density-density response, dimensionless, >= 0
  double pi_te = 0.0;         // transverse response, dimensionless, >= 0
  double pi00_reduced = 0.0;  // pi00 / (y^2 - zeta_l^2), finite at y = zeta_l
  double pi_te_reduced = 0.0; // pi_te / (y^2 - zeta_l^2), finite at y = zeta_l
  double zeta_l = 0.0;
  double y = 0.0;
  int l = 0;
};

/**
 * Angular factor 2[d + (1 - d^2) arctan(1/d)] of the interband response:
 * psi(0) = pi, psi(1) = 2, psi(d) -> 8/(3d) for large d.  Requires d >= 0.
 */
double psi(double d);

/**
 * Thermal occupation weight 1/(1 + e^(b u + mu/kT)) + 1/(1 + e^(b u - mu/kT)),
 * bounded in (0, 2), even in mu, overflow-safe for any argument size.
 */
double fermi_weight(double u, double b_l, double mu_ev, double temperature_k);

/**
 * Static thermal factor ln[(1 + e^-((Delta/2 + mu)/kT)) (1 + e^-((Delta/2 - mu)/kT))],
 * evaluated without overflow for gaps and dopings of any size.
 */
double log_factor(double delta_ev, double mu_ev, double temperature_k);

/** Prefactor 16 alpha a k_B T / (vf^2 hbar c) of the static thermal term. */
double log_term_prefactor(const Scenario& s, const GrapheneParams& g);

/** Full response bundle; l = 0 uses the static form, l >= 1 the general one. */
PolarizationPoint polarization(int l, double y, const Scenario& s, const GrapheneParams& g,
                               const NumericsConfig& cfg = {});

/**
 * General-frequency form at an arbitrary zeta > 0 (not necessarily a
 * Matsubara frequency); polarization() calls this for l >= 1 with
 * zeta = matsubara_zeta(l).  Exposed so the zeta -> 0 limit can be compared
 * against the l = 0 specialization.
 */
PolarizationPoint polarization_at_zeta(double zeta, double y, const Scenario& s,
                                       const GrapheneParams& g,
                                       const NumericsConfig& cfg = {});

/** Convenience accessors for the individual components. */
double pi00(int l, double y, const Scenario& s, const GrapheneParams& g,
            const NumericsConfig& cfg = {});
double pi_te(int l, double y, const Scenario& s, const GrapheneParams& g,
             const NumericsConfig& cfg = {});

/**
 * Closed form of pi00 at l = 0, y = 1 in the large-separation regime,
 * nonincreasing in the gap and nondecreasing in the doping.  When `warning`
 * is non-null and the large-separation parameter 2 a k_B T / (vf hbar c) is
 * below 10, a diagnostic is written to it.
 */
double pi00_asymptotic(const Scenario& s, const GrapheneParams& g,
                       std::string* warning = nullptr);

/** The large-separation parameter 2 a k_B T / (vf hbar c). */
double asymptotic_parameter(const Scenario& s, const GrapheneParams& g);

}  // namespace cpforce
