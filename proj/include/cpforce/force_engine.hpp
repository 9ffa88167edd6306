#pragma once

/**
 * Casimir--Polder force between a polarizable particle and the planar
 * structure, via the finite-temperature Matsubara/Lifshitz sum in the
 * large-separation (dipole) regime:
 *
 *   F = -(k_B T alpha0 / 8 a^4) * S,
 *   S = I_0 / 2 + sum_{l>=1} I_l,
 *
 * where I_l integrates y e^-y [(2y^2 - zeta_l^2) r_tm - zeta_l^2 r_te] over
 * y >= zeta_l and the halved l = 0 term reduces to the TM-only integral of
 * y^3 e^-y r_tm.  Negative force values mean attraction.  The ideal metal is
 * summed in closed form; every other substrate goes through adaptive
 * quadrature of the reflection coefficients.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpforce/materials.hpp"
#include "cpforce/numerics.hpp"
#include "cpforce/types.hpp"

namespace cpforce {

/** Thrown when the Matsubara sum fails to converge within max_l terms. */
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

enum class ForceMode { full, l0_only, asymptotic, classical };

/** The string tags used on the command line and in run records. */
std::string to_string(ForceMode mode);
ForceMode force_mode_from_string(const std::string& tag);

struct ForceResult {
  double total = 0.0;        // N (negative = attraction); == l0_term + tail_l_ge_1 exactly
  double l0_term = 0.0;      // N, halved l = 0 term
  double tail_l_ge_1 = 0.0;  // N, sum over l >= 1

  // Dimensionless counterparts (the S values above, with the particle's
  // dispersion ratios folded in; identical to S for a static particle).
  double dimensionless_total = 0.0;
  double dimensionless_l0 = 0.0;

  int l_max_used = 0;                       // last Matsubara index evaluated
  double quad_error_estimate = 0.0;         // N, summed quadrature + truncation bounds
  ForceMode mode = ForceMode::full;
  std::vector<double> terms_dimensionless;  // entry l; entry 0 is the halved l = 0 term
  std::vector<std::string> warnings;
};

/** Full Matsubara sum.  graphene == nullopt means the bare substrate. */
ForceResult force_full(const Scenario& s, const std::optional<GrapheneParams>& graphene,
                       const SubstrateModel& substrate, const NumericsConfig& cfg = {});

/** Halved l = 0 term only (the exact large-separation classical limit). */
ForceResult force_l0(const Scenario& s, const std::optional<GrapheneParams>& graphene,
                     const SubstrateModel& substrate, const NumericsConfig& cfg = {});

/**
 * Closed-form large-separation force for a graphene-coated substrate whose
 * static response dominates: F = F_ideal * (1 - 8 / pi00(l=0, y=1)).
 */
ForceResult force_asymptotic(const Scenario& s, const GrapheneParams& graphene);

/** Classical ideal-metal force -(3/4) k_B T alpha0 / a^4, in newtons. */
double force_ideal_metal_classical(const Scenario& s);

/**
 * Relative deviation (F_l0 - F_ideal)/F_ideal of the halved l = 0 term from
 * the classical ideal-metal force; zero for an ideal-metal substrate,
 * negative otherwise.
 */
double delta_vs_ideal(const Scenario& s, const std::optional<GrapheneParams>& graphene,
                      const SubstrateModel& substrate, const NumericsConfig& cfg = {});

enum class CrossoverQuantity {
  delta_vs_ideal,    // |F_l0/F_ideal - 1|
  asym_vs_numeric,   // |F_l0/F_asymptotic - 1|
  l0_vs_full,        // |F_full - F_l0| / |F_full|
};

std::string to_string(CrossoverQuantity q);
CrossoverQuantity crossover_quantity_from_string(const std::string& tag);

enum class CrossoverStatus {
  converged,                 // bisection pinned the threshold crossing
  already_below_at_low_edge, // quantity below threshold across the whole bracket
};

std::string to_string(CrossoverStatus status);

struct CrossoverQuery {
  CrossoverQuantity quantity = CrossoverQuantity::delta_vs_ideal;
  double threshold = 0.01;
  double a_low = 1e-6;       // m
  double a_high = 1e-3;      // m
  double rel_width = 1e-3;   // bisection stops once a_high/a_low - 1 <= rel_width
};

/** Thrown when the quantity sits above the threshold at both bracket ends. */
class NoStraddleError : public std::runtime_error {
 public:
  NoStraddleError(const std::string& what, double value_low, double value_high)
      : std::runtime_error(what), value_at_low(value_low), value_at_high(value_high) {}
  double value_at_low = 0.0;
  double value_at_high = 0.0;
};

struct CrossoverResult {
  double separation_a = 0.0;  // m
  CrossoverStatus status = CrossoverStatus::converged;
  double value_at_low = 0.0;
  double value_at_high = 0.0;
};

/**
 * Geometric bisection in separation for the point where the (assumed
 * monotone) quantity crosses the threshold.  The scenario's separation is
 * replaced by the probe value; all other parameters are taken as given.
 */
CrossoverResult find_crossover(const CrossoverQuery& query, const Scenario& s,
                               const std::optional<GrapheneParams>& graphene,
                               const SubstrateModel& substrate,
                               const NumericsConfig& cfg = {});

}  // namespace cpforce
