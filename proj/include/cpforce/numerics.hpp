#pragma once

/**
 * Tolerances and truncation limits shared by the quadrature layer and the
 * Matsubara summation.  The defaults are chosen so that forces converge to
 * well below one part in 1e6, comfortably tighter than any comparison made
 * against reference data.
 */

#include <stdexcept>

namespace cpforce {

struct NumericsConfig {
  double rel_tol = 1e-8;                 // relative tolerance of each adaptive integral
  double abs_tol_dimensionless = 1e-10;  // absolute floor for dimensionless integrals
  double matsubara_rel_cutoff = 1e-10;   // stop after two consecutive terms below this, relative to the running sum
  int max_l = 2000;                      // hard cap on the Matsubara index
  double y_tail_efolds = 40.0;           // semi-infinite integrals cut after this many e-folds
};

/** Throw std::invalid_argument when a tolerance or limit is unusable. */
inline void validate(const NumericsConfig& c) {
  if (!(c.rel_tol > 0.0) || !(c.abs_tol_dimensionless > 0.0)) {
    throw std::invalid_argument("NumericsConfig: tolerances must be positive");
  }
  if (!(c.matsubara_rel_cutoff > 0.0)) {
    throw std::invalid_argument("NumericsConfig: matsubara_rel_cutoff must be positive");
  }
  if (c.max_l < 1) {
    throw std::invalid_argument("NumericsConfig: max_l must be at least 1");
  }
  if (!(c.y_tail_efolds >= 10.0)) {
    throw std::invalid_argument("NumericsConfig: y_tail_efolds must be at least 10");
  }
}

}  // namespace cpforce
