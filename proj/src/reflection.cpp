#include "cpforce/reflection.hpp"

#include <cmath>
#include <stdexcept>

namespace cpforce {

ReflectionPair reflection_coeffs_raw(double zeta_l, double y, double epsilon_l,
                                     double pi00_reduced, double pi_te_reduced) {
  if (!(zeta_l >= 0.0)) {
    throw std::invalid_argument("reflection_coeffs: zeta_l must be >= 0");
  }
  if (!(y >= zeta_l)) {
    throw std::invalid_argument("reflection_coeffs: y must satisfy y >= zeta_l");
  }
  if (!(epsilon_l >= 1.0)) {
    throw std::invalid_argument("reflection_coeffs: epsilon_l must be >= 1");
  }
  // Transverse momentum inside the substrate, k = sqrt(y^2 + (eps-1) zeta^2).
  const double k = std::sqrt(y * y + (epsilon_l - 1.0) * zeta_l * zeta_l);

  ReflectionPair r;
  const double tm_response = y * pi00_reduced;
  r.r_tm = (epsilon_l * y + k * (tm_response - 1.0)) /
           (epsilon_l * y + k * (tm_response + 1.0));
  r.r_te = ((y - k) - pi_te_reduced) / ((y + k) + pi_te_reduced);
  return r;
}

ReflectionPair reflection_coeffs(double zeta_l, double y, const PermittivityValue& eps,
                                 const PolarizationPoint& pol) {
  if (eps.is_ideal_metal) {
    return {1.0, -1.0};
  }
  return reflection_coeffs_raw(zeta_l, y, eps.epsilon_l, pol.pi00_reduced,
                               pol.pi_te_reduced);
}

double r_tm_zero(double y, double epsilon0, double pi00_zero) {
  if (!(y >= 0.0)) throw std::invalid_argument("r_tm_zero: y must be >= 0");
  if (!(epsilon0 >= 1.0)) throw std::invalid_argument("r_tm_zero: epsilon0 must be >= 1");
  if (!(pi00_zero >= 0.0)) {
    throw std::invalid_argument("r_tm_zero: pi00_zero must be >= 0");
  }
  if (y == 0.0) {
    // Limits: the response dominates when present, else the Fresnel constant.
    return pi00_zero > 0.0 ? 1.0 : (epsilon0 - 1.0) / (epsilon0 + 1.0);
  }
  return (epsilon0 * y + pi00_zero - y) / (epsilon0 * y + pi00_zero + y);
}

double r_tm_zero_approx(double y, double pi00_at_one, std::string* warning,
                        double epsilon0_hint) {
  if (!(pi00_at_one > 0.0)) {
    throw std::invalid_argument("r_tm_zero_approx: pi00_at_one must be > 0");
  }
  if (warning != nullptr && pi00_at_one < 10.0 * (epsilon0_hint + 1.0)) {
    *warning =
        "static TM approximation 1 - 2y/pi00 used with pi00(1) = " +
        std::to_string(pi00_at_one) + " below 10 (eps0 + 1) = " +
        std::to_string(10.0 * (epsilon0_hint + 1.0)) +
        "; the response no longer dominates the substrate terms";
  }
  return 1.0 - 2.0 * y / pi00_at_one;
}

}  // namespace cpforce
