#include "cpforce/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpforce {

void validate(const GrapheneParams& g) {
  if (!(g.delta >= 0.0) || !std::isfinite(g.delta)) {
    throw std::invalid_argument("GrapheneParams: delta must be finite and >= 0");
  }
  if (!(g.mu >= 0.0) || !std::isfinite(g.mu)) {
    throw std::invalid_argument("GrapheneParams: mu must be finite and >= 0");
  }
  if (!(g.vf_ratio > 0.0) || !(g.vf_ratio < 1.0)) {
    throw std::invalid_argument("GrapheneParams: vf_ratio must lie in (0, 1)");
  }
}

void validate(const Particle& p) {
  if (!(p.alpha0 > 0.0) || !std::isfinite(p.alpha0)) {
    throw std::invalid_argument("Particle: alpha0 must be finite and > 0");
  }
  if (p.dynamic_table.empty()) return;
  if (p.dynamic_table.front().first != 0.0) {
    throw std::invalid_argument("Particle: dynamic_table must start at zero energy");
  }
  const double first_alpha = p.dynamic_table.front().second;
  if (std::abs(first_alpha - p.alpha0) > 1e-9 * std::abs(p.alpha0)) {
    throw std::invalid_argument("Particle: dynamic_table's first row must reproduce alpha0");
  }
  double prev_energy = -1.0;
  for (const auto& [energy, alpha] : p.dynamic_table) {
    if (!(energy > prev_energy)) {
      throw std::invalid_argument("Particle: dynamic_table energies must be strictly increasing");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw std::invalid_argument("Particle: dynamic_table polarizabilities must be positive");
    }
    prev_energy = energy;
  }
}

void validate(const Scenario& s) {
  if (!(s.separation_a > 0.0) || !std::isfinite(s.separation_a)) {
    throw std::invalid_argument("Scenario: separation_a must be finite and > 0");
  }
  if (!(s.temperature_t > 0.0) || !std::isfinite(s.temperature_t)) {
    throw std::invalid_argument("Scenario: temperature_t must be finite and > 0");
  }
  validate(s.particle);
}

double separation_um(const Scenario& s) { return s.separation_a * 1e6; }

double matsubara_zeta(int l, const Scenario& s) {
  if (l < 0) throw std::invalid_argument("matsubara_zeta: l must be >= 0");
  validate(s);
  const double base =
      4.0 * std::numbers::pi * separation_um(s) * kt_ev(s.temperature_t) / HBARC_EV_UM;
  return static_cast<double>(l) * base;
}

KinematicFactors kinematic_factors_at_zeta(double zeta, double y, const Scenario& s,
                                           const GrapheneParams& g) {
  validate(s);
  validate(g);
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) {
    throw std::invalid_argument("kinematic_factors: zeta must be finite and >= 0");
  }
  if (!(y >= zeta)) {
    throw std::invalid_argument("kinematic_factors: y must satisfy y >= zeta_l");
  }

  KinematicFactors k;
  k.zeta_l = zeta;
  k.y = y;
  const double vf = g.vf_ratio;
  // p = sqrt(vf^2 y^2 + (1 - vf^2) zeta^2); hypot keeps the limits
  // zeta = 0 -> vf*y and y = zeta -> zeta exact to rounding.
  k.p_l = std::hypot(vf * y, std::sqrt(1.0 - vf * vf) * zeta);
  const double a_um = separation_um(s);
  const double hbar_c_p = HBARC_EV_UM * k.p_l;  // eV*um * (dimensionless)
  k.d_l = (g.delta > 0.0) ? 2.0 * a_um * g.delta / hbar_c_p : 0.0;
  k.b_l = hbar_c_p / (4.0 * a_um * kt_ev(s.temperature_t));
  return k;
}

KinematicFactors kinematic_factors(int l, double y, const Scenario& s,
                                   const GrapheneParams& g) {
  return kinematic_factors_at_zeta(matsubara_zeta(l, s), y, s, g);
}

}  // namespace cpforce
