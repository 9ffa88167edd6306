#include "cpforce/graphene_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cpforce/kinematics.hpp"
#include "cpforce/quadrature.hpp"

namespace cpforce {

namespace {

/** 1/(1 + e^t) without overflow for any t. */
double stable_logistic(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

/** ln(1 + e^-t) without overflow for any t. */
double ln_1p_exp_neg(double t) {
  if (t >= 0.0) return std::log1p(std::exp(-t));
  return -t + std::log1p(std::exp(t));
}

/** ln(cosh t) without overflow for any t. */
double ln_cosh(double t) {
  const double at = std::abs(t);
  return at + std::log1p(std::exp(-2.0 * at)) - std::numbers::ln2;
}

/** Momentum-space kernels of the general-frequency response. */
struct ResponseKernels {
  double tm = 0.0;  // density-density kernel
  double te = 0.0;  // transverse kernel
};

/**
 * Kernels at integration variable u >= d, with eta = vf^2 (y^2-zeta^2)/p^2
 * and beta = zeta/p (eta + beta^2 = 1).  Built from the principal square
 * root s of z = (1 - u^2 + eta d^2) + 2 i beta u; the rational combination
 * below is an exact rearrangement of the textbook real-part expressions that
 * stays finite and cancellation-free through u = sqrt(1 + eta d^2), where
 * Re z changes sign.
 */
ResponseKernels kernels(double u, double d, double eta, double beta) {
  const double re_z = (1.0 - u * u) + eta * d * d;
  const double im_z = 2.0 * beta * u;
  const double az = std::hypot(re_z, im_z);
  double rs;  // Re sqrt(z), principal branch
  if (re_z >= 0.0) {
    rs = std::sqrt(0.5 * (az + re_z));
  } else {
    const double im_s = std::sqrt(0.5 * (az - re_z));
    rs = (im_z == 0.0) ? 0.0 : 0.5 * im_z / im_s;
  }
  // 2 (u^2 - d^2) / [((1 + u^2 - eta d^2) + |z|)(1 + Re s)]; the first
  // denominator factor is >= 1 on u >= d, so nothing cancels.
  const double q = 2.0 * (u * u - d * d) /
                   (((1.0 + u * u - eta * d * d) + az) * (1.0 + rs));
  ResponseKernels k;
  k.tm = (az > 0.0) ? q + d * d * rs / az : q;
  k.te = (az > 0.0) ? (1.0 - rs / az) - q : 1.0 - q;
  return k;
}

constexpr double PI_HALF = std::numbers::pi / 2.0;

}  // namespace

double psi(double d) {
  if (!(d >= 0.0)) throw std::invalid_argument("psi: d must be >= 0");
  if (d > 1e3) {
    // Large-d series: sum_k (-1)^k 8(k+1)/((2k+1)(2k+3)) d^-(2k+1); eight
    // terms reach machine precision well before the switchover point.
    const double inv = 1.0 / d;
    const double inv2 = inv * inv;
    double power = inv;
    double sum = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double coeff = 8.0 * (k + 1) / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
      sum += ((k % 2 == 0) ? coeff : -coeff) * power;
      power *= inv2;
    }
    return sum;
  }
  return 2.0 * (d + (1.0 - d * d) * std::atan2(1.0, d));
}

double fermi_weight(double u, double b_l, double mu_ev, double temperature_k) {
  const double m = mu_ev / kt_ev(temperature_k);
  const double t = b_l * u;
  return stable_logistic(t + m) + stable_logistic(t - m);
}

double log_factor(double delta_ev, double mu_ev, double temperature_k) {
  const double kt = kt_ev(temperature_k);
  const double x = 0.5 * delta_ev / kt;
  const double m = mu_ev / kt;
  return ln_1p_exp_neg(x + m) + ln_1p_exp_neg(x - m);
}

double log_term_prefactor(const Scenario& s, const GrapheneParams& g) {
  const double vf = g.vf_ratio;
  return 16.0 * FINE_STRUCTURE_ALPHA * separation_um(s) * kt_ev(s.temperature_t) /
         (vf * vf * HBARC_EV_UM);
}

double asymptotic_parameter(const Scenario& s, const GrapheneParams& g) {
  return 2.0 * separation_um(s) * kt_ev(s.temperature_t) / (g.vf_ratio * HBARC_EV_UM);
}

namespace {

/** Static (l = 0) response via the angular form of the momentum integral. */
PolarizationPoint polarization_static(double y, const Scenario& s, const GrapheneParams& g,
                                      const NumericsConfig& cfg) {
  PolarizationPoint out;
  out.l = 0;
  out.zeta_l = 0.0;
  out.y = y;

  const double vf = g.vf_ratio;
  const double pref_log = log_term_prefactor(s, g);
  const double thermal = pref_log * log_factor(g.delta, g.mu, s.temperature_t);
  if (y == 0.0) {
    out.pi00 = thermal;
    out.pi_te = 0.0;
    out.pi00_reduced = std::numeric_limits<double>::infinity();
    out.pi_te_reduced = 0.0;
    return out;
  }

  const KinematicFactors k = kinematic_factors_at_zeta(0.0, y, s, g);
  const double d0 = k.d_l;  // 2 a Delta / (hbar c vf y)
  const double b0 = k.b_l;  // hbar c vf y / (4 a k_B T)
  const double u_edge = std::hypot(1.0, d0);
  const double theta0 = std::atan(d0);

  // Substituting u = u_edge sin(theta) turns the inverse-square-root edge of
  // the momentum window [d0, u_edge] into a smooth integrand on
  // [theta0, pi/2], with u_edge cos(theta) = sqrt(1 + d0^2 - u^2).
  auto weight = [&](double theta) {
    return fermi_weight(u_edge * std::sin(theta), b0, g.mu, s.temperature_t);
  };
  auto tm_integrand = [&](double theta) {
    const double c = u_edge * std::cos(theta);
    return weight(theta) * (c * c - d0 * d0);
  };
  auto te_integrand = [&](double theta) {
    const double c = u_edge * std::cos(theta);
    return weight(theta) * (c * c - 1.0);
  };

  std::vector<double> edges = {theta0, PI_HALF};
  if (d0 < 1.0) edges.push_back(std::asin(1.0 / u_edge));  // sign change of the TM integrand

  const QuadratureResult jtm =
      integrate_with_retry(tm_integrand, edges, cfg.abs_tol_dimensionless, cfg.rel_tol,
                           "static TM momentum integral");
  const QuadratureResult jte =
      integrate_with_retry(te_integrand, edges, cfg.abs_tol_dimensionless, cfg.rel_tol,
                           "static TE momentum integral");

  const double psi_term = psi(d0);
  const double band = FINE_STRUCTURE_ALPHA * y / vf;
  out.pi00 = std::max(0.0, band * psi_term + thermal - 4.0 * band * jtm.value);
  out.pi_te =
      std::max(0.0, FINE_STRUCTURE_ALPHA * vf * y * y * y * (psi_term + 4.0 * jte.value));
  out.pi00_reduced = out.pi00 / (y * y);
  out.pi_te_reduced = out.pi_te / (y * y);
  return out;
}

}  // namespace

PolarizationPoint polarization_at_zeta(double zeta, double y, const Scenario& s,
                                       const GrapheneParams& g, const NumericsConfig& cfg) {
  validate(cfg);
  if (!(zeta > 0.0)) {
    throw std::invalid_argument(
        "polarization_at_zeta: zeta must be > 0 (use the l = 0 static form instead)");
  }
  const KinematicFactors k = kinematic_factors_at_zeta(zeta, y, s, g);

  PolarizationPoint out;
  out.zeta_l = zeta;
  out.y = y;

  const double vf = g.vf_ratio;
  const double p = k.p_l;
  const double d = k.d_l;
  const double b = k.b_l;
  const double delta2 = (y - zeta) * (y + zeta);  // y^2 - zeta^2 >= 0
  const double eta = vf * vf * delta2 / (p * p);
  const double beta = zeta / p;

  const double m = g.mu / kt_ev(s.temperature_t);
  const double u_max = d + (cfg.y_tail_efolds + m + 5.0) / b;

  std::vector<double> edges = {d, u_max};
  const double u_turn = std::sqrt(1.0 + eta * d * d);  // where Re z crosses zero
  if (u_turn > d && u_turn < u_max) edges.push_back(u_turn);

  auto tm_integrand = [&](double u) {
    return fermi_weight(u, b, g.mu, s.temperature_t) * kernels(u, d, eta, beta).tm;
  };
  auto te_integrand = [&](double u) {
    return fermi_weight(u, b, g.mu, s.temperature_t) * kernels(u, d, eta, beta).te;
  };

  const QuadratureResult jtm =
      integrate_with_retry(tm_integrand, edges, cfg.abs_tol_dimensionless, cfg.rel_tol,
                           "TM momentum integral");
  const QuadratureResult jte =
      integrate_with_retry(te_integrand, edges, cfg.abs_tol_dimensionless, cfg.rel_tol,
                           "TE momentum integral");

  const double psi_term = psi(d);
  out.pi00_reduced =
      std::max(0.0, FINE_STRUCTURE_ALPHA / p * (psi_term + 4.0 * jtm.value));
  out.pi_te_reduced =
      std::max(0.0, FINE_STRUCTURE_ALPHA * p * (psi_term + 4.0 * jte.value));
  out.pi00 = delta2 * out.pi00_reduced;
  out.pi_te = delta2 * out.pi_te_reduced;
  return out;
}

PolarizationPoint polarization(int l, double y, const Scenario& s, const GrapheneParams& g,
                               const NumericsConfig& cfg) {
  validate(cfg);
  if (l == 0) {
    if (!(y >= 0.0)) throw std::invalid_argument("polarization: y must be >= 0 at l = 0");
    return polarization_static(y, s, g, cfg);
  }
  PolarizationPoint out = polarization_at_zeta(matsubara_zeta(l, s), y, s, g, cfg);
  out.l = l;
  return out;
}

double pi00(int l, double y, const Scenario& s, const GrapheneParams& g,
            const NumericsConfig& cfg) {
  return polarization(l, y, s, g, cfg).pi00;
}

double pi_te(int l, double y, const Scenario& s, const GrapheneParams& g,
             const NumericsConfig& cfg) {
  return polarization(l, y, s, g, cfg).pi_te;
}

double pi00_asymptotic(const Scenario& s, const GrapheneParams& g, std::string* warning) {
  validate(s);
  validate(g);
  const double kt = kt_ev(s.temperature_t);
  const double x = 0.5 * g.delta / kt;
  const double m = g.mu / kt;
  const double a_plus = 0.5 * (x + m);
  const double a_minus = 0.5 * (x - m);
  const double bracket = 2.0 * std::numbers::ln2 + ln_cosh(a_plus) + ln_cosh(a_minus) -
                         0.5 * x * (std::tanh(a_plus) + std::tanh(a_minus));
  if (warning != nullptr) {
    const double param = asymptotic_parameter(s, g);
    if (param < 10.0) {
      *warning = "large-separation closed form used at 2 a k_B T/(vf hbar c) = " +
                 std::to_string(param) + " < 10; accuracy degrades at short separation";
    }
  }
  return log_term_prefactor(s, g) * bracket;
}

}  // namespace cpforce
