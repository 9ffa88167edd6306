#include "cpforce/force_engine.hpp"

#include <cmath>
#include <utility>

#include "cpforce/graphene_response.hpp"
#include "cpforce/interpolation.hpp"
#include "cpforce/kinematics.hpp"
#include "cpforce/quadrature.hpp"
#include "cpforce/reflection.hpp"

namespace cpforce {

std::string to_string(ForceMode mode) {
  switch (mode) {
    case ForceMode::full: return "full";
    case ForceMode::l0_only: return "l0";
    case ForceMode::asymptotic: return "asymptotic";
    case ForceMode::classical: return "classical";
  }
  return "full";
}

ForceMode force_mode_from_string(const std::string& tag) {
  if (tag == "full") return ForceMode::full;
  if (tag == "l0") return ForceMode::l0_only;
  if (tag == "asymptotic") return ForceMode::asymptotic;
  if (tag == "classical") return ForceMode::classical;
  throw std::invalid_argument("unknown mode '" + tag + "' (expected full|l0|asymptotic|classical)");
}

std::string to_string(CrossoverQuantity q) {
  switch (q) {
    case CrossoverQuantity::delta_vs_ideal: return "delta-vs-ideal";
    case CrossoverQuantity::asym_vs_numeric: return "asym-vs-numeric";
    case CrossoverQuantity::l0_vs_full: return "l0-vs-full";
  }
  return "delta-vs-ideal";
}

CrossoverQuantity crossover_quantity_from_string(const std::string& tag) {
  if (tag == "delta-vs-ideal") return CrossoverQuantity::delta_vs_ideal;
  if (tag == "asym-vs-numeric") return CrossoverQuantity::asym_vs_numeric;
  if (tag == "l0-vs-full") return CrossoverQuantity::l0_vs_full;
  throw std::invalid_argument("unknown crossover quantity '" + tag +
                              "' (expected delta-vs-ideal|asym-vs-numeric|l0-vs-full)");
}

std::string to_string(CrossoverStatus status) {
  switch (status) {
    case CrossoverStatus::converged: return "converged";
    case CrossoverStatus::already_below_at_low_edge: return "already-below";
  }
  return "converged";
}

namespace {

/** Magnitude k_B T alpha0 / (8 a^4) in newtons. */
double force_prefactor_n(const Scenario& s) {
  const double alpha_m3 = s.particle.alpha0 * 1e-6;  // cm^3 -> m^3
  const double a = s.separation_a;
  return kt_j(s.temperature_t) * alpha_m3 / (8.0 * a * a * a * a);
}

/** alpha(i xi)/alpha0 along the imaginary axis; identically 1 without a table. */
class DispersionRatio {
 public:
  explicit DispersionRatio(const Particle& p) : alpha0_(p.alpha0) {
    if (p.dynamic_table.size() >= 2) {
      std::vector<double> energy;
      std::vector<double> alpha;
      energy.reserve(p.dynamic_table.size());
      alpha.reserve(p.dynamic_table.size());
      for (const auto& [e, a] : p.dynamic_table) {
        energy.push_back(e);
        alpha.push_back(a);
      }
      interp_ = MonotoneCubic(std::move(energy), std::move(alpha));
      active_ = true;
    }
  }

  double operator()(double photon_energy_ev) const {
    return active_ ? interp_(photon_energy_ev) / alpha0_ : 1.0;
  }

 private:
  MonotoneCubic interp_;
  double alpha0_ = 1.0;
  bool active_ = false;
};

/** Ideal-metal Matsubara term 2 e^-zeta (zeta^3 + 3 zeta^2 + 6 zeta + 6). */
double ideal_term_l(double zeta) {
  return 2.0 * std::exp(-zeta) * (zeta * (zeta * (zeta + 3.0) + 6.0) + 6.0);
}

/** Truncation bound: int_E^inf y^3 e^-y dy = e^-E (E^3 + 3E^2 + 6E + 6). */
double gamma4_tail(double e) {
  return std::exp(-e) * (e * (e * (e + 3.0) + 6.0) + 6.0);
}

struct TermEstimate {
  double value = 0.0;
  double error = 0.0;
};

/** Halved l = 0 term: int_0^E y^3 e^-y r_tm,0(y) dy. */
TermEstimate l0_half_term(const Scenario& s, const std::optional<GrapheneParams>& graphene,
                          const SubstrateModel& substrate, const NumericsConfig& cfg) {
  if (substrate.variant() == SubstrateModel::Variant::ideal_metal) {
    return {6.0, 0.0};  // r_tm == 1 exactly, so the integral is Gamma(4) = 6
  }
  const double eps0 = substrate.static_permittivity();
  const double e_max = cfg.y_tail_efolds;
  const std::vector<double> edges = {0.0, 2.0, 6.0, 12.0, e_max};

  QuadratureResult r;
  if (graphene) {
    auto integrand = [&](double y) {
      const double response = polarization(0, y, s, *graphene, cfg).pi00;
      return y * y * y * std::exp(-y) * r_tm_zero(y, eps0, response);
    };
    r = integrate_with_retry(integrand, edges, cfg.abs_tol_dimensionless, cfg.rel_tol,
                             "static-term integral");
  } else {
    const double fresnel = (eps0 - 1.0) / (eps0 + 1.0);
    auto integrand = [&](double y) { return y * y * y * std::exp(-y) * fresnel; };
    r = integrate_with_retry(integrand, edges, cfg.abs_tol_dimensionless, cfg.rel_tol,
                             "static-term integral (bare substrate)");
  }
  return {r.value, r.error_estimate + gamma4_tail(e_max)};
}

/** One l >= 1 term: int_zeta^(zeta+E) y e^-y [(2y^2 - zeta^2) r_tm - zeta^2 r_te] dy. */
TermEstimate matsubara_term(int l, const Scenario& s,
                            const std::optional<GrapheneParams>& graphene,
                            const SubstrateModel& substrate, const NumericsConfig& cfg) {
  const double zeta = matsubara_zeta(l, s);
  if (substrate.variant() == SubstrateModel::Variant::ideal_metal) {
    return {ideal_term_l(zeta), 0.0};
  }
  const PermittivityValue eps_l = permittivity(substrate, l, s);
  const double e_max = cfg.y_tail_efolds;

  // e^-zeta is factored out of the integrand (t = y - zeta) and restored at
  // the end, so the quadrature works near unit scale for every l.
  auto integrand = [&](double t) {
    const double y = zeta + t;
    ReflectionPair rc;
    if (graphene) {
      const PolarizationPoint pol = polarization_at_zeta(zeta, y, s, *graphene, cfg);
      rc = reflection_coeffs(zeta, y, eps_l, pol);
    } else {
      rc = reflection_coeffs(zeta, y, eps_l, PolarizationPoint{});
    }
    const double tm_weight = 2.0 * y * y - zeta * zeta;
    return y * std::exp(-t) * (tm_weight * rc.r_tm - zeta * zeta * rc.r_te);
  };
  const std::vector<double> edges = {0.0, 4.0, 12.0, e_max};
  const QuadratureResult r =
      integrate_with_retry(integrand, edges, cfg.abs_tol_dimensionless, cfg.rel_tol,
                           "Matsubara term l = " + std::to_string(l));
  const double scale = std::exp(-zeta);
  // |r_tm| <= 1 and |r_te| <= 1 bound the truncated tail by 2 y^3 e^-y.
  return {scale * r.value, scale * r.error_estimate + 2.0 * gamma4_tail(zeta + e_max)};
}

/** Photon energy hbar xi_l in eV for the dispersion table lookup. */
double photon_energy_ev(int l, const Scenario& s) {
  return matsubara_zeta(l, s) * HBARC_EV_UM / (2.0 * separation_um(s));
}

void normalize_zero(double& v) {
  if (v == 0.0) v = 0.0;  // collapse -0.0 so records print a single zero form
}

ForceResult assemble(const Scenario& s, double s_l0, double s_tail, double err_s,
                     int l_max_used, ForceMode mode,
                     std::vector<double> terms, std::vector<std::string> warnings) {
  const double pref = force_prefactor_n(s);
  ForceResult out;
  out.mode = mode;
  out.dimensionless_l0 = s_l0;
  out.dimensionless_total = s_l0 + s_tail;
  out.l0_term = -pref * s_l0;
  out.tail_l_ge_1 = -pref * s_tail;
  out.total = out.l0_term + out.tail_l_ge_1;
  normalize_zero(out.l0_term);
  normalize_zero(out.tail_l_ge_1);
  normalize_zero(out.total);
  out.l_max_used = l_max_used;
  out.quad_error_estimate = pref * err_s;
  out.terms_dimensionless = std::move(terms);
  out.warnings = std::move(warnings);
  return out;
}

}  // namespace

ForceResult force_full(const Scenario& s, const std::optional<GrapheneParams>& graphene,
                       const SubstrateModel& substrate, const NumericsConfig& cfg) {
  validate(s);
  if (graphene) validate(*graphene);
  validate(cfg);

  const DispersionRatio ratio(s.particle);
  const double c0 = ratio(0.0);

  const TermEstimate l0 = l0_half_term(s, graphene, substrate, cfg);
  const double s_l0 = l0.value * c0;
  double err_s = l0.error * std::abs(c0);

  std::vector<double> terms = {s_l0};
  double s_tail = 0.0;
  int small_streak = 0;
  int l = 1;
  for (; l <= cfg.max_l; ++l) {
    const double zeta = matsubara_zeta(l, s);
    double term = 0.0;
    if (zeta <= 700.0) {  // beyond this e^-zeta underflows and the term is zero
      const TermEstimate te = matsubara_term(l, s, graphene, substrate, cfg);
      const double cl = ratio(photon_energy_ev(l, s));
      term = te.value * cl;
      err_s += te.error * std::abs(cl);
    }
    s_tail += term;
    terms.push_back(term);
    if (std::abs(term) <= cfg.matsubara_rel_cutoff * std::abs(s_l0 + s_tail)) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
  }
  if (l > cfg.max_l) {
    throw TruncationError("Matsubara sum not converged after " + std::to_string(cfg.max_l) +
                          " terms (a = " + std::to_string(separation_um(s)) +
                          " um, T = " + std::to_string(s.temperature_t) + " K)");
  }

  return assemble(s, s_l0, s_tail, err_s, l, ForceMode::full, std::move(terms), {});
}

ForceResult force_l0(const Scenario& s, const std::optional<GrapheneParams>& graphene,
                     const SubstrateModel& substrate, const NumericsConfig& cfg) {
  validate(s);
  if (graphene) validate(*graphene);
  validate(cfg);

  const DispersionRatio ratio(s.particle);
  const double c0 = ratio(0.0);
  const TermEstimate l0 = l0_half_term(s, graphene, substrate, cfg);
  return assemble(s, l0.value * c0, 0.0, l0.error * std::abs(c0), 0, ForceMode::l0_only,
                  {l0.value * c0}, {});
}

ForceResult force_asymptotic(const Scenario& s, const GrapheneParams& graphene) {
  validate(s);
  validate(graphene);

  std::string warn;
  const double pi_static = pi00_asymptotic(s, graphene, &warn);
  const DispersionRatio ratio(s.particle);
  const double s_as = 6.0 * (1.0 - 8.0 / pi_static) * ratio(0.0);
  std::vector<std::string> warnings;
  if (!warn.empty()) warnings.push_back(warn);
  return assemble(s, s_as, 0.0, 0.0, 0, ForceMode::asymptotic, {s_as},
                  std::move(warnings));
}

double force_ideal_metal_classical(const Scenario& s) {
  validate(s);
  return -6.0 * force_prefactor_n(s);
}

double delta_vs_ideal(const Scenario& s, const std::optional<GrapheneParams>& graphene,
                      const SubstrateModel& substrate, const NumericsConfig& cfg) {
  if (substrate.variant() == SubstrateModel::Variant::ideal_metal) {
    return 0.0;  // the halved l = 0 term is Gamma(4) = 6 exactly
  }
  const ForceResult r = force_l0(s, graphene, substrate, cfg);
  return r.dimensionless_l0 / 6.0 - 1.0;
}

CrossoverResult find_crossover(const CrossoverQuery& query, const Scenario& s,
                               const std::optional<GrapheneParams>& graphene,
                               const SubstrateModel& substrate, const NumericsConfig& cfg) {
  validate(s);
  if (graphene) validate(*graphene);
  validate(cfg);
  if (!(query.threshold > 0.0)) {
    throw std::invalid_argument("find_crossover: threshold must be > 0");
  }
  if (!(query.a_low > 0.0) || !(query.a_high > query.a_low)) {
    throw std::invalid_argument("find_crossover: need 0 < a_low < a_high");
  }
  if (!(query.rel_width > 0.0)) {
    throw std::invalid_argument("find_crossover: rel_width must be > 0");
  }
  if (query.quantity == CrossoverQuantity::asym_vs_numeric && !graphene) {
    throw std::invalid_argument(
        "find_crossover: asym-vs-numeric requires a graphene coating");
  }

  auto quantity = [&](double a_m) -> double {
    Scenario probe = s;
    probe.separation_a = a_m;
    switch (query.quantity) {
      case CrossoverQuantity::delta_vs_ideal:
        return std::abs(delta_vs_ideal(probe, graphene, substrate, cfg));
      case CrossoverQuantity::asym_vs_numeric: {
        const double numeric = force_l0(probe, graphene, substrate, cfg).dimensionless_l0;
        const double closed = force_asymptotic(probe, *graphene).dimensionless_total;
        return std::abs(numeric / closed - 1.0);
      }
      case CrossoverQuantity::l0_vs_full: {
        const ForceResult r = force_full(probe, graphene, substrate, cfg);
        return std::abs((r.dimensionless_total - r.dimensionless_l0) /
                        r.dimensionless_total);
      }
    }
    throw std::logic_error("find_crossover: unknown quantity");
  };

  CrossoverResult out;
  out.value_at_low = quantity(query.a_low);
  out.value_at_high = quantity(query.a_high);
  const bool low_above = out.value_at_low > query.threshold;
  const bool high_above = out.value_at_high > query.threshold;
  if (!low_above && !high_above) {
    out.status = CrossoverStatus::already_below_at_low_edge;
    out.separation_a = query.a_low;
    return out;
  }
  if (low_above && high_above) {
    throw NoStraddleError(
        "find_crossover: " + to_string(query.quantity) + " stays above threshold " +
            std::to_string(query.threshold) + " across the bracket (value " +
            std::to_string(out.value_at_low) + " at " +
            std::to_string(query.a_low * 1e6) + " um, " +
            std::to_string(out.value_at_high) + " at " +
            std::to_string(query.a_high * 1e6) + " um)",
        out.value_at_low, out.value_at_high);
  }

  double lo = query.a_low;
  double hi = query.a_high;
  while (hi / lo - 1.0 > query.rel_width) {
    const double mid = std::sqrt(lo * hi);
    if ((quantity(mid) > query.threshold) == low_above) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.separation_a = std::sqrt(lo * hi);
  out.status = CrossoverStatus::converged;
  return out;
}

}  // namespace cpforce
