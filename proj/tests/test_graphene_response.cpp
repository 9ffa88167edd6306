#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "cpforce/constants.hpp"
#include "cpforce/graphene_response.hpp"
#include "cpforce/kinematics.hpp"

using namespace cpforce;

namespace {

Scenario scenario(double a_um, double temp_k = 300.0) {
  Scenario s;
  s.separation_a = a_um * 1e-6;
  s.temperature_t = temp_k;
  return s;
}

}  // namespace

TEST_CASE("angular factor psi") {
  CHECK(psi(0.0) == M_PI);  // 2 arctan(inf), exact
  CHECK(psi(1.0) == 2.0);   // the (1 - d^2) term vanishes, exact
  CHECK(psi(0.5) == doctest::Approx(2.6607230766911356).epsilon(1e-14));
  CHECK(psi(1.2313) == doctest::Approx(1.7585310733018193).epsilon(1e-14));
  CHECK(psi(100.0) == doctest::Approx(0.026665600068582762).epsilon(1e-14));
  CHECK(psi(2000.0) == doctest::Approx(0.0013333332000000214).epsilon(1e-14));

  // continuity across the series switchover (the direct form loses ~6 digits
  // to cancellation there, which is what the series branch repairs)
  const double below = psi(1.0e3 * (1.0 - 1e-9));
  const double above = psi(1.0e3 * (1.0 + 1e-9));
  CHECK(below == doctest::Approx(above).epsilon(1e-9));
  CHECK(psi(1e6) == doctest::Approx(8.0 / (3.0e6)).epsilon(1e-10));

  // monotone decreasing, nonnegative
  double prev = psi(0.0);
  for (double d = 0.125; d <= 4096.0; d *= 2.0) {
    const double value = psi(d);
    CHECK(value >= 0.0);
    CHECK(value < prev);
    prev = value;
  }
  CHECK_THROWS_AS(psi(-0.1), std::invalid_argument);
}

TEST_CASE("thermal occupation weight") {
  // undoped, u = 0: two half-filled levels
  CHECK(fermi_weight(0.0, 3.0, 0.0, 300.0) == 1.0);

  // bounded in [0, 2) over a wide parameter sweep (deep tails are allowed to
  // underflow to an exact 0)
  for (double u : {0.0, 0.3, 2.0, 50.0, 4000.0}) {
    for (double b : {1e-6, 0.3, 7.0}) {
      for (double mu : {0.0, 0.05, 0.25, 3.0}) {
        const double w = fermi_weight(u, b, mu, 300.0);
        CHECK(w >= 0.0);
        CHECK(w <= 2.0);
      }
    }
  }

  // exactly even in the sign of mu (term swap only)
  for (double u : {0.1, 1.7, 42.0}) {
    CHECK(fermi_weight(u, 2.0, 0.1, 300.0) == fermi_weight(u, 2.0, -0.1, 300.0));
  }

  // decreasing in u, increasing in mu below the chemical potential
  CHECK(fermi_weight(1.0, 2.0, 0.1, 300.0) > fermi_weight(2.0, 2.0, 0.1, 300.0));
  CHECK(fermi_weight(1.0, 2.0, 0.2, 300.0) > fermi_weight(1.0, 2.0, 0.1, 300.0));

  // deep tail underflows gracefully to 0, no NaN
  CHECK(fermi_weight(1e6, 10.0, 0.0, 300.0) == 0.0);
}

TEST_CASE("static thermal log factor") {
  CHECK(log_factor(0.0, 0.0, 300.0) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(log_factor(0.2, 0.0, 300.0) ==
        doctest::Approx(0.04136236215017221).epsilon(1e-12));
  CHECK(log_factor(0.2, 0.1, 300.0) ==
        doctest::Approx(0.6935837497400508).epsilon(1e-12));
  CHECK(log_factor(0.3, 0.075, 300.0) ==
        doctest::Approx(0.05366990720002426).epsilon(1e-12));

  // even in mu and overflow-safe for huge arguments
  CHECK(log_factor(0.3, 0.075, 300.0) == log_factor(0.3, -0.075, 300.0));
  // for mu >> Delta, kT: L -> (mu - Delta/2)/kT
  const double kt = kt_ev(300.0);
  CHECK(log_factor(0.2, 50.0, 300.0) ==
        doctest::Approx((50.0 - 0.1) / kt).epsilon(1e-9));
  CHECK(std::isfinite(log_factor(500.0, 0.0, 300.0)));
}

TEST_CASE("static polarization at reference points") {
  const NumericsConfig cfg;

  // (a = 5.6 um, undoped, gapless), y = 1
  const PolarizationPoint p1 =
      polarization(0, 1.0, scenario(5.6), GrapheneParams{0.0, 0.0}, cfg);
  CHECK(p1.pi00 == doctest::Approx(10687.571821686477).epsilon(1e-8));
  CHECK(p1.pi_te == doctest::Approx(3.683882991155969e-08).epsilon(1e-5));

  // (a = 6 um, Delta = 0.2 eV, mu = 0.1 eV), y = 1
  const PolarizationPoint p2 =
      polarization(0, 1.0, scenario(6.0), GrapheneParams{0.2, 0.1}, cfg);
  CHECK(p2.pi00 == doctest::Approx(21718.835874874872).epsilon(1e-8));

  // (a = 5.6 um, Delta = 0.3 eV, mu = 0.075 eV), y = 5
  CHECK(pi00(0, 5.0, scenario(5.6), GrapheneParams{0.3, 0.075}, cfg) ==
        doctest::Approx(2751.6630869776427).epsilon(1e-8));

  // (a = 6 um, Delta = 0.1 eV, mu = 0.25 eV), y = 1
  CHECK(pi00(0, 1.0, scenario(6.0), GrapheneParams{0.1, 0.25}, cfg) ==
        doctest::Approx(79875.85263307176).epsilon(1e-8));

  // (a = 10 um, Delta = 0.2 eV, undoped), y = 10
  const PolarizationPoint p5 =
      polarization(0, 10.0, scenario(10.0), GrapheneParams{0.2, 0.0}, cfg);
  CHECK(p5.pi00 == doctest::Approx(2749.55074097773).epsilon(1e-8));
  CHECK(p5.pi_te == doctest::Approx(1.0229737965376284e-04).epsilon(1e-5));

  // y = 0 static limit: pi00 keeps only the thermal log term, pi_te vanishes
  const Scenario s6 = scenario(6.0);
  const GrapheneParams g{0.2, 0.1};
  const PolarizationPoint p0 = polarization(0, 0.0, s6, g, cfg);
  CHECK(p0.pi00 ==
        doctest::Approx(log_term_prefactor(s6, g) * log_factor(0.2, 0.1, 300.0))
            .epsilon(1e-12));
  CHECK(p0.pi_te == 0.0);
  CHECK(std::isinf(p0.pi00_reduced));
}

TEST_CASE("general-frequency polarization at reference points") {
  const NumericsConfig cfg;

  // l = 1, y = 12, a = 6 um, Delta = 0.2 eV, mu = 0.1 eV
  const PolarizationPoint q1 =
      polarization(1, 12.0, scenario(6.0), GrapheneParams{0.2, 0.1}, cfg);
  CHECK(q1.pi00 == doctest::Approx(0.07774780440632527).epsilon(1e-9));
  CHECK(q1.pi_te == doctest::Approx(7.58625718316009).epsilon(1e-9));

  // l = 1, y = 11, a = 5.6 um, gapless undoped
  const PolarizationPoint q2 =
      polarization(1, 11.0, scenario(5.6), GrapheneParams{0.0, 0.0}, cfg);
  CHECK(q2.pi00 == doctest::Approx(0.09318867289741134).epsilon(1e-9));
  CHECK(q2.pi_te == doctest::Approx(7.920929720099733).epsilon(1e-9));

  // l = 2, y = 20, a = 5.6 um, gapless, mu = 0.25 eV
  const PolarizationPoint q3 =
      polarization(2, 20.0, scenario(5.6), GrapheneParams{0.0, 0.25}, cfg);
  CHECK(q3.pi00 == doctest::Approx(0.10102355145121282).epsilon(1e-9));
  CHECK(q3.pi_te == doctest::Approx(34.347436115340535).epsilon(1e-9));

  // reduced fields are consistent with the full values away from y = zeta
  const double denom = q1.y * q1.y - q1.zeta_l * q1.zeta_l;
  CHECK(q1.pi00_reduced == doctest::Approx(q1.pi00 / denom).epsilon(1e-12));
  CHECK(q1.pi_te_reduced == doctest::Approx(q1.pi_te / denom).epsilon(1e-12));

  // a huge gap suppresses the response (algebraically, like 1/gap)
  const PolarizationPoint tiny =
      polarization(1, 12.0, scenario(6.0), GrapheneParams{500.0, 0.0}, cfg);
  CHECK(tiny.pi00 * 100.0 < q1.pi00);
  CHECK(tiny.pi_te * 100.0 < q1.pi_te);

  CHECK_THROWS_AS(polarization_at_zeta(0.0, 1.0, scenario(6.0),
                                       GrapheneParams{0.2, 0.0}, cfg),
                  std::invalid_argument);
}

TEST_CASE("polarization is nonnegative and even in the doping") {
  const NumericsConfig cfg;
  std::mt19937_64 rng(20260815u);
  std::uniform_real_distribution<double> a_um(1.0, 30.0);
  std::uniform_real_distribution<double> gap(0.0, 0.5);
  std::uniform_real_distribution<double> doping(0.0, 0.3);
  std::uniform_int_distribution<int> index(0, 10);
  std::uniform_real_distribution<double> offset(0.0, 25.0);

  for (int trial = 0; trial < 40; ++trial) {
    const Scenario s = scenario(a_um(rng));
    const GrapheneParams g{gap(rng), doping(rng)};
    const int l = index(rng);
    const double y = matsubara_zeta(l, s) + offset(rng);
    const PolarizationPoint p = polarization(l, y, s, g, cfg);
    CHECK(p.pi00 >= 0.0);
    CHECK(p.pi_te >= 0.0);
    CHECK(p.pi00_reduced >= 0.0);
    CHECK(p.pi_te_reduced >= 0.0);
  }
}

TEST_CASE("polarization is even in the doping sign") {
  // Negative dopings are rejected at the parameter level; the evenness of the
  // response lives in its thermal building blocks, bitwise.
  for (double u : {0.0, 0.4, 3.0, 80.0}) {
    for (double b : {0.01, 1.5, 9.0}) {
      CHECK(fermi_weight(u, b, 0.17, 300.0) == fermi_weight(u, b, -0.17, 300.0));
    }
  }
  CHECK(log_factor(0.25, 0.08, 300.0) == log_factor(0.25, -0.08, 300.0));
  CHECK(log_factor(0.0, 0.3, 77.0) == log_factor(0.0, -0.3, 77.0));
}

TEST_CASE("polarization decreases with gap and increases with doping") {
  const NumericsConfig cfg;
  const Scenario s = scenario(6.0);

  // static response at y = 1: doping adds carriers, a gap removes them
  double prev = pi00(0, 1.0, s, GrapheneParams{0.0, 0.0}, cfg);
  for (double gap : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double value = pi00(0, 1.0, s, GrapheneParams{gap, 0.0}, cfg);
    CHECK(value < prev);
    prev = value;
  }
  prev = pi00(0, 1.0, s, GrapheneParams{0.2, 0.0}, cfg);
  for (double mu : {0.05, 0.1, 0.2, 0.3}) {
    const double value = pi00(0, 1.0, s, GrapheneParams{0.2, mu}, cfg);
    CHECK(value > prev);
    prev = value;
  }

  // same ordering for the general-frequency component
  prev = pi00(1, 12.0, s, GrapheneParams{0.0, 0.0}, cfg);
  for (double gap : {0.1, 0.2, 0.3}) {
    const double value = pi00(1, 12.0, s, GrapheneParams{gap, 0.0}, cfg);
    CHECK(value < prev);
    prev = value;
  }
}

TEST_CASE("general form matches the static form as zeta -> 0") {
  const NumericsConfig cfg;
  const struct {
    double a_um, delta, mu, y;
  } pts[] = {{5.6, 0.0, 0.0, 1.0}, {6.0, 0.2, 0.1, 1.0}, {5.6, 0.3, 0.075, 5.0}};

  for (const auto& pt : pts) {
    const Scenario s = scenario(pt.a_um);
    const GrapheneParams g{pt.delta, pt.mu};
    const double static_value = pi00(0, pt.y, s, g, cfg);
    const double limit_value =
        polarization_at_zeta(1e-9, pt.y, s, g, cfg).pi00;
    CHECK(limit_value == doctest::Approx(static_value).epsilon(1e-4));
  }

  // the transverse component approaches its static value far more slowly
  // (its gap shrinks roughly linearly in zeta); check the trend only.
  const Scenario s = scenario(6.0);
  const GrapheneParams g{0.2, 0.1};
  const double te_static = pi_te(0, 1.0, s, g, cfg);
  const double gap_coarse =
      std::abs(polarization_at_zeta(1e-7, 1.0, s, g, cfg).pi_te - te_static);
  const double gap_fine =
      std::abs(polarization_at_zeta(1e-9, 1.0, s, g, cfg).pi_te - te_static);
  CHECK(gap_fine * 20.0 <= gap_coarse);
}

TEST_CASE("closed-form static response at large separation") {
  CHECK(pi00_asymptotic(scenario(5.6), GrapheneParams{0.0, 0.0}) ==
        doctest::Approx(10687.570163939059).epsilon(1e-12));
  CHECK(pi00_asymptotic(scenario(6.0), GrapheneParams{0.2, 0.1}) ==
        doctest::Approx(21718.83585056126).epsilon(1e-12));
  CHECK(pi00_asymptotic(scenario(6.0), GrapheneParams{0.1, 0.25}) ==
        doctest::Approx(79875.85263308622).epsilon(1e-12));

  // gapless undoped: exactly prefactor * ln 4
  const Scenario s = scenario(5.6);
  const GrapheneParams g0{0.0, 0.0};
  CHECK(pi00_asymptotic(s, g0) ==
        doctest::Approx(log_term_prefactor(s, g0) * std::log(4.0)).epsilon(1e-14));

  // gapless doped: prefactor * 2 ln(2 cosh(mu / 2kT))
  const GrapheneParams gd{0.0, 0.1};
  const double x = 0.1 / (2.0 * kt_ev(300.0));
  CHECK(pi00_asymptotic(s, gd) ==
        doctest::Approx(log_term_prefactor(s, gd) * 2.0 *
                        std::log(2.0 * std::cosh(x)))
            .epsilon(1e-12));

  // matches the quadrature evaluation of pi00(l = 0, y = 1)
  const NumericsConfig cfg;
  for (const auto& [a_um, delta, mu] :
       {std::tuple{5.6, 0.0, 0.0}, {6.0, 0.2, 0.1}, {6.0, 0.1, 0.25}}) {
    const double exact = pi00(0, 1.0, scenario(a_um), GrapheneParams{delta, mu}, cfg);
    const double closed = pi00_asymptotic(scenario(a_um), GrapheneParams{delta, mu});
    CHECK(closed == doctest::Approx(exact).epsilon(5e-3));
  }

  // warning triggers once the separation parameter drops below 10
  std::string warning;
  pi00_asymptotic(scenario(5.6), GrapheneParams{0.0, 0.0}, &warning);
  CHECK(warning.empty());
  pi00_asymptotic(scenario(0.005), GrapheneParams{0.0, 0.0}, &warning);
  CHECK_FALSE(warning.empty());
  CHECK(asymptotic_parameter(scenario(0.005), GrapheneParams{0.0, 0.0}) < 10.0);
  CHECK(asymptotic_parameter(scenario(5.6), GrapheneParams{0.0, 0.0}) > 10.0);
}

TEST_CASE("tightening tolerances leaves reference values fixed") {
  NumericsConfig tight;
  tight.rel_tol = 1e-10;
  tight.abs_tol_dimensionless = 1e-12;
  const NumericsConfig base;

  const Scenario s = scenario(6.0);
  const GrapheneParams g{0.2, 0.1};
  CHECK(pi00(0, 1.0, s, g, tight) ==
        doctest::Approx(pi00(0, 1.0, s, g, base)).epsilon(1e-9));
  CHECK(pi00(1, 12.0, s, g, tight) ==
        doctest::Approx(pi00(1, 12.0, s, g, base)).epsilon(1e-9));
  CHECK(pi_te(1, 12.0, s, g, tight) ==
        doctest::Approx(pi_te(1, 12.0, s, g, base)).epsilon(1e-9));
}
