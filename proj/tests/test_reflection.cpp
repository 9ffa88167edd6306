#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>

#include "cpforce/constants.hpp"
#include "cpforce/kinematics.hpp"
#include "cpforce/materials.hpp"
#include "cpforce/reflection.hpp"

using namespace cpforce;

namespace {

Scenario scenario(double a_um, double temp_k = 300.0) {
  Scenario s;
  s.separation_a = a_um * 1e-6;
  s.temperature_t = temp_k;
  return s;
}

ReflectionPair coated(int l, double y, const Scenario& s, const GrapheneParams& g,
                      const SubstrateModel& substrate) {
  const PolarizationPoint pol = polarization(l, y, s, g);
  return reflection_coeffs(matsubara_zeta(l, s), y, permittivity(substrate, l, s), pol);
}

}  // namespace

TEST_CASE("ideal metal gives the exact constants") {
  const PermittivityValue metal{true, 0.0};
  for (double zeta : {0.0, 1.0, 50.0}) {
    for (double dy : {0.0, 0.3, 12.0}) {
      const ReflectionPair r = reflection_coeffs(zeta, zeta + dy, metal, {});
      CHECK(r.r_tm == 1.0);
      CHECK(r.r_te == -1.0);
    }
  }
}

TEST_CASE("uncoated vacuum does not reflect") {
  const ReflectionPair r = reflection_coeffs_raw(1.0, 2.0, 1.0, 0.0, 0.0);
  CHECK(r.r_tm == 0.0);
  CHECK(r.r_te == 0.0);
}

TEST_CASE("algebraic spot check of the coated TM coefficient") {
  // eps = 1, zeta = 1, y = 2 => k = y and r_tm = y r00 / (y r00 + 2) with
  // r00 = reduced response; r00 = 1 gives exactly 1/2.
  const ReflectionPair r = reflection_coeffs_raw(1.0, 2.0, 1.0, 1.0, 0.0);
  CHECK(r.r_tm == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("freestanding sheet closed forms") {
  // For eps = 1 the coefficients reduce, in terms of the full responses
  // P = (y^2 - zeta^2) pi00_reduced and T = (y^2 - zeta^2) pi_te_reduced, to
  //   r_tm =  y P / (y P + 2 (y^2 - zeta^2)),
  //   r_te = -T / (T + 2 y (y^2 - zeta^2)).
  const double zeta = 3.0;
  const double y = 5.0;
  const double r00 = 0.7;
  const double rte = 4.2;
  const ReflectionPair r = reflection_coeffs_raw(zeta, y, 1.0, r00, rte);
  const double q2 = y * y - zeta * zeta;
  const double p_full = q2 * r00;
  const double t_full = q2 * rte;
  CHECK(r.r_tm ==
        doctest::Approx(y * p_full / (y * p_full + 2.0 * q2)).epsilon(1e-14));
  CHECK(r.r_te ==
        doctest::Approx(-t_full / (t_full + 2.0 * y * q2)).epsilon(1e-14));
}

TEST_CASE("reference values for the coated substrate") {
  const SubstrateModel sio2 = SubstrateModel::builtin_sio2();

  // static term, a = 5.6 um, Delta = 0.2 eV, undoped, y = 1
  const Scenario s56 = scenario(5.6);
  const GrapheneParams g20{0.2, 0.0};
  const ReflectionPair r0 = coated(0, 1.0, s56, g20, sio2);
  CHECK(r0.r_tm == doctest::Approx(0.9987050855168346).epsilon(1e-8));
  CHECK(r0.r_te == doctest::Approx(-9.133702545681437e-09).epsilon(1e-4));

  // l = 1, y = 12, a = 6 um, Delta = 0.2 eV, mu = 0.1 eV
  const Scenario s6 = scenario(6.0);
  const GrapheneParams g21{0.2, 0.1};
  const ReflectionPair r1 = coated(1, 12.0, s6, g21, sio2);
  CHECK(r1.r_tm == doctest::Approx(0.30307358016312697).epsilon(1e-8));
  CHECK(r1.r_te == doctest::Approx(-0.1954683285315497).epsilon(1e-8));

  // freestanding sheet, same kinematics
  const ReflectionPair rf = coated(1, 12.0, s6, g21, SubstrateModel::vacuum());
  CHECK(rf.r_tm == doctest::Approx(0.009948173078672807).epsilon(1e-8));
  CHECK(rf.r_te == doctest::Approx(-0.006762626346038765).epsilon(1e-8));
}

TEST_CASE("grazing line y = zeta stays finite and polarization-symmetric") {
  // At y = zeta the sheet response is polarization-degenerate
  // (pi_te_reduced = zeta^2 pi00_reduced), which forces r_tm = -r_te for any
  // substrate permittivity.  The reduced form keeps the point finite.
  const Scenario s6 = scenario(6.0);
  const GrapheneParams g{0.2, 0.1};
  const double zeta1 = matsubara_zeta(1, s6);

  const ReflectionPair rs = coated(1, zeta1, s6, g, SubstrateModel::builtin_sio2());
  CHECK(std::isfinite(rs.r_tm));
  CHECK(std::isfinite(rs.r_te));
  CHECK(rs.r_tm == doctest::Approx(-rs.r_te).epsilon(1e-10));
  CHECK(rs.r_tm == doctest::Approx(0.2500279333404934).epsilon(1e-8));

  const ReflectionPair rv = coated(1, zeta1, s6, g, SubstrateModel::vacuum());
  CHECK(rv.r_tm == doctest::Approx(-rv.r_te).epsilon(1e-10));
  CHECK(rv.r_tm > 0.0);
  CHECK(rv.r_tm < rs.r_tm);  // the substrate can only add reflectivity here
}

TEST_CASE("static TM coefficient from the unreduced response") {
  // bare-substrate limit: the response drops out
  CHECK(r_tm_zero(0.7, 3.81, 0.0) ==
        doctest::Approx(2.81 / 4.81).epsilon(1e-14));

  // y-independence of the bare value
  CHECK(r_tm_zero(0.1, 3.81, 0.0) == doctest::Approx(r_tm_zero(5.0, 3.81, 0.0)).epsilon(1e-14));

  // huge response pins the coefficient to 1
  CHECK(r_tm_zero(1.0, 3.801, 1e12) == doctest::Approx(1.0).epsilon(1e-11));

  // eps0 = 1 with response equal to y: (1 + 1 - 1)/(1 + 1 + 1) = 1/3
  CHECK(r_tm_zero(2.0, 1.0, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // y = 0 limits: any positive response reflects perfectly; none falls back
  // to the Fresnel constant
  CHECK(r_tm_zero(0.0, 3.801, 5.0) == 1.0);
  CHECK(r_tm_zero(0.0, 3.801, 0.0) ==
        doctest::Approx(2.801 / 4.801).epsilon(1e-14));

  // increasing in the response and in the permittivity
  double prev = 0.0;
  for (double p : {0.0, 0.5, 2.0, 10.0, 1e4}) {
    const double value = r_tm_zero(1.0, 3.801, p);
    CHECK(value >= prev);
    prev = value;
  }
  CHECK(r_tm_zero(1.0, 5.0, 2.0) > r_tm_zero(1.0, 2.0, 2.0));
}

TEST_CASE("large-response approximation of the static TM coefficient") {
  // closed-form static response, gapless undoped, a = 5.6 um
  const double pi_one = 10687.570163939059;
  CHECK(r_tm_zero_approx(1.0, pi_one) ==
        doctest::Approx(0.9998128667256148).epsilon(1e-12));
  // the unapproximated coefficient at the same response: 0.9998129507506487
  CHECK(r_tm_zero(1.0, 3.801, pi_one) ==
        doctest::Approx(0.9998129507506487).epsilon(1e-12));
  // they agree to ~1e-7: the approximation drops the (eps0 + 1) y term
  CHECK(r_tm_zero_approx(1.0, pi_one) ==
        doctest::Approx(r_tm_zero(1.0, 3.801, pi_one)).epsilon(1e-6));

  std::string warning;
  r_tm_zero_approx(1.0, pi_one, &warning);
  CHECK(warning.empty());
  r_tm_zero_approx(1.0, 20.0, &warning);  // below 10 (eps0 + 1) = 48
  CHECK_FALSE(warning.empty());
}

TEST_CASE("physical bounds over a random parameter sweep") {
  const SubstrateModel sio2 = SubstrateModel::builtin_sio2();
  const SubstrateModel vac = SubstrateModel::vacuum();
  std::mt19937_64 rng(987654321u);
  std::uniform_real_distribution<double> a_um(1.0, 50.0);
  std::uniform_real_distribution<double> gap(0.0, 0.5);
  std::uniform_real_distribution<double> doping(0.0, 0.3);
  std::uniform_int_distribution<int> index(0, 12);
  std::uniform_real_distribution<double> offset(0.0, 30.0);
  std::uniform_int_distribution<int> which(0, 1);

  for (int trial = 0; trial < 200; ++trial) {
    const Scenario s = scenario(a_um(rng));
    const GrapheneParams g{gap(rng), doping(rng)};
    const int l = index(rng);
    const double y = matsubara_zeta(l, s) + offset(rng);
    const SubstrateModel& sub = which(rng) ? sio2 : vac;
    const ReflectionPair r = coated(l, y, s, g, sub);
    CHECK(r.r_tm >= 0.0);
    CHECK(r.r_tm <= 1.0);
    CHECK(r.r_te >= -1.0);
    CHECK(r.r_te <= 0.0);
  }
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(reflection_coeffs_raw(-1.0, 2.0, 3.8, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(reflection_coeffs_raw(3.0, 2.0, 3.8, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(reflection_coeffs_raw(1.0, 2.0, 0.5, 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("general form joins the static form at small zeta") {
  const Scenario s6 = scenario(6.0);
  const GrapheneParams g{0.2, 0.1};
  const SubstrateModel sio2 = SubstrateModel::builtin_sio2();
  const double eps0 = sio2.static_permittivity();
  const double y = 1.0;

  // TM: compare r_tm(zeta -> 0) against the static-term coefficient
  const PolarizationPoint pol_small = polarization_at_zeta(1e-9, y, s6, g);
  const ReflectionPair r_small =
      reflection_coeffs(1e-9, y, PermittivityValue{false, eps0}, pol_small);
  const double r_static = r_tm_zero(y, eps0, pi00(0, y, s6, g));
  CHECK(r_small.r_tm == doctest::Approx(r_static).epsilon(1e-4));

  // TE: the static term carries no transverse response; the general form's
  // coefficient must fade out as zeta -> 0.
  CHECK(std::abs(r_small.r_te) < 1e-5);
}
