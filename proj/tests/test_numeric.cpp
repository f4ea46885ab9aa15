// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/constants/constants.hpp>

#include "dirzeta/numeric.hpp"

using namespace dirzeta;

namespace {

// Frozen from an independent arbitrary-precision evaluation (45 digits).
const char* const kZetaFifth = "-0.733920924896340592243809613755136866649128694";
const char* const kZetaFifthHalf = "-0.109132834229988321033717175447012072535170227";
const char* const kLnGammaThird = "0.9854206469277670691871740369779613917355";
const char* const kEuler = "0.5772156649015328606065120900824024310422";

Real R(const char* s) { return Real(s); }
double rel(const Real& a, const Real& b) { return static_cast<double>(abs(a - b) / abs(b)); }

}  // namespace

TEST_CASE("precision bounds") {
  CHECK_NOTHROW(Precision{15}.validate());
  CHECK_NOTHROW(Precision{50}.validate());
  CHECK_THROWS_AS(Precision{14}.validate(), DomainError);
  CHECK_THROWS_AS(Precision{51}.validate(), DomainError);
}

TEST_CASE("hurwitz zeta against a direct sum") {
  // zeta(2, 1) - sum_{n < 2000} (n + 1)^-2 is bounded by the integral tail.
  double partial = 0;
  for (int n = 1999; n >= 0; --n) partial += 1.0 / ((n + 1.0) * (n + 1.0));
  const double tail = 1.0 / 2000.5;
  CHECK(zeta_em(2.0, 1.0) == doctest::Approx(partial + tail).epsilon(1e-9));
  CHECK(zeta_em(2.0, 1.0) == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-15));
}

TEST_CASE("hurwitz zeta reference values at two precisions") {
  for (int digits : {20, 40}) {
    const Precision prec{digits};
    const double tol = std::pow(10.0, -digits + 2);
    CHECK(rel(zeta_em(Real("0.2"), Real(1), prec), R(kZetaFifth)) < tol);
    CHECK(rel(zeta_em(Real("0.2"), Real("0.5"), prec), R(kZetaFifthHalf)) < tol);
  }
  CHECK(zeta_em(-1.5, 1.0 / 3) == doctest::Approx(-0.003531462856495216740).epsilon(1e-12));
  CHECK_THROWS_AS(zeta_em(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(zeta_em(2.0, 0.0), DomainError);
}

TEST_CASE("hurwitz zeta shift and derivative identities") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> sd(-3.5, 3.5), dd(0.1, 3.0);
  for (int t = 0; t < 30; ++t) {
    const double s = sd(rng), d = dd(rng);
    if (std::abs(s - 1) < 0.05) continue;
    // zeta(s, d) - zeta(s, d + 1) = d^-s
    CHECK(zeta_em(s, d) - zeta_em(s, d + 1) == doctest::Approx(std::pow(d, -s)).epsilon(1e-10));
    // the derivative matches a central difference
    const double h = 1e-4;
    const double fd = (zeta_em(s + h, d) - zeta_em(s - h, d)) / (2 * h);
    CHECK(zeta_em_deriv(s, d) == doctest::Approx(fd).epsilon(1e-6));
  }
  // zeta'(0) = -ln(2 pi)/2 and zeta'(0, d) = ln Gamma(d) - ln(2 pi)/2
  const Real zp0 = zeta_em_deriv(Real(0), Real(1));
  CHECK(rel(zp0, -log(2 * boost::math::constants::pi<Real>()) / 2) < 1e-28);
  CHECK(zeta_em_deriv(0.0, 1.0 / 6) == doctest::Approx(0.797794901873567718747516573182313117418).epsilon(1e-13));
  CHECK(zeta_em_deriv(-1.0, 1.0) == doctest::Approx(-0.165421143700450929213919660242780642764).epsilon(1e-13));
}

TEST_CASE("log gamma and euler's constant") {
  CHECK(rel(ln_gamma(Real(1) / 3), R(kLnGammaThird)) < 1e-28);
  CHECK(rel(euler_gamma(), R(kEuler)) < 1e-28);
  CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(rel(ln_pi(), log(boost::math::constants::pi<Real>())) < 1e-28);
  CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> xd(0.05, 20.0);
  for (int t = 0; t < 30; ++t) {
    const double x = xd(rng);
    CHECK(ln_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
  }
}

TEST_CASE("reciprocal gamma") {
  CHECK(rgamma(0.0) == 0.0);
  CHECK(rgamma(-3.0) == 0.0);
  CHECK(rgamma(4.0) == doctest::Approx(1.0 / 6));
  CHECK(rgamma(-0.5) == doctest::Approx(1.0 / std::tgamma(-0.5)).epsilon(1e-13));
}

TEST_CASE("incomplete gamma") {
  CHECK(inc_gamma_upper(0.5, 2.0, 1.0) == doctest::Approx(0.08064711796031769078862607302130517570136).epsilon(1e-10));
  CHECK(inc_gamma_upper(-1.5, 0.7, 1.0) == doctest::Approx(0.3333343440966118584640732032513351037657).epsilon(1e-10));
  CHECK(inc_gamma_lower(2.0, 1.5, 1.0) == doctest::Approx(0.4421745996289254276667988230899686966446).epsilon(1e-10));
  // scaling: Gamma(s, theta, nu) = nu^-s Gamma(s, nu theta, 1)
  CHECK(inc_gamma_upper(0.7, 0.3, 2.5) ==
        doctest::Approx(std::pow(2.5, -0.7) * inc_gamma_upper(0.7, 0.75, 1.0)).epsilon(1e-10));
  // lower + upper = Gamma(s) nu^-s
  CHECK(inc_gamma_lower(1.3, 0.4, 3.0) + inc_gamma_upper(1.3, 0.4, 3.0) ==
        doctest::Approx(std::tgamma(1.3) * std::pow(3.0, -1.3)).epsilon(1e-10));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ad(-4.0, 4.0), xd(0.05, 6.0);
  for (int t = 0; t < 25; ++t) {
    const double a = ad(rng), x = xd(rng);
    CHECK(upper_gamma_classic(a, x) == doctest::Approx(inc_gamma_upper(a, x, 1.0)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(inc_gamma_upper(0.5, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(inc_gamma_upper(0.5, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(inc_gamma_lower(-0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(upper_gamma_classic(0.5, 0.0), DomainError);
}

TEST_CASE("hypercube quadrature") {
  const auto f = [](const double* x) { return 1.0 / std::sqrt(x[0] + x[1]); };
  const QuadResult r = quad_cube(f, {-0.5, -0.5});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(4.0 / 3 * (2 * std::sqrt(2.0) - 2)).epsilon(1e-10));

  const auto g = [](const double* x) { return std::pow(x[0], -0.5) * x[1] * x[2]; };
  CHECK(quad_cube(g, {-0.5, 0, 0}).value == doctest::Approx(0.5).epsilon(1e-10));

  // weighted form: int x^-0.75 y^0.5 (1 + x y) = 4 * 2/3 + (4/5)(2/5)
  const auto w = [](const double* x, double* out) { out[0] = 1 + x[0] * x[1]; };
  const QuadVecResult v = quad_cube_weighted(w, 1, {-0.75, 0.5});
  CHECK(v.converged);
  CHECK(v.value[0] == doctest::Approx(4.0 * 2 / 3 + 0.8 * 0.4).epsilon(1e-10));

  const auto one = [](const double*) { return 1.0; };
  CHECK_THROWS_AS(quad_cube(one, {0, 0, 0, 0, 0}), DomainError);
  CHECK_THROWS_AS(quad_cube(one, {-1.0}), DomainError);
}
