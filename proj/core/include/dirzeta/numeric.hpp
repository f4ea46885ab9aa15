// SPDX-License-Identifier: MIT
// Floating kernels: Hurwitz zeta by Euler-Maclaurin, log-gamma, Euler's
// constant, incomplete gamma functions and hypercube quadrature.
#pragma once

#include <functional>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "dirzeta/rational.hpp"

namespace dirzeta {

/// 100 decimal digits of fixed binary precision; covers targets up to 50 digits.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>,
                                           boost::multiprecision::et_off>;

struct Precision {
  int digits = 30;  ///< target significant digits, 15..50

  static constexpr int kMaxDigits = 50;
  static constexpr int kWorkingDigits = 100;

  void validate() const;
  /// Relative tolerance for the multiprecision kernels.
  Real tolerance() const;
};

Real to_real(const Rational& r);

/// zeta(s, d) for real s != 1 and d > 0.
Real zeta_em(const Real& s, const Real& d, const Precision& prec = {});
/// d/ds zeta(s, d).
Real zeta_em_deriv(const Real& s, const Real& d, const Precision& prec = {});

double zeta_em(double s, double d);
double zeta_em_deriv(double s, double d);

/// log Gamma(x) for x > 0 by the Stirling series after an upward shift.
Real ln_gamma(const Real& x, const Precision& prec = {});
double ln_gamma(double x);

Real euler_gamma(const Precision& prec = {});

Real ln_pi(const Precision& prec = {});

/// 1/Gamma(x), entire; exact zero at nonpositive integers.
double rgamma(double x);

/// Gamma(s, theta, nu) = int_theta^inf exp(-nu y) y^(s-1) dy by adaptive quadrature.
double inc_gamma_upper(double s, double theta, double nu, const Precision& prec = {});

/// gamma(s, theta, nu) = int_0^theta exp(-nu y) y^(s-1) dy for s > 0.
double inc_gamma_lower(double s, double theta, double nu, const Precision& prec = {});

/// Classical upper incomplete gamma Gamma(a, x), any real a, x > 0, by series /
/// continued fraction with downward recurrence for a <= 0.  Fast path used in
/// lattice sums; cross-checked against inc_gamma_upper.
double upper_gamma_classic(double a, double x);

struct QuadResult {
  double value = 0;
  double error = 0;
  long evaluations = 0;
  bool converged = false;
};

struct QuadVecResult {
  std::vector<double> value;
  std::vector<double> error;
  long evaluations = 0;
  bool converged = false;
};

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  long max_evaluations = 40'000'000;
};

/// Integrand of the weighted form: regular part g(x) written into out[0..m).
using VecIntegrand = std::function<void(const double* x, double* out)>;

/// int_[0,1]^k prod_q x_q^{e_q} g(x) dx; axes with -1 < e_q < 0 are flattened by
/// x_q = t^{1/(1+e_q)}, the others carry x^e as a bounded weight.  g is assumed
/// smooth up to the faces.  Vector-valued; every component must meet the tolerance.
QuadVecResult quad_cube_weighted(const VecIntegrand& g, int m, const std::vector<double>& exps,
                                 const QuadOptions& opt = {});

/// int_[0,1]^k f(x) dx where |f| <= C prod x_q^{e_q} near each face x_q = 0.
/// Rejects k > 4 and any e_q <= -1.
QuadResult quad_cube(const std::function<double(const double*)>& f,
                     const std::vector<double>& singular_exponents, const Precision& prec = {});

}  // namespace dirzeta
