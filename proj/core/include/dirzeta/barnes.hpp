// SPDX-License-Identifier: MIT
// Generalized Barnes zeta functions
//   zeta^B(R, s, d | w) = sum_{n >= 0} prod_p (n_p + d_p)^{R_p} / (sum_p w_p (n_p + d_p))^s
// at nonpositive integers s = -m, for rational w.
#pragma once

#include <vector>

#include "dirzeta/kvalue.hpp"

namespace dirzeta {

struct BarnesSpec {
  MultiIndex R;
  std::vector<Rational> d;  ///< > 0
  std::vector<Rational> w;  ///< > 0
};

void validate(const BarnesSpec& spec);

/// zeta^B(R, s, d | w) = factor * wstar^{-s} * sum_terms zeta^B(R, s, shifted | 1).
struct BarnesReduction {
  Rational wstar;                            ///< lcm(numerators) / gcd(denominators)
  std::vector<Integer> beta;                 ///< wstar / w_p
  Rational factor;                           ///< prod_p beta_p^{R_p}
  std::vector<std::vector<Rational>> shifted;  ///< (d_p + u_p)/beta_p, 0 <= u_p < beta_p
};

BarnesReduction barnes_reduce(const BarnesSpec& spec);

/// Coefficients a_k with zeta^B(R, s, d | 1) = sum_k a_k zeta(s - k, |d|).
std::vector<Rational> barnes_unit_coefficients(const MultiIndex& R, const std::vector<Rational>& d);

/// zeta^B(R, -m, d | 1, ..., 1).
Rational barnes_one_value(const MultiIndex& R, unsigned m, const std::vector<Rational>& d);

/// The unit-coefficient formula with the subset roles as displayed in the
/// literature statement (products over P instead of its complement).  Kept only
/// for regression tests; it disagrees with the series for P = 1, R > 0.
Rational barnes_one_value_printed(const MultiIndex& R, unsigned m, const std::vector<Rational>& d);

/// zeta^B(R, -m, d | w) through the reduction.
Rational barnes_value(const MultiIndex& R, unsigned m, const std::vector<Rational>& d,
                      const std::vector<Rational>& w);

/// d/ds zeta^B(R, s, d | w) at s = -m, in canonical form.
KValue barnes_derivative(const MultiIndex& R, unsigned m, const std::vector<Rational>& d,
                         const std::vector<Rational>& w);

/// zeta^B(R, s, d | 1) at real s != |R| + 1, ..., via the coefficients above.
double barnes_unit_eval(const MultiIndex& R, double s, const std::vector<Rational>& d);

/// Partial sum of the defining series over n_p < n_max (for s > |R| + P).
double barnes_series(const BarnesSpec& spec, double s, unsigned n_max);

}  // namespace dirzeta
