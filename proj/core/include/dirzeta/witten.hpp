// SPDX-License-Identifier: MIT
// Witten zeta functions of so(5) and g2 at s = 0, the g2 residues, the
// Meinardus constants and the representation count r_g2(n).
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dirzeta/directional.hpp"
#include "dirzeta/kvalue.hpp"

namespace dirzeta {

/// zeta_g(0) for g in {so5, g2}.
Rational witten_value0(const std::string& name);
/// zeta_g'(0) = ln(weyl) zeta_g(0) + d/ds zeta^H(s, ..., s) at 0.
KValue witten_derivative0(const std::string& name);

/// theta = 0.02 (below the g2 bound 1/48), fine quadrature.
ContinuationParams g2_residue_params();

struct ResiduesG2 {
  double omega_alpha = 0;  ///< res_{s=1/3} zeta_g2
  double omega_beta = 0;   ///< res_{s=1/5} zeta_g2
  double err_alpha = 0;    ///< |fine - coarse| quadrature levels
  double err_beta = 0;
};

ResiduesG2 residues_g2(const ContinuationParams& params = g2_residue_params());

struct MeinardusData {
  Rational alpha{1, 3};
  Rational beta{1, 5};
  double omega_alpha = 0, omega_beta = 0;
  Rational zeta0;       ///< zeta_g2(0)
  double zeta_prime0 = 0;
  double c1 = 0, c2 = 0;
  double K2 = 0, K3 = 0;
  double A1 = 0, A2 = 0, A3 = 0;
  double A2_display = 0;  ///< A2 with Gamma(1/3) in the denominator, as displayed in the source
  double C = 0;
  Rational b;
};

MeinardusData meinardus_constants(const ContinuationParams& params = g2_residue_params());

/// P(i, j) = ij(i+j)(i+2j)(i+3j)(2i+3j)/120.
Integer g2_dimension(unsigned long i, unsigned long j);

struct PartsTable {
  unsigned long n_max = 0;
  std::map<unsigned long, unsigned> f;  ///< nonzero multiplicities only

  unsigned at(unsigned long n) const;
  unsigned long total() const;
};

PartsTable parts_table(unsigned long n_max);

/// r_g2(0..n_max) by the unlimited-parts recurrence.
std::vector<Integer> rg2_exact(unsigned long n_max);

/// C n^{-b} exp(A1 n^{1/4} + A2 n^{3/20} + A3 n^{1/20}).
double rg2_asymptotic(double n, const MeinardusData& data);
double rg2_log_asymptotic(double n, const MeinardusData& data);

}  // namespace dirzeta
