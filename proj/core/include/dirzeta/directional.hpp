// SPDX-License-Identifier: MIT
// Directional values and derivative values of the generalized Hurwitz
// multizeta function at -(N, N'), the theta-split analytic continuation at
// generic real s, residues at simple poles, and the h-function quadrature.
#pragma once

#include <string>
#include <vector>

#include "dirzeta/kvalue.hpp"
#include "dirzeta/numeric.hpp"
#include "dirzeta/qengine.hpp"
#include "dirzeta/spec.hpp"

namespace dirzeta {

struct ZBlocks {
  KValue z1, z2, z3, z4;
};

struct DirectionalResult {
  Rational value;
  KValue derivative;  ///< z1 + z2 + z3 - z4
  ZBlocks blocks;
};

Rational value_at(const Problem& problem);
/// The same sum with q0_printed in place of q0.
Rational value_at_printed(const Problem& problem);
KValue derivative_at(const Problem& problem, ZBlocks* blocks = nullptr);
DirectionalResult evaluate(const Problem& problem);

struct ContinuationParams {
  double theta = 0;          ///< 0 selects default_theta()
  double delta = 1e-3;       ///< minimal distance to the singular set
  double tol = 1e-13;        ///< truncation tolerance for both series (relative)
  unsigned k_max = 80;       ///< hard cap on |k| in the J series
  unsigned n_max = 200000;   ///< hard cap on the shell index of the K lattice sum
  bool finite_part = false;  ///< near a singular point, return the symmetric finite part
  QuadOptions quad{1e-14, 1e-12, 40'000'000};
};

/// 1/(4 Q M r'^2), r' = max(2, max d, 1/min d), M = max c.
double default_theta(const HurwitzSpec& spec);
/// Supremum of admissible theta: 1/(Q M r'^2).
double theta_bound(const HurwitzSpec& spec);

struct ContinuationResult {
  double value = 0;
  double j_part = 0;
  double k_part = 0;
  double theta = 0;
  unsigned k_terms = 0;  ///< largest |k| used in J
  unsigned shells = 0;   ///< lattice shells summed in K
  double error = 0;      ///< truncation / extrapolation estimate
  bool converged = false;
  bool finite_part = false;
};

ContinuationResult continuation_eval(const Problem& problem, double s, const ContinuationParams& params = {});

/// Points of the (hypothetical) singular set in [lo, hi], sorted.
std::vector<Rational> singularities(const Problem& problem, const Rational& lo, const Rational& hi);
/// Distance from s to the singular set, capped at 2.
double distance_to_singularities(const Problem& problem, double s);

struct ResidueTerm {
  std::vector<unsigned> pset;  ///< 0-based; equal to [0, P) for the full family
  unsigned j = 0;
  MultiIndex k;
  double value = 0;
};

struct ResidueResult {
  double value = 0;   ///< fine level
  double coarse = 0;  ///< same bookkeeping at a looser quadrature tolerance
  std::vector<ResidueTerm> terms;
};

/// Residue of the continuation at a simple pole s0 of the second family.
ResidueResult residue_at(const Problem& problem, const Rational& s0, const ContinuationParams& params = {});

struct HValues {
  std::vector<double> value;
  std::vector<double> error;
  bool converged = false;
};

/// h_{P, j, k}(s) for each k in ks (indexed by the complement of pset), each
/// multiplied by scale[i] when scales is non-empty.  pset = [0, P) gives the
/// full-family function; ks must then hold one empty index.
HValues h_eval(const Problem& problem, const std::vector<unsigned>& pset, unsigned j, const std::vector<MultiIndex>& ks,
               double s, const QuadOptions& opt = {}, const std::vector<double>& scales = {});

struct HOracle {
  double h0 = 0;
  double h0prime = 0;
  double condition = 0;  ///< sum of |l_i'(0)| over the Lagrange basis
  std::vector<double> samples;
  std::vector<double> values;
};

/// 0.4, 0.2, 0.1, 0.05, 0.025.
std::vector<double> default_oracle_samples();

/// Value and slope at s = 0 of the interpolant of h through the samples; needs N' = 0.
HOracle h_oracle(const QContext& ctx, const std::vector<double>& samples = default_oracle_samples());

}  // namespace dirzeta
