// SPDX-License-Identifier: MIT
// Taylor coefficients at s = 0 of the auxiliary h-functions, and the
// partial-fraction constants behind their logarithmic part.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dirzeta/kvalue.hpp"
#include "dirzeta/spec.hpp"

namespace dirzeta {

/// Arguments (j, Pset, k) of Q^0 / Q^1.  Indices are 0-based; pset is sorted
/// and a strict subset of [0, P); k runs over the complement in increasing order.
struct QContext {
  const Problem* problem = nullptr;
  unsigned j = 0;
  std::vector<unsigned> pset;
  MultiIndex k;

  std::vector<unsigned> complement() const;
  void validate() const;
};

/// Sorted complement of `set` in [0, n).
std::vector<unsigned> complement_of(const std::vector<unsigned>& set, unsigned n);

/// Decomposition of x^a * prod_i (cj_i + cf_i x)^{-e_i}:
///   poly(x) + sum_l C_l x^{-l} + sum_(l, i) D_(l, i) (cj_i + cf_i x)^{-l}.
/// Factors with the same root -cj_i/cf_i are merged; D is keyed by the first
/// factor of each such group.
struct PartialFraction {
  std::vector<Rational> poly;                                   ///< ascending coefficients
  std::map<unsigned, Rational> c_terms;                         ///< l -> C_l
  std::map<std::pair<unsigned, unsigned>, Rational> d_terms;    ///< (l, factor) -> D
  Rational e_const = 0;  ///< constant term of the primitive of poly vanishing at 1

  std::vector<Rational> cj, cf;  ///< the linear factors, as passed in

  /// Evaluates the decomposed form at x != 0, x != -cj_i/cf_i.
  Rational evaluate(const Rational& x) const;
};

PartialFraction decompose(long a, const std::vector<Rational>& cj, const std::vector<Rational>& cf,
                          const std::vector<unsigned>& e);

/// Evaluates x^a prod_i (cj_i + cf_i x)^{-e_i} directly.
Rational rational_source(long a, const std::vector<Rational>& cj, const std::vector<Rational>& cf,
                         const std::vector<unsigned>& e, const Rational& x);

/// Constant term, as eps -> 0, of int_eps^1 of the decomposed function.
KValue f_constant(const PartialFraction& pf);

/// Per-p index vectors: v[i] belongs to pset[i] and w[i] to complement()[i];
/// each has length Q (entries at excluded q are zero).
using IndexFamily = std::vector<MultiIndex>;

/// The rational function of block 2 for (f, v, w):
/// x^{-N'_f - 1 + w(f)} prod_{p in Pset} (c_{j,p} + c_{f,p} x)^{-N_p - 1 - |v_p|}.
PartialFraction partial_fractions(const QContext& ctx, unsigned f, const IndexFamily& v, const IndexFamily& w);
KValue f_constant(const QContext& ctx, unsigned f, const IndexFamily& v, const IndexFamily& w);

Rational q0(const QContext& ctx);
/// Q0 without the prod_{p in Pset} c_{j,p}^{-N_p-1-|v_p|} factor, as displayed in the
/// literature statement.  It disagrees with h(0) whenever some c_{j,p} != 1.
Rational q0_printed(const QContext& ctx);
KValue q1(const QContext& ctx);

}  // namespace dirzeta
