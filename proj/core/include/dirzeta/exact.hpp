// SPDX-License-Identifier: MIT
// Bernoulli polynomials, combinatorial coefficients and exact Hurwitz values.
#pragma once

#include <functional>

#include "dirzeta/rational.hpp"

namespace dirzeta {

/// B_n(x) with B_1(x) = x - 1/2.
Rational bernoulli_poly(unsigned n, const Rational& x);

/// B_n = B_n(0).
Rational bernoulli_number(unsigned n);

/// zeta(-n, d) = -B_{n+1}(d)/(n+1); rejects d <= 0.
Rational hurwitz_zeta_neg(unsigned n, const Rational& d);

/// s(s-1)...(s-i+1)/i! for i >= 0, and 0 for i < 0.
Rational binom_shifted(const Rational& s, long i);

/// n!/prod k_p!; rejects |k| != n.
Rational multinomial(unsigned n, const MultiIndex& k);

/// h_n = 1 + 1/2 + ... + 1/n, h_0 = 0.
Rational harmonic(unsigned n);

/// All length-`parts` indices with entry sum `total`, in lexicographic order.
std::vector<MultiIndex> compositions(unsigned total, unsigned parts);

/// Streaming form of compositions(); stops early when fn returns false.
void for_each_composition(unsigned total, unsigned parts,
                          const std::function<bool(const MultiIndex&)>& fn);

}  // namespace dirzeta
