// SPDX-License-Identifier: MIT
#include "dirzeta/qengine.hpp"

#include <algorithm>

#include "dirzeta/exact.hpp"

namespace dirzeta {

std::vector<unsigned> complement_of(const std::vector<unsigned>& set, unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 0; p < n; ++p) {
    if (!std::binary_search(set.begin(), set.end(), p)) out.push_back(p);
  }
  return out;
}

std::vector<unsigned> QContext::complement() const { return complement_of(pset, problem->spec.P); }

void QContext::validate() const {
  if (problem == nullptr) throw DomainError("QContext: no problem attached");
  const auto& s = problem->spec;
  if (j >= s.Q) throw DomainError("QContext: j out of range");
  if (!std::is_sorted(pset.begin(), pset.end()) ||
      std::adjacent_find(pset.begin(), pset.end()) != pset.end()) {
    throw DomainError("QContext: Pset must be sorted without repeats");
  }
  if (!pset.empty() && pset.back() >= s.P) throw DomainError("QContext: Pset index out of range");
  if (pset.size() >= s.P) throw DomainError("QContext: Pset must be a strict subset");
  if (k.size() != s.P - pset.size()) throw DomainError("QContext: k must be indexed by the complement of Pset");
}

// ---------------------------------------------------------------------------
// Partial fractions

namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
  }
  return out;
}

// Quotient of x^a by a monic-free denominator (long division).
Poly poly_quotient_monomial(unsigned a, const Poly& den) {
  Poly rem(a + 1, Rational(0));
  rem[a] = 1;
  const std::size_t dd = den.size() - 1;
  if (a < dd) return {};
  Poly q(a - dd + 1, Rational(0));
  for (std::size_t i = a + 1; i-- > dd;) {
    Rational coef = rem[i] / den[dd];
    q[i - dd] = coef;
    if (coef == 0) continue;
    for (std::size_t k = 0; k <= dd; ++k) rem[i - dd + k] -= coef * den[k];
  }
  return q;
}

// First `order` Taylor coefficients at t = 0 of (x0 + r + t)^{-e}.
std::vector<Rational> taylor_linear(const Rational& base, long e, unsigned order) {
  std::vector<Rational> out(order, Rational(0));
  const Rational lead = ipow(base, -e);
  Rational inv = Rational(1) / base;
  Rational pw = 1;
  for (unsigned i = 0; i < order; ++i) {
    out[i] = lead * binom_shifted(Rational(-e), i) * pw;
    pw *= inv;
  }
  return out;
}

std::vector<Rational> series_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k + i < a.size() && k < b.size(); ++k) out[i + k] += a[i] * b[k];
  }
  return out;
}

struct RootGroup {
  Rational r;          // factor group is K * (x + r)^{-m}
  unsigned m = 0;
  unsigned rep = 0;    // first factor index in the group
  Rational scale = 1;  // prod cf_i^{-e_i} over the group
};

}  // namespace

Rational rational_source(long a, const std::vector<Rational>& cj, const std::vector<Rational>& cf,
                         const std::vector<unsigned>& e, const Rational& x) {
  Rational v = ipow(x, a);
  for (std::size_t i = 0; i < cj.size(); ++i) v *= ipow(cj[i] + cf[i] * x, -static_cast<long>(e[i]));
  return v;
}

PartialFraction decompose(long a, const std::vector<Rational>& cj, const std::vector<Rational>& cf,
                          const std::vector<unsigned>& e) {
  if (cj.size() != cf.size() || cj.size() != e.size()) throw DomainError("decompose: length mismatch");
  PartialFraction pf;
  pf.cj = cj;
  pf.cf = cf;
  std::vector<RootGroup> groups;
  for (unsigned i = 0; i < cj.size(); ++i) {
    if (!(cj[i] > 0) || !(cf[i] > 0)) throw DomainError("decompose: coefficients must be > 0");
    if (e[i] == 0) continue;
    Rational r = cj[i] / cf[i];
    auto it = std::find_if(groups.begin(), groups.end(), [&](const RootGroup& g) { return g.r == r; });
    if (it == groups.end()) {
      groups.push_back({r, 0, i, 1});
      it = groups.end() - 1;
    }
    it->m += e[i];
    it->scale *= ipow(cf[i], -static_cast<long>(e[i]));
  }
  Rational K = 1;
  for (const auto& g : groups) K *= g.scale;

  // Principal part at x0 of K x^a prod (x + r)^{-m}, pole of order `order`.
  auto principal = [&](const Rational& x0, unsigned order, long skip_group) {
    std::vector<Rational> ser(order, Rational(0));
    ser[0] = K;
    // x^a around x0 unless the pole is at 0 itself
    if (x0 != 0) {
      std::vector<Rational> xs(order, Rational(0));
      Rational inv = Rational(1) / x0;
      Rational pw = 1;
      const Rational lead = ipow(x0, a);
      for (unsigned i = 0; i < order; ++i) {
        xs[i] = lead * binom_shifted(Rational(a), i) * pw;
        pw *= inv;
      }
      ser = series_mul(ser, xs);
    }
    for (long gi = 0; gi < static_cast<long>(groups.size()); ++gi) {
      if (gi == skip_group) continue;
      ser = series_mul(ser, taylor_linear(x0 + groups[gi].r, groups[gi].m, order));
    }
    return ser;  // coefficient of (x - x0)^{order - l} is the l-th principal coefficient
  };

  if (a < 0) {
    const auto order = static_cast<unsigned>(-a);
    auto ser = principal(Rational(0), order, -1);
    for (unsigned l = 1; l <= order; ++l) {
      if (ser[order - l] != 0) pf.c_terms[l] = ser[order - l];
    }
  }
  for (long gi = 0; gi < static_cast<long>(groups.size()); ++gi) {
    const auto& g = groups[gi];
    auto ser = principal(-g.r, g.m, gi);
    for (unsigned l = 1; l <= g.m; ++l) {
      // (x + r)^{-l} = cf^l (cj + cf x)^{-l} for the representative factor
      Rational dl = ser[g.m - l] * ipow(cf[g.rep], static_cast<long>(l));
      if (dl != 0) pf.d_terms[{l, g.rep}] = dl;
    }
  }
  if (a >= 0) {
    Poly den{Rational(1)};
    for (const auto& g : groups) {
      for (unsigned i = 0; i < g.m; ++i) den = poly_mul(den, Poly{g.r, Rational(1)});
    }
    pf.poly = poly_quotient_monomial(static_cast<unsigned>(a), den);
    for (auto& c : pf.poly) c *= K;
    trim(pf.poly);
  }
  for (std::size_t i = 0; i < pf.poly.size(); ++i) pf.e_const -= pf.poly[i] / Rational(i + 1);
  return pf;
}

Rational PartialFraction::evaluate(const Rational& x) const {
  Rational v = 0, pw = 1;
  for (const auto& c : poly) {
    v += c * pw;
    pw *= x;
  }
  for (const auto& [l, c] : c_terms) v += c * ipow(x, -static_cast<long>(l));
  for (const auto& [key, c] : d_terms) {
    const auto [l, i] = key;
    v += c * ipow(cj[i] + cf[i] * x, -static_cast<long>(l));
  }
  return v;
}

KValue f_constant(const PartialFraction& pf) {
  // int_eps^1: polynomial -> -E; C_l x^{-l} (l >= 2) -> -C_l/(l-1);
  // D (cj + cf x)^{-1} -> (D/cf) ln(1 + cf/cj);
  // D (cj + cf x)^{-l} -> -(D/(cf (l-1))) ((cj + cf)^{1-l} - cj^{1-l}).
  KValue out(-pf.e_const);
  for (const auto& [l, c] : pf.c_terms) {
    if (l >= 2) out += KValue(-c / Rational(l - 1));
  }
  for (const auto& [key, c] : pf.d_terms) {
    const auto [l, i] = key;
    const Rational& cj = pf.cj[i];
    const Rational& cf = pf.cf[i];
    if (l == 1) {
      out += kv_ln_rational(1 + cf / cj) * (c / cf);
    } else {
      const long e = 1 - static_cast<long>(l);
      out += KValue(-c / (cf * Rational(l - 1)) * (ipow(cj + cf, e) - ipow(cj, e)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration of the (w, v) constraint sets

namespace {

struct Enumerator {
  const QContext& ctx;
  std::vector<bool> constrained;  // q with v(q) + w(q) = N'_q imposed
  std::vector<bool> v_allowed;    // q over which v_p ranges

  // Calls fn(w, v) for every admissible pair; w[i] over complement, v[i] over pset.
  template <class Fn>
  void run(Fn&& fn) const {
    const auto& s = ctx.problem->spec;
    const auto comp = ctx.complement();
    IndexFamily w(comp.size(), MultiIndex(s.Q, 0));
    walk_w(0, comp, w, fn);
  }

 private:
  template <class Fn>
  void walk_w(std::size_t i, const std::vector<unsigned>& comp, IndexFamily& w, Fn& fn) const {
    const auto Q = ctx.problem->spec.Q;
    if (i == comp.size()) {
      // per-q budgets for v
      std::vector<long> budget(Q, 0);
      for (unsigned q = 0; q < Q; ++q) {
        if (!constrained[q]) continue;
        long wq = 0;
        for (const auto& wp : w) wq += wp[q];
        budget[q] = static_cast<long>(ctx.problem->target.Nprime[q]) - wq;
        if (budget[q] < 0) return;
        if (budget[q] > 0 && !v_allowed[q]) return;
      }
      IndexFamily v(ctx.pset.size(), MultiIndex(Q, 0));
      walk_v(0, budget, v, w, fn);
      return;
    }
    for_each_composition(ctx.k[i], Q, [&](const MultiIndex& wp) {
      w[i] = wp;
      walk_w(i + 1, comp, w, fn);
      return true;
    });
  }

  template <class Fn>
  void walk_v(unsigned q, const std::vector<long>& budget, IndexFamily& v, const IndexFamily& w, Fn& fn) const {
    const auto Q = ctx.problem->spec.Q;
    if (q == Q) {
      fn(w, v);
      return;
    }
    if (!constrained[q] || budget[q] == 0) {
      for (auto& vp : v) vp[q] = 0;
      walk_v(q + 1, budget, v, w, fn);
      return;
    }
    for_each_composition(static_cast<unsigned>(budget[q]), static_cast<unsigned>(ctx.pset.size()),
                         [&](const MultiIndex& dist) {
                           for (std::size_t i = 0; i < v.size(); ++i) v[i][q] = dist[i];
                           walk_v(q + 1, budget, v, w, fn);
                           return true;
                         });
  }
};

// Product of the w-factor and v-factor of a term; `skip` are the q without a c^v factor.
Rational wv_weight(const QContext& ctx, const IndexFamily& w, const IndexFamily& v) {
  const auto& s = ctx.problem->spec;
  const auto comp = ctx.complement();
  Rational acc = 1;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const unsigned p = comp[i];
    acc *= multinomial(ctx.k[i], w[i]);
    for (unsigned q = 0; q < s.Q; ++q) acc *= ipow(s.c[q][p], w[i][q]);
  }
  for (std::size_t i = 0; i < ctx.pset.size(); ++i) {
    const unsigned p = ctx.pset[i];
    const unsigned vp = total(v[i]);
    acc *= binom_shifted(Rational(-static_cast<long>(ctx.problem->target.N[p]) - 1), vp);
    acc *= multinomial(vp, v[i]);
    for (unsigned q = 0; q < s.Q; ++q) acc *= ipow(s.c[q][p], v[i][q]);
  }
  return acc;
}

// prod_{p in Pset} c_{j,p}^{-N_p - 1 - |v_p|}
Rational cj_weight(const QContext& ctx, const IndexFamily& v) {
  const auto& s = ctx.problem->spec;
  Rational acc = 1;
  for (std::size_t i = 0; i < ctx.pset.size(); ++i) {
    const unsigned p = ctx.pset[i];
    acc *= ipow(s.c[ctx.j][p], -static_cast<long>(ctx.problem->target.N[p]) - 1 - static_cast<long>(total(v[i])));
  }
  return acc;
}

// prod_{q != j} (-1)^{N'_q} N'_q!
Rational gamma_weight(const QContext& ctx) {
  Rational acc = 1;
  const auto& Np = ctx.problem->target.Nprime;
  for (unsigned q = 0; q < Np.size(); ++q) {
    if (q == ctx.j) continue;
    acc *= Rational(factorial(Np[q])) * ((Np[q] % 2) ? -1 : 1);
  }
  return acc;
}

Enumerator full_enumerator(const QContext& ctx) {
  const auto Q = ctx.problem->spec.Q;
  Enumerator en{ctx, std::vector<bool>(Q, true), std::vector<bool>(Q, true)};
  en.constrained[ctx.j] = false;
  en.v_allowed[ctx.j] = false;
  return en;
}

}  // namespace

Rational q0(const QContext& ctx) {
  ctx.validate();
  Rational acc = 0;
  full_enumerator(ctx).run(
      [&](const IndexFamily& w, const IndexFamily& v) { acc += wv_weight(ctx, w, v) * cj_weight(ctx, v); });
  return acc * gamma_weight(ctx);
}

Rational q0_printed(const QContext& ctx) {
  ctx.validate();
  Rational acc = 0;
  full_enumerator(ctx).run([&](const IndexFamily& w, const IndexFamily& v) { acc += wv_weight(ctx, w, v); });
  return acc * gamma_weight(ctx);
}

PartialFraction partial_fractions(const QContext& ctx, unsigned f, const IndexFamily& v, const IndexFamily& w) {
  ctx.validate();
  const auto& s = ctx.problem->spec;
  const auto& t = ctx.problem->target;
  if (f == ctx.j || f >= s.Q) throw DomainError("partial_fractions: f must differ from j");
  long wf = 0;
  for (const auto& wp : w) wf += wp[f];
  const long a = -static_cast<long>(t.Nprime[f]) - 1 + wf;
  std::vector<Rational> cj, cf;
  std::vector<unsigned> e;
  for (std::size_t i = 0; i < ctx.pset.size(); ++i) {
    const unsigned p = ctx.pset[i];
    cj.push_back(s.c[ctx.j][p]);
    cf.push_back(s.c[f][p]);
    e.push_back(t.N[p] + 1 + total(v[i]));
  }
  return decompose(a, cj, cf, e);
}

KValue f_constant(const QContext& ctx, unsigned f, const IndexFamily& v, const IndexFamily& w) {
  return f_constant(partial_fractions(ctx, f, v, w));
}

KValue q1(const QContext& ctx) {
  ctx.validate();
  const auto& s = ctx.problem->spec;
  const auto& t = ctx.problem->target;
  const auto& dir = ctx.problem->dir;
  const KValue gamma = KValue::of(Atom::gamma());

  // Block 1: full constraint set; bracket from the s-derivative of every factor.
  KValue out;
  KValue q_bracket;  // sum_{q != j} mu'_q (gamma - h_{N'_q}) + sum_{p in Pset} mu_p ln c_{j,p}
  for (unsigned q = 0; q < s.Q; ++q) {
    if (q == ctx.j) continue;
    q_bracket += (gamma - KValue(harmonic(t.Nprime[q]))) * dir.muprime[q];
  }
  for (unsigned p : ctx.pset) q_bracket += kv_ln_rational(s.c[ctx.j][p]) * dir.mu[p];
  full_enumerator(ctx).run([&](const IndexFamily& w, const IndexFamily& v) {
    Rational weight = wv_weight(ctx, w, v) * cj_weight(ctx, v);
    Rational hsum = 0;
    for (std::size_t i = 0; i < ctx.pset.size(); ++i) {
      const unsigned p = ctx.pset[i];
      hsum += dir.mu[p] * (harmonic(t.N[p]) - harmonic(t.N[p] + total(v[i])));
    }
    out += (q_bracket + KValue(hsum)) * weight;
  });
  out *= gamma_weight(ctx);

  // Block 2: coordinate f is integrated out; its constant part is F.
  Rational sign_fact = 1;
  long nsum = 0;
  for (unsigned q = 0; q < s.Q; ++q) {
    if (q == ctx.j) continue;
    sign_fact *= Rational(factorial(t.Nprime[q]));
    nsum += t.Nprime[q];
  }
  if (nsum % 2) sign_fact = -sign_fact;
  for (unsigned f = 0; f < s.Q; ++f) {
    if (f == ctx.j) continue;
    Enumerator en{ctx, std::vector<bool>(s.Q, true), std::vector<bool>(s.Q, true)};
    en.constrained[ctx.j] = en.constrained[f] = false;
    en.v_allowed[ctx.j] = en.v_allowed[f] = false;
    KValue block;
    en.run([&](const IndexFamily& w, const IndexFamily& v) {
      block += f_constant(ctx, f, v, w) * wv_weight(ctx, w, v);
    });
    out += block * (sign_fact * dir.muprime[f]);
  }
  return out;
}

}  // namespace dirzeta
